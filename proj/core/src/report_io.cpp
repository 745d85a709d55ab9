#include "adaptem/report_io.h"

#include "adaptem/errors.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace adaptem {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

double parse_number(const std::string& s) {
    if (s.empty()) throw InvalidInput("expected a number, got an empty field");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw InvalidInput("cannot parse '" + s + "' as a number");
    return v;
}

// "2^-k" or a plain number.
double parse_delta_token(const std::string& tok) {
    if (tok.rfind("2^", 0) == 0) {
        const std::string exp = tok.substr(2);
        char* end = nullptr;
        const long e = std::strtol(exp.c_str(), &end, 10);
        if (exp.empty() || end != exp.c_str() + exp.size()) throw InvalidInput("bad dyadic delta '" + tok + "'");
        return std::ldexp(1.0, static_cast<int>(e));
    }
    return parse_number(tok);
}

int dyadic_exponent(const std::string& tok) {
    if (tok.rfind("2^", 0) != 0) throw InvalidInput("range bounds must be dyadic (2^-k), got '" + tok + "'");
    const std::string exp = tok.substr(2);
    char* end = nullptr;
    const long e = std::strtol(exp.c_str(), &end, 10);
    if (exp.empty() || end != exp.c_str() + exp.size()) throw InvalidInput("bad dyadic bound '" + tok + "'");
    return static_cast<int>(e);
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report_csv(std::ostream& out, const MonteCarloReport& report) {
    out << "delta,msq,msq_stderr,cost_mean,cost_stderr\n";
    for (const auto& r : report.rows) {
        out << format_double(r.delta) << ',' << format_double(r.msq) << ',' << format_double(r.msq_stderr) << ','
            << format_double(r.cost_mean) << ',' << format_double(r.cost_stderr) << '\n';
    }
}

void write_report_json(std::ostream& out, const MonteCarloReport& report, std::string_view problem_name) {
    nlohmann::ordered_json j;
    j["problem"] = problem_name;
    j["seed"] = report.seed;
    j["samples"] = report.samples;
    j["wall_seconds"] = report.wall_seconds;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"delta", r.delta},
                        {"msq", r.msq},
                        {"msq_stderr", r.msq_stderr},
                        {"cost_mean", r.cost_mean},
                        {"cost_stderr", r.cost_stderr}});
    }
    out << j.dump(2) << '\n';
}

void write_fit_json(std::ostream& out, const RegressionFit& fit) {
    nlohmann::ordered_json j;
    j["c1"] = fit.c1;
    j["c2"] = fit.c2;
    j["c3"] = fit.c3;
    j["residual_logspace"] = fit.residual_logspace;
    j["residual_rawspace"] = fit.residual_rawspace;
    out << j.dump(2) << '\n';
}

CsvColumns read_csv_columns(std::istream& in, std::string_view column) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("csv: empty input");
    const auto header = split(line, ',');
    std::ptrdiff_t delta_col = -1, value_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "delta") delta_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == column) value_col = static_cast<std::ptrdiff_t>(i);
    }
    if (delta_col < 0) throw InvalidInput("csv: no 'delta' column");
    if (value_col < 0) throw InvalidInput("csv: no '" + std::string(column) + "' column");

    CsvColumns out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) throw InvalidInput("csv: row has " + std::to_string(cells.size()) +
                                                              " cells, header has " + std::to_string(header.size()));
        out.deltas.push_back(parse_number(cells[static_cast<std::size_t>(delta_col)]));
        out.values.push_back(parse_number(cells[static_cast<std::size_t>(value_col)]));
    }
    return out;
}

void write_estimates_csv(std::ostream& out, std::string_view key_name, std::string_view value_name,
                         const std::vector<DeltaEstimate>& rows) {
    out << key_name << ',' << value_name << ',' << value_name << "_stderr\n";
    for (const auto& r : rows) {
        out << format_double(r.delta) << ',' << format_double(r.estimate.mean) << ','
            << format_double(r.estimate.std_error) << '\n';
    }
}

std::vector<double> parse_deltas(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw InvalidInput("deltas: empty list");
    if (const auto pos = s.find(".."); pos != std::string::npos) {
        const int a = dyadic_exponent(trim(std::string_view(s).substr(0, pos)));
        const int b = dyadic_exponent(trim(std::string_view(s).substr(pos + 2)));
        std::vector<double> out;
        const int step = a >= b ? -1 : 1;
        for (int e = a;; e += step) {
            out.push_back(std::ldexp(1.0, e));
            if (e == b) break;
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_delta_token(tok));
    return out;
}

} // namespace adaptem
