#include "adaptem/config.h"

#include "adaptem/errors.h"
#include "adaptem/report_io.h"

#include <json.hpp>

#include <cmath>
#include <string>

namespace adaptem {

namespace {

using nlohmann::json;

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw InvalidInput(std::string(what) + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> matrix(const json& j, std::size_t d, const char* what) {
    if (!j.is_array() || j.size() != d) throw InvalidInput(std::string(what) + ": expected a d×d matrix");
    std::vector<double> out;
    for (const auto& row : j) {
        const auto r = numbers(row, what);
        if (r.size() != d) throw InvalidInput(std::string(what) + ": expected a d×d matrix");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

double horner(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

Hypersurface surface_from(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "points1d") return Hypersurface::points1d(numbers(j.at("points"), "points1d.points"));
    if (type == "circle") {
        const auto c = numbers(j.at("center"), "circle.center");
        if (c.size() != 2) throw InvalidInput("circle.center: expected two coordinates");
        return Hypersurface::circle(c[0], c[1], j.at("radius").get<double>());
    }
    if (type == "hyperplane")
        return Hypersurface::hyperplane(numbers(j.at("normal"), "hyperplane.normal"), j.at("offset").get<double>());
    throw InvalidInput("unknown surface type '" + type + "'");
}

ExampleRegistryEntry inline_problem(const json& j) {
    const auto d = j.at("dimension").get<std::size_t>();
    Hypersurface surface = surface_from(j.at("surface"));
    const auto x0 = numbers(j.at("x0"), "x0");
    const double horizon = j.value("horizon", 1.0);
    const double eps0 = j.at("eps0").get<double>();
    const double sigma_sup = j.at("sigma_sup").get<double>();
    const double mu_sup = j.value("mu_sup", 1.0);

    ExampleRegistryEntry entry;
    entry.name = "inline";
    SdeProblem& p = entry.problem;
    p.dimension = d;
    p.surface = surface;
    p.x0 = x0;
    p.horizon = horizon;
    p.eps0 = eps0;
    p.sigma_sup = sigma_sup;
    p.mu_sup = mu_sup;

    const json& drift = j.at("drift");
    const std::string drift_type = drift.at("type").get<std::string>();
    if (drift_type == "constant") {
        const auto value = numbers(drift.at("value"), "drift.value");
        if (value.size() != d) throw InvalidInput("drift.value: expected d entries");
        p.drift = [value](std::span<const double>, std::span<double> out) {
            std::copy(value.begin(), value.end(), out.begin());
        };
    } else if (drift_type == "linear") {
        const auto a = matrix(drift.at("matrix"), d, "drift.matrix");
        auto b = drift.contains("offset") ? numbers(drift.at("offset"), "drift.offset") : std::vector<double>(d, 0.0);
        if (b.size() != d) throw InvalidInput("drift.offset: expected d entries");
        p.drift = [a, b, d](std::span<const double> x, std::span<double> out) {
            for (std::size_t i = 0; i < d; ++i) {
                double v = b[i];
                for (std::size_t k = 0; k < d; ++k) v += a[i * d + k] * x[k];
                out[i] = v;
            }
        };
    } else if (drift_type == "piecewise_polynomial") {
        if (d != 1 || !std::holds_alternative<PointSet1D>(surface.shape()))
            throw InvalidInput("piecewise_polynomial drift needs dimension 1 and a points1d surface");
        const auto& xs = std::get<PointSet1D>(surface.shape()).points;
        const json& branches = drift.at("branches");
        if (!branches.is_array() || branches.size() != xs.size() + 1)
            throw InvalidInput("drift.branches: need one polynomial more than surface points");
        std::vector<ScalarFn> fns;
        std::vector<std::vector<double>> polys;
        for (const auto& b : branches) {
            auto coeffs = numbers(b, "drift.branches");
            polys.push_back(coeffs);
            fns.push_back([coeffs](double x) { return horner(coeffs, x); });
        }
        std::vector<double> left, right;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            left.push_back(horner(polys[i], xs[i]));
            right.push_back(horner(polys[i + 1], xs[i]));
        }
        PiecewiseDrift1D pw(xs, std::move(fns), std::move(left), std::move(right));
        p.drift = [pw](std::span<const double> x, std::span<double> out) { out[0] = pw(x[0]); };
        entry.drift1d = std::move(pw);
    } else {
        throw InvalidInput("unknown drift type '" + drift_type + "'");
    }

    const json& diffusion = j.at("diffusion");
    const std::string diffusion_type = diffusion.at("type").get<std::string>();
    if (diffusion_type == "constant") {
        const auto m = matrix(diffusion.at("matrix"), d, "diffusion.matrix");
        p.diffusion = [m](std::span<const double>, std::span<double> out) {
            std::copy(m.begin(), m.end(), out.begin());
        };
        if (d == 1) entry.sigma1d = [s = m[0]](double) { return s; };
    } else if (diffusion_type == "polynomial") {
        if (d != 1) throw InvalidInput("polynomial diffusion needs dimension 1");
        const auto coeffs = numbers(diffusion.at("coeffs"), "diffusion.coeffs");
        p.diffusion = [coeffs](std::span<const double> x, std::span<double> out) { out[0] = horner(coeffs, x[0]); };
        entry.sigma1d = [coeffs](double x) { return horner(coeffs, x); };
    } else {
        throw InvalidInput("unknown diffusion type '" + diffusion_type + "'");
    }
    return entry;
}

} // namespace

Hypersurface parse_surface(std::string_view json_text) {
    try {
        return surface_from(json::parse(json_text));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("surface config: ") + e.what());
    }
}

ExperimentFile parse_experiment_config(std::string_view json_text) {
    try {
        const json j = json::parse(json_text);
        ExperimentFile file;
        if (j.contains("example") && j.contains("problem"))
            throw InvalidInput("config: give either 'example' or 'problem', not both");
        if (j.contains("example")) {
            file.entry = find_example(j.at("example").get<std::string>());
            SdeProblem& p = file.entry.problem;
            if (j.contains("x0")) p.x0 = numbers(j.at("x0"), "x0");
            p.horizon = j.value("horizon", p.horizon);
            p.eps0 = j.value("eps0", p.eps0);
            p.sigma_sup = j.value("sigma_sup", p.sigma_sup);
            p.mu_sup = j.value("mu_sup", p.mu_sup);
        } else if (j.contains("problem")) {
            file.entry = inline_problem(j.at("problem"));
        } else {
            throw InvalidInput("config: needs an 'example' name or an inline 'problem'");
        }
        file.entry.problem.validate();

        if (j.contains("deltas")) {
            const json& ds = j.at("deltas");
            file.experiment.deltas = ds.is_string() ? parse_deltas(ds.get<std::string>()) : numbers(ds, "deltas");
        }
        file.experiment.samples = j.value("samples", file.experiment.samples);
        file.experiment.master_seed = j.value("seed", file.experiment.master_seed);
        file.experiment.workers = j.value("workers", file.experiment.workers);
        if (j.contains("occupation_epsilons"))
            file.occupation_epsilons = numbers(j.at("occupation_epsilons"), "occupation_epsilons");
        return file;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
}

} // namespace adaptem
