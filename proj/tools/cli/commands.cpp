#include "commands.h"

#include "adaptem/config.h"
#include "adaptem/errors.h"
#include "adaptem/examples.h"
#include "adaptem/log.h"
#include "adaptem/montecarlo.h"
#include "adaptem/regression.h"
#include "adaptem/report_io.h"
#include "adaptem/rng.h"
#include "adaptem/solver.h"
#include "adaptem/transform1d.h"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace adaptem::cli {

namespace {

struct ProblemOptions {
    std::string example;
    std::string config;
    std::string deltas;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out;
};

void add_problem_options(CLI::App& cmd, ProblemOptions& o) {
    auto* ex = cmd.add_option("--example", o.example, "Registry problem: example1, example2 or example3");
    auto* cfg = cmd.add_option("--config", o.config, "Experiment config JSON file");
    ex->excludes(cfg);
    cmd.add_option("--samples", o.samples, "Monte Carlo sample size M");
    cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--workers", o.workers, "Worker threads (0 = all cores); results do not depend on it");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
}

// Resolves the problem and merges config-file values with explicitly given flags (flags win).
ExperimentFile resolve(const CLI::App& cmd, const ProblemOptions& o, const std::string& default_deltas,
                       std::size_t default_samples) {
    ExperimentFile file;
    bool from_config = false;
    if (!o.config.empty()) {
        file = parse_experiment_config(read_file(o.config));
        from_config = true;
    } else if (!o.example.empty()) {
        file.entry = find_example(o.example);
    } else {
        throw InvalidInput("need --example or --config");
    }

    const bool deltas_given = cmd.get_option_no_throw("--deltas") != nullptr && cmd.count("--deltas") > 0;
    if (deltas_given || !from_config || file.experiment.deltas.empty())
        file.experiment.deltas = parse_deltas(deltas_given ? o.deltas : default_deltas);
    if (cmd.count("--samples") > 0) file.experiment.samples = o.samples;
    else if (!from_config) file.experiment.samples = default_samples;
    if (cmd.count("--seed") > 0 || !from_config) file.experiment.master_seed = o.seed;
    if (cmd.count("--workers") > 0 || !from_config) file.experiment.workers = o.workers;
    return file;
}

std::string report_stem(std::string out) {
    if (out.empty()) return "report";
    if (out.size() > 4 && out.ends_with(".csv")) out.resize(out.size() - 4);
    return out;
}

void dump_trajectories(const ExperimentFile& file, const std::string& stem) {
    const SdeProblem& problem = file.entry.problem;
    for (std::size_t i = 0; i < file.experiment.deltas.size(); ++i) {
        const double delta = file.experiment.deltas[i];
        BrownianPath path(problem.dimension, rng::stream_seed(file.experiment.master_seed, 0));
        const auto coarse = simulate_adaptive(
            problem, StepSizeParams::make(2.0 * delta, problem.eps0, problem.sigma_sup, false), path);
        const auto fine =
            simulate_adaptive(problem, StepSizeParams::make(delta, problem.eps0, problem.sigma_sup, false), path);
        for (const auto& [traj, tag] : {std::pair{&coarse, "coarse"}, std::pair{&fine, "fine"}}) {
            std::ostringstream os;
            write_trajectory_csv(os, *traj);
            write_file(stem + ".traj." + std::to_string(i) + "." + tag + ".csv", os.str());
        }
    }
}

int cmd_run(const CLI::App& cmd, const ProblemOptions& o, bool dump, std::ostream& out) {
    const ExperimentFile file = resolve(cmd, o, "2^-2..2^-8", 10000);
    const MonteCarloReport report = run_experiment(file.entry.problem, file.experiment);

    std::ostringstream csv, json;
    write_report_csv(csv, report);
    write_report_json(json, report, file.entry.name);
    const std::string stem = report_stem(o.out);
    write_file(stem + ".csv", csv.str());
    write_file(stem + ".json", json.str());
    if (dump) dump_trajectories(file, stem);

    out << csv.str();
    return kSuccess;
}

int cmd_fit(const std::string& csv_path, const std::string& column, const std::string& out_path, std::ostream& out) {
    std::ifstream in(csv_path);
    if (!in) throw InvalidInput("cannot open '" + csv_path + "'");
    const CsvColumns cols = read_csv_columns(in, column);
    const RegressionFit fit = fit_rate(cols.deltas, cols.values);
    std::ostringstream json;
    write_fit_json(json, fit);
    if (!out_path.empty()) write_file(out_path, json.str());
    out << json.str();
    return kSuccess;
}

int cmd_occupation(const CLI::App& cmd, const ProblemOptions& o, const std::string& epsilons,
                   const std::string& delta_text, std::ostream& out) {
    ExperimentFile file = resolve(cmd, o, "2^-6", 10000);
    std::vector<double> eps = file.occupation_epsilons;
    if (cmd.count("--epsilons") > 0 || eps.empty()) eps = parse_deltas(epsilons);
    const auto deltas = parse_deltas(delta_text);
    if (deltas.size() != 1) throw InvalidInput("--delta takes a single value");

    const SdeProblem& problem = file.entry.problem;
    const auto params = StepSizeParams::make(deltas.front(), problem.eps0, problem.sigma_sup);
    const auto est = occupation_estimates(problem, params, eps, file.experiment.samples, file.experiment.master_seed,
                                          file.experiment.workers);
    std::vector<DeltaEstimate> rows;
    for (std::size_t i = 0; i < eps.size(); ++i) rows.push_back({eps[i], est[i]});

    std::ostringstream csv;
    write_estimates_csv(csv, "epsilon", "occupation", rows);
    if (!o.out.empty()) write_file(o.out, csv.str());
    out << csv.str();
    return kSuccess;
}

int cmd_verify_transform(const CLI::App& cmd, const ProblemOptions& o, std::ostream& out) {
    const ExperimentFile file = resolve(cmd, o, "2^-3,2^-5,2^-7", 4000);
    const auto& entry = file.entry;
    if (!entry.drift1d || !entry.sigma1d)
        throw Unsupported("verify-transform supports scalar problems with piecewise drift only ('" + entry.name +
                          "' is not one)");
    const ScalarTransform transform =
        ScalarTransform::with_default_radius(*entry.drift1d, entry.sigma1d, entry.problem.eps0);
    const auto rows = transform_comparison(entry.problem, transform, file.experiment.deltas, file.experiment.samples,
                                           file.experiment.master_seed, file.experiment.workers);
    std::ostringstream csv;
    write_estimates_csv(csv, "delta", "mean_sq_diff", rows);
    if (!o.out.empty()) write_file(o.out, csv.str());
    out << csv.str();
    return kSuccess;
}

} // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive Euler-Maruyama for SDEs with discontinuous drift"};
    app.require_subcommand(1);
    app.fallthrough();
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");

    ProblemOptions run_opts;
    bool dump = false;
    auto* run = app.add_subcommand("run", "Coupled Monte Carlo estimates of msq(delta) and cost(delta)");
    add_problem_options(*run, run_opts);
    run->add_option("--deltas", run_opts.deltas, "Deltas, e.g. 2^-2..2^-8 (default) or 2^-3,2^-4");
    run->add_option("--out", run_opts.out, "Output stem; writes <stem>.csv and <stem>.json (default: report)");
    run->add_flag("--dump-trajectories", dump, "Also write sample-0 trajectories per delta as CSV");

    std::string fit_csv, fit_column = "msq", fit_out;
    auto* fit = app.add_subcommand("fit", "Fit c1*log(1/delta)^c2*delta^c3 to a report column");
    fit->add_option("csv", fit_csv, "Report CSV")->required();
    fit->add_option("--column", fit_column, "Column to fit (default msq)");
    fit->add_option("--out", fit_out, "Also write the fit JSON here");

    ProblemOptions occ_opts;
    std::string occ_eps = "0.1,0.05", occ_delta = "2^-6";
    auto* occ = app.add_subcommand("occupation", "Estimate time spent within epsilon of the surface");
    add_problem_options(*occ, occ_opts);
    occ->add_option("--epsilons", occ_eps, "Comma-separated epsilons (default 0.1,0.05)");
    occ->add_option("--delta", occ_delta, "Step size parameter (default 2^-6)");
    occ->add_option("--out", occ_opts.out, "Also write the CSV here");

    ProblemOptions vt_opts;
    auto* vt = app.add_subcommand("verify-transform", "Compare the adaptive scheme against the transformed SDE");
    add_problem_options(*vt, vt_opts);
    vt->add_option("--deltas", vt_opts.deltas, "Deltas (default 2^-3,2^-5,2^-7)");
    vt->add_option("--out", vt_opts.out, "Also write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    const LogLevel previous = log_level();
    if (quiet) set_log_level(LogLevel::error);
    int code = kSuccess;
    try {
        if (*run) code = cmd_run(*run, run_opts, dump, out);
        else if (*fit) code = cmd_fit(fit_csv, fit_column, fit_out, out);
        else if (*occ) code = cmd_occupation(*occ, occ_opts, occ_eps, occ_delta, out);
        else if (*vt) code = cmd_verify_transform(*vt, vt_opts, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        code = kUsageError;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << '\n';
        code = kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        code = kRuntimeFailure;
    }
    set_log_level(previous);
    return code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("adaptem");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace adaptem::cli
