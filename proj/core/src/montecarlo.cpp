#include "adaptem/montecarlo.h"

#include "adaptem/errors.h"
#include "adaptem/rng.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace adaptem {

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::string failed_what;

    auto work = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failed_what = e.what();
                }
                failed.store(true);
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failed.load()) throw SampleFailure(failed_index, failed_what);
}

MeanStderr summarize(std::span<const double> values) {
    if (values.size() < 2) throw InvalidInput("summarize: need at least two samples");
    const double m = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / m;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (m - 1.0) / m)};
}

CoupledSample coupled_difference_sample(const SdeProblem& problem, const StepSizeParams& fine,
                                        const StepSizeParams& coarse, std::size_t sample_index,
                                        std::uint64_t master_seed) {
    BrownianPath path(problem.dimension, rng::stream_seed(master_seed, sample_index));
    const double T = problem.horizon;
    const Trajectory coarse_traj = simulate_adaptive(problem, coarse, path);
    const std::vector<double> x_coarse = interpolate(coarse_traj, problem, path, T);
    const Trajectory fine_traj = simulate_adaptive(problem, fine, path);
    const std::vector<double> x_fine = interpolate(fine_traj, problem, path, T);

    double sq = 0.0;
    for (std::size_t i = 0; i < x_fine.size(); ++i) sq += (x_fine[i] - x_coarse[i]) * (x_fine[i] - x_coarse[i]);
    return {sq, fine_traj.step_count, coarse_traj.step_count};
}

CoupledSample coupled_difference_sample(const SdeProblem& problem, double delta, std::size_t sample_index,
                                        std::uint64_t master_seed) {
    if (!(delta > 0.0 && 2.0 * delta < 1.0)) throw InvalidInput("coupled sample: need 0 < 2·delta < 1");
    const auto fine = StepSizeParams::make(delta, problem.eps0, problem.sigma_sup, false);
    const auto coarse = StepSizeParams::make(2.0 * delta, problem.eps0, problem.sigma_sup, false);
    return coupled_difference_sample(problem, fine, coarse, sample_index, master_seed);
}

void ExperimentConfig::validate() const {
    if (samples < 2) throw InvalidInput("experiment: need at least M = 2 samples");
    if (deltas.empty()) throw InvalidInput("experiment: no deltas given");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0 && 2.0 * deltas[i] < 1.0))
            throw InvalidInput("experiment: every delta must satisfy 0 < 2·delta < 1");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw InvalidInput("experiment: deltas must be strictly decreasing");
    }
}

MonteCarloReport run_experiment(const SdeProblem& problem, const ExperimentConfig& config) {
    config.validate();
    problem.validate();
    const auto start = std::chrono::steady_clock::now();

    MonteCarloReport report;
    report.seed = config.master_seed;
    report.samples = config.samples;
    std::vector<double> sq(config.samples), cost(config.samples);
    for (double delta : config.deltas) {
        const auto fine = StepSizeParams::make(delta, problem.eps0, problem.sigma_sup);
        const auto coarse = StepSizeParams::make(2.0 * delta, problem.eps0, problem.sigma_sup);
        parallel_for(config.samples, config.workers, [&](std::size_t i) {
            const CoupledSample s = coupled_difference_sample(problem, fine, coarse, i, config.master_seed);
            sq[i] = s.sq_diff;
            cost[i] = static_cast<double>(s.cost_fine);
        });
        const MeanStderr m = summarize(sq);
        const MeanStderr c = summarize(cost);
        report.rows.push_back({delta, m.mean, m.std_error, c.mean, c.std_error});
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<DeltaEstimate> estimate_msq(const SdeProblem& problem, const ExperimentConfig& config) {
    const auto report = run_experiment(problem, config);
    std::vector<DeltaEstimate> out;
    for (const auto& r : report.rows) out.push_back({r.delta, {r.msq, r.msq_stderr}});
    return out;
}

std::vector<DeltaEstimate> estimate_cost(const SdeProblem& problem, const ExperimentConfig& config) {
    const auto report = run_experiment(problem, config);
    std::vector<DeltaEstimate> out;
    for (const auto& r : report.rows) out.push_back({r.delta, {r.cost_mean, r.cost_stderr}});
    return out;
}

double occupation_time(const Trajectory& traj, const SdeProblem& problem, BrownianPath& path, double epsilon) {
    const std::size_t d = traj.dimension;
    const double T = problem.horizon;
    std::vector<double> mu(d), sigma(d * d), w_a(d), w_t(d), dw(d), x(d);
    auto inside = [&](std::span<const double> p) { return problem.surface.distance(p) < epsilon ? 1.0 : 0.0; };

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size() && traj.times[k] < T; ++k) {
        const double a = traj.times[k];
        const double b = std::min(traj.times[k + 1], T);
        const double m = 0.5 * (a + b);
        const auto xa = traj.state(k);
        problem.drift_at(xa, mu);
        problem.diffusion_at(xa, sigma);
        path.query(a, w_a);

        double sum = inside(xa);
        for (const auto& [t, weight] : {std::pair{m, 2.0}, std::pair{b, 1.0}}) {
            path.query(t, w_t);
            for (std::size_t i = 0; i < d; ++i) dw[i] = w_t[i] - w_a[i];
            em_step(xa, mu, sigma, t - a, dw, x);
            sum += weight * inside(x);
        }
        total += 0.25 * (b - a) * sum;
    }
    return total;
}

std::vector<MeanStderr> occupation_estimates(const SdeProblem& problem, const StepSizeParams& params,
                                             std::span<const double> epsilons, std::size_t samples,
                                             std::uint64_t master_seed, unsigned workers) {
    if (samples < 2) throw InvalidInput("occupation: need at least M = 2 samples");
    if (epsilons.empty()) throw InvalidInput("occupation: no epsilon given");
    for (double e : epsilons) {
        if (!(e > 0.0 && e < problem.eps0 / 2.0))
            throw InvalidInput("occupation: epsilon must lie in (0, eps0/2)");
    }
    std::vector<std::vector<double>> values(epsilons.size(), std::vector<double>(samples));
    parallel_for(samples, workers, [&](std::size_t i) {
        BrownianPath path(problem.dimension, rng::stream_seed(master_seed, i));
        const Trajectory traj = simulate_adaptive(problem, params, path);
        for (std::size_t j = 0; j < epsilons.size(); ++j)
            values[j][i] = occupation_time(traj, problem, path, epsilons[j]);
    });
    std::vector<MeanStderr> out;
    for (const auto& v : values) out.push_back(summarize(v));
    return out;
}

MeanStderr occupation_estimate(const SdeProblem& problem, const StepSizeParams& params, double epsilon,
                               std::size_t samples, std::uint64_t master_seed, unsigned workers) {
    const double eps[] = {epsilon};
    return occupation_estimates(problem, params, eps, samples, master_seed, workers).front();
}

SdeProblem transformed_problem(const SdeProblem& problem, const ScalarTransform& transform) {
    if (problem.dimension != 1) throw Unsupported("transformed_problem: only scalar problems can be transformed");
    SdeProblem z = problem;
    z.drift = [&transform](std::span<const double> x, std::span<double> out) {
        out[0] = transform.transformed_coeffs(x[0]).mu_G;
    };
    z.diffusion = [&transform](std::span<const double> x, std::span<double> out) {
        out[0] = transform.transformed_coeffs(x[0]).sigma_G;
    };
    z.x0 = {transform.G(problem.x0[0])};
    return z;
}

double transform_comparison_sample(const SdeProblem& problem, const SdeProblem& z_problem,
                                   const ScalarTransform& transform, const StepSizeParams& params,
                                   std::size_t sample_index, std::uint64_t master_seed) {
    BrownianPath path(1, rng::stream_seed(master_seed, sample_index));
    const double T = problem.horizon;
    const Trajectory x_traj = simulate_adaptive(problem, params, path);
    const double x_T = interpolate(x_traj, problem, path, T)[0];

    const auto n = static_cast<std::size_t>(std::ceil(T / (params.delta * params.delta)));
    const Trajectory z_traj = simulate_equidistant(z_problem, n, path);
    const double x_ref = transform.G_inverse(z_traj.state(z_traj.size() - 1)[0]);
    return (x_T - x_ref) * (x_T - x_ref);
}

std::vector<DeltaEstimate> transform_comparison(const SdeProblem& problem, const ScalarTransform& transform,
                                                std::span<const double> deltas, std::size_t samples,
                                                std::uint64_t master_seed, unsigned workers) {
    if (problem.dimension != 1) throw Unsupported("transform comparison: only scalar problems are supported");
    if (samples < 2) throw InvalidInput("transform comparison: need at least M = 2 samples");
    problem.validate();
    const SdeProblem z_problem = transformed_problem(problem, transform);

    std::vector<DeltaEstimate> out;
    std::vector<double> values(samples);
    for (double delta : deltas) {
        const auto params = StepSizeParams::make(delta, problem.eps0, problem.sigma_sup);
        parallel_for(samples, workers, [&](std::size_t i) {
            values[i] = transform_comparison_sample(problem, z_problem, transform, params, i, master_seed);
        });
        out.push_back({delta, summarize(values)});
    }
    return out;
}

} // namespace adaptem
