#pragma once

#include "adaptem/problem.h"
#include "adaptem/solver.h"
#include "adaptem/transform1d.h"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace adaptem {

/// Runs body(i) for i in [0, n) on `workers` threads (0 = hardware concurrency).
/// Indices are handed out in increasing order. If any call throws, no further
/// indices are started and the exception of the smallest failing index is
/// rethrown as SampleFailure, so the reported index does not depend on the
/// worker count.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0; ///< sample standard deviation / √M
};

/// Mean and standard error, summed in index order. Throws InvalidInput for fewer than two values.
[[nodiscard]] MeanStderr summarize(std::span<const double> values);

struct CoupledSample {
    double sq_diff = 0.0; ///< ‖X_T^{h(·,δ)} − X_T^{h(·,2δ)}‖²
    std::size_t cost_fine = 0;
    std::size_t cost_coarse = 0;
};

/// Both schemes (2δ first, then δ) on the one Brownian path seeded by (master_seed, sample_index).
[[nodiscard]] CoupledSample coupled_difference_sample(const SdeProblem& problem, double delta,
                                                      std::size_t sample_index, std::uint64_t master_seed);
/// Same, with precomputed step-size parameters for δ and 2δ.
[[nodiscard]] CoupledSample coupled_difference_sample(const SdeProblem& problem, const StepSizeParams& fine,
                                                      const StepSizeParams& coarse, std::size_t sample_index,
                                                      std::uint64_t master_seed);

struct ExperimentConfig {
    std::vector<double> deltas; ///< strictly decreasing, each with 2δ < 1
    std::size_t samples = 2;    ///< M ≥ 2
    std::uint64_t master_seed = 0;
    unsigned workers = 1;

    void validate() const;
};

struct ReportRow {
    double delta = 0.0;
    double msq = 0.0;
    double msq_stderr = 0.0;
    double cost_mean = 0.0;
    double cost_stderr = 0.0;
};

struct MonteCarloReport {
    std::vector<ReportRow> rows;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double wall_seconds = 0.0;
};

/// One pass over all deltas producing msq(δ) and cost(δ) from the same coupled samples.
[[nodiscard]] MonteCarloReport run_experiment(const SdeProblem& problem, const ExperimentConfig& config);

struct DeltaEstimate {
    double delta = 0.0;
    MeanStderr estimate;
};

/// msq(δ) = mean of ‖X_T^{h(·,δ)} − X_T^{h(·,2δ)}‖² per δ.
[[nodiscard]] std::vector<DeltaEstimate> estimate_msq(const SdeProblem& problem, const ExperimentConfig& config);
/// cost(δ) = mean step count N(h, δ) of the finer scheme per δ.
[[nodiscard]] std::vector<DeltaEstimate> estimate_cost(const SdeProblem& problem, const ExperimentConfig& config);

/// Time the continuous interpolation spends in Θ^ε on [0, T], measured per
/// step at its endpoints and midpoint with the composite trapezoid rule.
[[nodiscard]] double occupation_time(const Trajectory& traj, const SdeProblem& problem, BrownianPath& path,
                                     double epsilon);

/// Monte Carlo estimate of ∫₀ᵀ P(X_t ∈ Θ^ε) dt for each ε, all from the same M trajectories.
/// Each ε must be below ε₀/2.
[[nodiscard]] std::vector<MeanStderr> occupation_estimates(const SdeProblem& problem, const StepSizeParams& params,
                                                           std::span<const double> epsilons, std::size_t samples,
                                                           std::uint64_t master_seed, unsigned workers = 1);
[[nodiscard]] MeanStderr occupation_estimate(const SdeProblem& problem, const StepSizeParams& params, double epsilon,
                                             std::size_t samples, std::uint64_t master_seed, unsigned workers = 1);

/// SDE for Z = G(X): drift μ_G, diffusion σ_G, started at G(x0).
[[nodiscard]] SdeProblem transformed_problem(const SdeProblem& problem, const ScalarTransform& transform);

/// One sample of ‖X_T^{h(·,δ)} − G⁻¹(Z_T)‖², where Z is equidistant Euler–Maruyama
/// for the transformed SDE with ⌈T/δ²⌉ steps on the same Brownian path.
[[nodiscard]] double transform_comparison_sample(const SdeProblem& problem, const SdeProblem& z_problem,
                                                 const ScalarTransform& transform, const StepSizeParams& params,
                                                 std::size_t sample_index, std::uint64_t master_seed);

/// Per-δ mean of transform_comparison_sample over M samples.
[[nodiscard]] std::vector<DeltaEstimate> transform_comparison(const SdeProblem& problem,
                                                              const ScalarTransform& transform,
                                                              std::span<const double> deltas, std::size_t samples,
                                                              std::uint64_t master_seed, unsigned workers = 1);

} // namespace adaptem
