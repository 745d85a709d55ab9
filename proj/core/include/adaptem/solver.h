#pragma once

#include "adaptem/brownian.h"
#include "adaptem/geometry.h"
#include "adaptem/problem.h"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace adaptem {

/// δ together with the derived bands ε₁ = S·log(1/δ)·√δ and ε₂ = S·log(1/δ)·δ.
struct StepSizeParams {
    double delta = 0.5;
    double eps0 = 0.1;
    double sigma_sup = 1.0;
    double log_inv_delta = 0.0; ///< log(1/δ)
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps_mid = 0.0; ///< √(ε₁ε₂), where middle_branch switches between its two forms
    /// ε₁ < ε₀/4. The scheme is well defined either way; this only flags the
    /// regime in which the convergence theory applies.
    bool framework_valid = false;

    /// Throws InvalidInput unless δ ∈ (0,1), ε₀ > 0 and S > 0. Logs a warning
    /// when framework_valid comes out false and `warn` is set.
    static StepSizeParams make(double delta, double eps0, double sigma_sup, bool warn = true);
};

/// Middle-regime formula (d / (S·log(1/δ)))², evaluated as δ²·(d/ε₂)² below
/// eps_mid and as δ·(d/ε₁)² above, so it is exactly δ² at ε₂ and exactly δ at ε₁.
[[nodiscard]] double middle_branch(double distance, const StepSizeParams& params) noexcept;

/// h(x, δ) from the distance to Θ: δ² inside Θ^{ε₂}, δ outside Θ^{ε₁}, the
/// middle branch in between. Always in [δ², δ] and nondecreasing in d.
[[nodiscard]] double step_size_from_distance(double distance, const StepSizeParams& params) noexcept;
[[nodiscard]] double step_size(std::span<const double> x, const StepSizeParams& params, const Hypersurface& surface);

/// out = state + mu·h + sigma·dW, sigma row-major. Throws NumericError on non-finite input or output.
void em_step(std::span<const double> state, std::span<const double> mu, std::span<const double> sigma, double h,
             std::span<const double> dw, std::span<double> out);
[[nodiscard]] std::vector<double> em_step(std::span<const double> state, std::span<const double> mu,
                                          std::span<const double> sigma, double h, std::span<const double> dw);

/// Grid times τ_k and states X_{τ_k}; the last time is the first one at or past T.
struct Trajectory {
    std::size_t dimension = 1;
    std::vector<double> times;
    std::vector<double> states; ///< row k holds X_{τ_k}
    std::size_t step_count = 0; ///< N = min{k : τ_k ≥ T}

    [[nodiscard]] std::span<const double> state(std::size_t k) const {
        return {states.data() + k * dimension, dimension};
    }
    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

/// Adaptive Euler–Maruyama from τ_0 = 0 with τ_{k+1} = τ_k + h(X_{τ_k}, δ).
/// The last step is taken at full length and may overshoot T; use interpolate()
/// for the state at T. Throws RunawaySimulation past 10·T/δ² steps.
[[nodiscard]] Trajectory simulate_adaptive(const SdeProblem& problem, const StepSizeParams& params,
                                           BrownianPath& path);

/// Euler–Maruyama on the uniform grid {kT/n}.
[[nodiscard]] Trajectory simulate_equidistant(const SdeProblem& problem, std::size_t n_steps, BrownianPath& path);

/// Continuous-time scheme between grid points:
/// X_t = X_{τ_k} + μ(X_{τ_k})(t − τ_k) + σ(X_{τ_k})(W_t − W_{τ_k}) with τ_k the last grid time ≤ t.
[[nodiscard]] std::vector<double> interpolate(const Trajectory& traj, const SdeProblem& problem, BrownianPath& path,
                                              double t);

/// CSV dump with columns k, tau_k, x_0 .. x_{d-1}.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

} // namespace adaptem
