#pragma once

#include "adaptem/geometry.h"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace adaptem {

/// μ: writes the drift at x into out (size d).
using DriftFn = std::function<void(std::span<const double> x, std::span<double> out)>;
/// σ: writes the d×d diffusion matrix at x into out, row-major (size d·d).
using DiffusionFn = std::function<void(std::span<const double> x, std::span<double> out)>;

/// dX = μ(X) dt + σ(X) dW on [0, T], X_0 = x0, with μ discontinuous on Θ.
///
/// Holds the bounds the adaptive step size needs: ε₀ (below the reach of Θ)
/// and S, an upper bound for the Frobenius norm of σ on Θ^{ε₀}. μ_sup is a
/// diagnostic bound for ‖μ‖ on the same set.
struct SdeProblem {
    std::size_t dimension = 1;
    DriftFn drift;
    DiffusionFn diffusion;
    Hypersurface surface;
    std::vector<double> x0;
    double horizon = 1.0;
    double eps0 = 0.1;
    double sigma_sup = 1.0;
    double mu_sup = 1.0;

    /// Checks the invariants (ε₀ below the reach, S > 0, finite coefficients at x0, matching
    /// dimensions). Throws InvalidInput on violation.
    void validate() const;

    void drift_at(std::span<const double> x, std::span<double> out) const { drift(x, out); }
    void diffusion_at(std::span<const double> x, std::span<double> out) const { diffusion(x, out); }
};

/// Frobenius norm of a row-major matrix.
[[nodiscard]] double frobenius_norm(std::span<const double> matrix);

} // namespace adaptem
