#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace adaptem {

using ScalarFn = std::function<double(double)>;

/// Scalar drift that is Lipschitz on each interval between breakpoints ξ₁ < … < ξ_m.
///
/// Branch i applies on [ξ_i, ξ_{i+1}) (right-continuous), branch 0 on (−∞, ξ₁).
/// One-sided limits at each breakpoint are supplied explicitly and checked
/// against the branches at ξ ± 1e-8.
class PiecewiseDrift1D {
public:
    PiecewiseDrift1D(std::vector<double> breakpoints, std::vector<ScalarFn> branches, std::vector<double> left_limits,
                     std::vector<double> right_limits);

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] std::size_t branch_index(double x) const;

    [[nodiscard]] const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] const std::vector<double>& left_limits() const noexcept { return left_; }
    [[nodiscard]] const std::vector<double>& right_limits() const noexcept { return right_; }
    [[nodiscard]] const ScalarFn& branch(std::size_t i) const { return branches_.at(i); }

private:
    std::vector<double> breakpoints_;
    std::vector<ScalarFn> branches_;
    std::vector<double> left_;
    std::vector<double> right_;
};

/// Jump coefficient (μ(ξ−) − μ(ξ+)) / (2σ(ξ)²) at breakpoint `index`, normal +1.
/// Throws DegenerateAtSurface when σ(ξ) = 0.
[[nodiscard]] double jump_coefficient(const PiecewiseDrift1D& drift, const ScalarFn& sigma, std::size_t index);

/// Bump (1+u)⁴(1−u)⁴ on [−1, 1], zero outside; C³ at ±1.
[[nodiscard]] double bump(double u) noexcept;

struct TransformParams {
    double c = 0.0;    ///< bump support radius
    double eps0 = 0.0; ///< must exceed c
};

/// The change of variables G(x) = x + (x−ξ)|x−ξ|·bump(|x−ξ|/c)·α(ξ) near each
/// breakpoint ξ (identity elsewhere), which turns the scalar SDE into one with
/// globally Lipschitz coefficients μ_G, σ_G.
///
/// Construction validates c < ε₀, that the bump supports do not overlap, and
/// that G′ ≥ 0.1 on a verification grid, so G is strictly increasing and
/// G_inverse is well defined.
class ScalarTransform {
public:
    ScalarTransform(PiecewiseDrift1D drift, ScalarFn sigma, TransformParams params);

    /// Default c = min(ε₀, half the minimum breakpoint gap)/2, halved until the G′ grid check passes.
    static ScalarTransform with_default_radius(PiecewiseDrift1D drift, ScalarFn sigma, double eps0);

    [[nodiscard]] double G(double x) const;
    [[nodiscard]] double G_prime(double x) const;
    /// Right-limit branch at the breakpoints themselves.
    [[nodiscard]] double G_second(double x) const;
    /// x with |G(x) − z| < 1e-12; throws RootFindError after 200 iterations.
    [[nodiscard]] double G_inverse(double z) const;

    struct Coefficients {
        double mu_G;
        double sigma_G;
    };
    /// μ_G(z) = G′(x)μ(x) + ½σ(x)²G″(x), σ_G(z) = G′(x)σ(x) at x = G⁻¹(z).
    [[nodiscard]] Coefficients transformed_coeffs(double z) const;

    [[nodiscard]] const std::vector<double>& alphas() const noexcept { return alphas_; }
    [[nodiscard]] const TransformParams& params() const noexcept { return params_; }
    [[nodiscard]] const PiecewiseDrift1D& drift() const noexcept { return drift_; }
    [[nodiscard]] const ScalarFn& sigma() const noexcept { return sigma_; }

    /// Minimum of G′ over the verification grid for the given radius.
    [[nodiscard]] static double min_derivative_on_grid(const std::vector<double>& alphas, double c);

private:
    // Nearest breakpoint index if x lies strictly inside its bump support.
    [[nodiscard]] std::ptrdiff_t active_index(double x) const;

    PiecewiseDrift1D drift_;
    ScalarFn sigma_;
    TransformParams params_;
    std::vector<double> alphas_;
};

} // namespace adaptem
