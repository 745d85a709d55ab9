#pragma once

#include <span>

namespace adaptem {

/// Coefficients of f(δ) = c1·log(1/δ)^c2·δ^c3.
struct RegressionFit {
    double c1 = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double residual_logspace = 0.0; ///< Σ (log v − log f(δ))²
    double residual_rawspace = 0.0; ///< Σ (v − f(δ))²

    [[nodiscard]] double evaluate(double delta) const;
};

/// Least squares of log(value) on [1, log log(1/δ), log δ].
///
/// Pairs are sorted by δ before fitting, so the result does not depend on the
/// input order. Throws InvalidInput for nonpositive values, δ outside (0,1)
/// or mismatched lengths, and SingularFit for fewer than three distinct δ.
[[nodiscard]] RegressionFit fit_rate(std::span<const double> deltas, std::span<const double> values);

} // namespace adaptem
