#pragma once

#include "adaptem/problem.h"
#include "adaptem/transform1d.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaptem {

/// A named test problem. Scalar problems also carry their drift in
/// piecewise form so the transform can be built from the same coefficients.
struct ExampleRegistryEntry {
    std::string name;
    SdeProblem problem;
    std::optional<PiecewiseDrift1D> drift1d;
    ScalarFn sigma1d;
};

/// Scalar problem whose drift is `drift` and whose Θ is its breakpoint set.
[[nodiscard]] SdeProblem make_scalar_problem(const PiecewiseDrift1D& drift, ScalarFn sigma, double x0,
                                             double horizon, double eps0, double sigma_sup, double mu_sup);

/// example1: scalar, Θ = {0, 1}, multiplicative noise, x0 = 1.5.
[[nodiscard]] ExampleRegistryEntry example1();
/// example2: scalar, Θ = {−1, 2}, additive noise, x0 = 0.
[[nodiscard]] ExampleRegistryEntry example2();
/// example3: planar, Θ = unit circle, degenerate noise, x0 = (0.5, 0.5).
[[nodiscard]] ExampleRegistryEntry example3();

[[nodiscard]] std::vector<std::string> example_names();
/// Throws InvalidInput for an unknown name.
[[nodiscard]] ExampleRegistryEntry find_example(std::string_view name);

} // namespace adaptem
