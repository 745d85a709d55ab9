#include "adaptem/examples.h"

#include "adaptem/errors.h"

#include <cmath>
#include <string>

namespace adaptem {

SdeProblem make_scalar_problem(const PiecewiseDrift1D& drift, ScalarFn sigma, double x0, double horizon, double eps0,
                               double sigma_sup, double mu_sup) {
    SdeProblem p{
        .dimension = 1,
        .drift = [drift](std::span<const double> x, std::span<double> out) { out[0] = drift(x[0]); },
        .diffusion = [sigma](std::span<const double> x, std::span<double> out) { out[0] = sigma(x[0]); },
        .surface = Hypersurface::points1d(drift.breakpoints()),
        .x0 = {x0},
        .horizon = horizon,
        .eps0 = eps0,
        .sigma_sup = sigma_sup,
        .mu_sup = mu_sup,
    };
    p.validate();
    return p;
}

// S = sup σ = 1, attained at x = 0. On Θ^{0.4} ⊂ (−0.4, 1.4) the drift is bounded by 2.
ExampleRegistryEntry example1() {
    PiecewiseDrift1D drift({0.0, 1.0},
                           {[](double) { return -2.0; }, [](double x) { return x * x; },
                            [](double x) { return 2.0 / x - 3.0 / (x * x); }},
                           {-2.0, 1.0}, {0.0, -1.0});
    ScalarFn sigma = [](double x) { return 0.5 * (1.0 + 1.0 / (1.0 + x * x)); };
    auto problem = make_scalar_problem(drift, sigma, 1.5, 1.0, 0.4, 1.0, 2.0);
    return {"example1", std::move(problem), std::move(drift), std::move(sigma)};
}

// σ ≡ 1. On Θ^{1} ⊂ (−2, 0) ∪ (1, 3) the drift is bounded by 2·3 = 6.
ExampleRegistryEntry example2() {
    PiecewiseDrift1D drift({-1.0, 2.0},
                           {[](double) { return -1.0; }, [](double) { return 1.0; },
                            [](double x) { return -2.0 * x; }},
                           {-1.0, 1.0}, {1.0, -4.0});
    ScalarFn sigma = [](double) { return 1.0; };
    auto problem = make_scalar_problem(drift, sigma, 0.0, 1.0, 1.0, 1.0, 6.0);
    return {"example2", std::move(problem), std::move(drift), std::move(sigma)};
}

// ‖σ(x)‖_F = ‖x‖/2 < 0.75 on Θ^{0.5} = {0.5 < ‖x‖ < 1.5}; ‖μ‖ ≤ max(√2, 1.5) there.
ExampleRegistryEntry example3() {
    SdeProblem p{
        .dimension = 2,
        .drift =
            [](std::span<const double> x, std::span<double> out) {
                if (x[0] * x[0] + x[1] * x[1] >= 1.0) {
                    out[0] = 1.0;
                    out[1] = 1.0;
                } else {
                    out[0] = -x[0];
                    out[1] = x[1];
                }
            },
        .diffusion =
            [](std::span<const double> x, std::span<double> out) {
                out[0] = 0.5 * x[0];
                out[1] = 0.0;
                out[2] = 0.5 * x[1];
                out[3] = 0.0;
            },
        .surface = Hypersurface::circle(0.0, 0.0, 1.0),
        .x0 = {0.5, 0.5},
        .horizon = 1.0,
        .eps0 = 0.5,
        .sigma_sup = 0.75,
        .mu_sup = 1.5,
    };
    p.validate();
    return {"example3", std::move(p), std::nullopt, {}};
}

std::vector<std::string> example_names() { return {"example1", "example2", "example3"}; }

ExampleRegistryEntry find_example(std::string_view name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "example3") return example3();
    throw InvalidInput("unknown example '" + std::string(name) + "' (expected example1, example2 or example3)");
}

} // namespace adaptem
