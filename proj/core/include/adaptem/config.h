#pragma once

#include "adaptem/examples.h"
#include "adaptem/geometry.h"
#include "adaptem/montecarlo.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaptem {

/// Surface from its tagged JSON form, e.g. {"type":"points1d","points":[0.0,1.0]},
/// {"type":"circle","center":[0,0],"radius":1.0} or
/// {"type":"hyperplane","normal":[1,0],"offset":0.0}.
[[nodiscard]] Hypersurface parse_surface(std::string_view json_text);

/// Experiment description read from a config file.
///
/// The problem is either a registry example ("example": "example1", with
/// optional "x0", "horizon", "eps0", "sigma_sup", "mu_sup" overrides) or an
/// inline "problem" object:
///
///   {"dimension": 1,
///    "surface": {...},
///    "drift": {"type": "piecewise_polynomial", "branches": [[c0, c1, ...], ...]}
///           | {"type": "constant", "value": [...]}
///           | {"type": "linear", "matrix": [[...]], "offset": [...]},
///    "diffusion": {"type": "constant", "matrix": [[...]]}
///               | {"type": "polynomial", "coeffs": [...]},
///    "x0": [...], "horizon": 1.0, "eps0": 0.4, "sigma_sup": 1.0, "mu_sup": 2.0}
///
/// Experiment keys: "deltas" (array or range string), "samples", "seed",
/// "workers", "occupation_epsilons". Absent keys keep their defaults.
struct ExperimentFile {
    ExampleRegistryEntry entry;
    ExperimentConfig experiment;
    std::vector<double> occupation_epsilons;
};

[[nodiscard]] ExperimentFile parse_experiment_config(std::string_view json_text);

} // namespace adaptem
