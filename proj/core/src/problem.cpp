#include "adaptem/problem.h"

#include "adaptem/errors.h"

#include <cmath>

namespace adaptem {

void SdeProblem::validate() const {
    if (dimension == 0) throw InvalidInput("problem: dimension must be positive");
    if (!drift || !diffusion) throw InvalidInput("problem: drift and diffusion must be set");
    if (surface.dimension() != dimension) throw InvalidInput("problem: surface dimension does not match");
    if (x0.size() != dimension) throw InvalidInput("problem: x0 dimension does not match");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("problem: horizon must be positive");
    if (!(eps0 > 0.0)) throw InvalidInput("problem: eps0 must be positive");
    if (!(eps0 < surface.reach())) throw InvalidInput("problem: eps0 must be smaller than the reach of the surface");
    if (!(sigma_sup > 0.0) || !std::isfinite(sigma_sup)) throw InvalidInput("problem: sigma_sup must be positive");
    if (!(mu_sup > 0.0)) throw InvalidInput("problem: mu_sup must be positive");
    for (double v : x0) {
        if (!std::isfinite(v)) throw InvalidInput("problem: x0 must be finite");
    }
    std::vector<double> mu(dimension);
    std::vector<double> sigma(dimension * dimension);
    drift(x0, mu);
    diffusion(x0, sigma);
    for (double v : mu) {
        if (!std::isfinite(v)) throw InvalidInput("problem: drift is not finite at x0");
    }
    for (double v : sigma) {
        if (!std::isfinite(v)) throw InvalidInput("problem: diffusion is not finite at x0");
    }
}

double frobenius_norm(std::span<const double> matrix) {
    double s = 0.0;
    for (double v : matrix) s += v * v;
    return std::sqrt(s);
}

} // namespace adaptem
