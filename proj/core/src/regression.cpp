#include "adaptem/regression.h"

#include "adaptem/errors.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace adaptem {

double RegressionFit::evaluate(double delta) const {
    return c1 * std::pow(std::log(1.0 / delta), c2) * std::pow(delta, c3);
}

RegressionFit fit_rate(std::span<const double> deltas, std::span<const double> values) {
    if (deltas.size() != values.size()) throw InvalidInput("fit_rate: deltas and values differ in length");
    const std::size_t n = deltas.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(deltas[i] > 0.0 && deltas[i] < 1.0)) throw InvalidInput("fit_rate: every delta must lie in (0,1)");
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw InvalidInput("fit_rate: values must be positive");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return deltas[a] != deltas[b] ? deltas[a] < deltas[b] : values[a] < values[b];
    });

    std::size_t distinct = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 || deltas[order[k]] != deltas[order[k - 1]]) ++distinct;
    }
    if (distinct < 3) throw SingularFit("fit_rate: need at least three distinct deltas");

    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double delta = deltas[order[k]];
        const auto row = static_cast<Eigen::Index>(k);
        design(row, 0) = 1.0;
        design(row, 1) = std::log(std::log(1.0 / delta));
        design(row, 2) = std::log(delta);
        rhs(row) = std::log(values[order[k]]);
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 3) throw SingularFit("fit_rate: design matrix is rank deficient");
    const Eigen::Vector3d beta = qr.solve(rhs);

    RegressionFit fit;
    fit.c1 = std::exp(beta(0));
    fit.c2 = beta(1);
    fit.c3 = beta(2);
    fit.residual_logspace = (design * beta - rhs).squaredNorm();
    for (const std::size_t i : order) {
        const double r = values[i] - fit.evaluate(deltas[i]);
        fit.residual_rawspace += r * r;
    }
    return fit;
}

} // namespace adaptem
