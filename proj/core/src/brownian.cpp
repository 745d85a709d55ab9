#include "adaptem/brownian.h"

#include "adaptem/errors.h"
#include "adaptem/rng.h"

#include <bit>
#include <cmath>
#include <iterator>
#include <string>

namespace adaptem {

BrownianPath::BrownianPath(std::size_t dimension, std::uint64_t seed) : dim_(dimension), seed_(seed) {
    if (dimension == 0) throw InvalidInput("BrownianPath: dimension must be positive");
    values_.assign(dim_, 0.0);
    knots_.emplace(0.0, 0);
}

void BrownianPath::query(double t, std::span<double> out) {
    if (out.size() != dim_) throw InvalidInput("BrownianPath::query: output has wrong dimension");
    if (std::isnan(t) || t < 0.0) throw InvalidInput("BrownianPath::query: time must be nonnegative");
    if (std::isinf(t)) throw InvalidInput("BrownianPath::query: time must be finite");
    if (t == 0.0) t = 0.0; // folds -0.0

    auto next = knots_.lower_bound(t);
    if (next != knots_.end() && next->first == t) {
        const double* w = values_.data() + next->second;
        for (std::size_t i = 0; i < dim_; ++i) out[i] = w[i];
        return;
    }

    const auto prev = std::prev(next);
    const double s = prev->first;
    const std::uint64_t key =
        rng::combine(rng::combine(seed_, static_cast<std::uint64_t>(knots_.size())), std::bit_cast<std::uint64_t>(t));

    const std::size_t offset = values_.size();
    values_.resize(offset + dim_);
    const double* ws = values_.data() + prev->second;
    double* wt = values_.data() + offset;

    if (next == knots_.end()) {
        const double sd = std::sqrt(t - s);
        for (std::size_t i = 0; i < dim_; ++i) wt[i] = ws[i] + sd * rng::normal_from_bits(rng::combine(key, i));
    } else {
        const double u = next->first;
        const double* wu = values_.data() + next->second;
        const double weight = (t - s) / (u - s);
        const double sd = std::sqrt((t - s) * (u - t) / (u - s));
        for (std::size_t i = 0; i < dim_; ++i)
            wt[i] = ws[i] + weight * (wu[i] - ws[i]) + sd * rng::normal_from_bits(rng::combine(key, i));
    }
    knots_.emplace_hint(next, t, offset);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = wt[i];
}

std::vector<double> BrownianPath::query(double t) {
    std::vector<double> out(dim_);
    query(t, out);
    return out;
}

void BrownianPath::increment(double s, double t, std::span<double> out) {
    if (!(s <= t)) throw InvalidInput("BrownianPath::increment: requires s <= t");
    if (s < 0.0) throw InvalidInput("BrownianPath::increment: time must be nonnegative");
    if (out.size() != dim_) throw InvalidInput("BrownianPath::increment: output has wrong dimension");
    if (s == t) {
        for (double& v : out) v = 0.0;
        return;
    }
    std::vector<double> ws(dim_);
    query(s, ws);
    query(t, out);
    for (std::size_t i = 0; i < dim_; ++i) out[i] -= ws[i];
}

std::vector<double> BrownianPath::increment(double s, double t) {
    std::vector<double> out(dim_);
    increment(s, t, out);
    return out;
}

std::vector<double> BrownianPath::knot_times() const {
    std::vector<double> out;
    out.reserve(knots_.size());
    for (const auto& [t, offset] : knots_) out.push_back(t);
    return out;
}

std::span<const double> BrownianPath::knot_value(double t) const {
    const auto it = knots_.find(t);
    if (it == knots_.end()) throw InvalidInput("BrownianPath::knot_value: no knot at t=" + std::to_string(t));
    return {values_.data() + it->second, dim_};
}

} // namespace adaptem
