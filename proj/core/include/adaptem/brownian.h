#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace adaptem {

/// A d-dimensional Brownian motion sampled lazily at the times it is asked for.
///
/// New times beyond the last knot extend the path with an independent
/// Gaussian increment; times between two knots are filled in from the
/// Brownian bridge conditioned on both neighbours. Stored knots never change,
/// so two schemes that query the same path in any interleaving see one and the
/// same realisation. The normals for a new knot are a hash of
/// (seed, knot count, time bits, coordinate), which makes the path a pure
/// function of the seed and the query sequence.
///
/// Not thread-safe: a path is mutated by queries and belongs to one thread.
class BrownianPath {
public:
    BrownianPath(std::size_t dimension, std::uint64_t seed);

    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t knot_count() const noexcept { return knots_.size(); }

    /// W_t, sampling and inserting a knot at t if needed. Throws InvalidInput for t < 0.
    void query(double t, std::span<double> out);
    [[nodiscard]] std::vector<double> query(double t);

    /// W_t - W_s for 0 <= s <= t.
    void increment(double s, double t, std::span<double> out);
    [[nodiscard]] std::vector<double> increment(double s, double t);

    /// Knot times in increasing order.
    [[nodiscard]] std::vector<double> knot_times() const;
    /// Stored value at an existing knot; throws InvalidInput if t is not a knot.
    [[nodiscard]] std::span<const double> knot_value(double t) const;

private:
    std::size_t dim_;
    std::uint64_t seed_;
    std::map<double, std::size_t> knots_; // time -> offset into values_
    std::vector<double> values_;
};

} // namespace adaptem
