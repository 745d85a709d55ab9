#pragma once

#include <cstdint>

namespace adaptem::rng {

/// splitmix64 finaliser; a bijection on 64-bit words.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Order-dependent combination of two words into one hash.
[[nodiscard]] constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// Seed of the independent stream used by Monte Carlo sample `index`.
[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return combine(master_seed, index);
}

/// Uniform in the open interval (0, 1) built from the top 52 bits; the +0.5
/// stays exact in double precision, so neither endpoint is reachable.
[[nodiscard]] constexpr double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Inverse of the standard normal CDF (Wichura, AS241 PPND16), relative accuracy ~1e-16.
[[nodiscard]] double inverse_normal_cdf(double p);

/// Standard normal variate from a hash word, by inversion.
[[nodiscard]] inline double normal_from_bits(std::uint64_t bits) { return inverse_normal_cdf(to_open_unit(bits)); }

/// Small sequential generator over the same hash, for tests and tools that need a plain stream.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }
    double uniform() noexcept { return to_open_unit(next()); }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double normal() { return normal_from_bits(next()); }

private:
    std::uint64_t state_;
};

} // namespace adaptem::rng
