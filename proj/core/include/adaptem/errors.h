#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adaptem {

/// Precondition violated by the caller (bad dimension, negative time, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The point has no unique closest point on the surface.
class NoUniqueProjection : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation produced or received a non-finite value.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The adaptive scheme exceeded its step budget of 10·T/δ² steps.
class RunawaySimulation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The diffusion vanishes on the exceptional set, so the jump correction is undefined.
class DegenerateAtSurface : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RootFindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Wraps the failure of one Monte Carlo sample; the experiment is aborted, not resampled.
class SampleFailure : public std::runtime_error {
public:
    SampleFailure(std::size_t sample_index, const std::string& what)
        : std::runtime_error("sample " + std::to_string(sample_index) + " failed: " + what),
          sample_index_(sample_index) {}

    [[nodiscard]] std::size_t sample_index() const noexcept { return sample_index_; }

private:
    std::size_t sample_index_;
};

} // namespace adaptem
