#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace adaptem {

/// Finite set of breakpoints on the real line.
struct PointSet1D {
    std::vector<double> points; ///< strictly increasing
};

/// {x : n·x = offset} with ‖n‖ = 1.
struct Hyperplane {
    std::vector<double> unit_normal;
    double offset = 0.0;
};

struct Circle2D {
    double center[2] = {0.0, 0.0};
    double radius = 1.0;
};

/// The exceptional set Θ on which the drift may jump.
///
/// Immutable after construction. Reach is known analytically for every
/// variant and is never estimated. Only distance() is needed by the solver;
/// project() and unit_normal() serve the 1-D transform and diagnostics.
class Hypersurface {
public:
    using Variant = std::variant<PointSet1D, Hyperplane, Circle2D>;

    /// The single point {0} on the real line.
    Hypersurface() : shape_(PointSet1D{{0.0}}) {}

    static Hypersurface points1d(std::vector<double> points);
    static Hypersurface hyperplane(std::vector<double> unit_normal, double offset);
    static Hypersurface circle(double cx, double cy, double radius);

    [[nodiscard]] std::size_t dimension() const noexcept;
    [[nodiscard]] double reach() const noexcept;

    /// Euclidean distance d(x, Θ). 1-Lipschitz in x.
    [[nodiscard]] double distance(std::span<const double> x) const;

    /// Unique closest point p(x); requires distance(x) < reach().
    [[nodiscard]] std::vector<double> project(std::span<const double> x) const;

    /// Unit normal at a point of Θ. For point sets the normal is +1 (toward +∞).
    [[nodiscard]] std::vector<double> unit_normal(std::span<const double> xi) const;

    [[nodiscard]] const Variant& shape() const noexcept { return shape_; }

private:
    explicit Hypersurface(Variant shape) : shape_(std::move(shape)) {}

    Variant shape_;
};

} // namespace adaptem
