#include "adaptem/geometry.h"

#include "adaptem/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace adaptem {

namespace {

constexpr double kOnSurfaceTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(std::span<const double> x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidInput("geometry: point has non-finite coordinate");
    }
}

// Index of the breakpoint nearest to x; ties go to the left point.
std::size_t nearest_index(const std::vector<double>& pts, double x) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    if (it == pts.begin()) return 0;
    if (it == pts.end()) return pts.size() - 1;
    const auto right = static_cast<std::size_t>(it - pts.begin());
    return (x - pts[right - 1] <= pts[right] - x) ? right - 1 : right;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

Hypersurface Hypersurface::points1d(std::vector<double> points) {
    if (points.empty()) throw InvalidInput("points1d: at least one point required");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) throw InvalidInput("points1d: non-finite point");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw InvalidInput("points1d: points must be strictly increasing");
    }
    return Hypersurface(PointSet1D{std::move(points)});
}

Hypersurface Hypersurface::hyperplane(std::vector<double> unit_normal, double offset) {
    if (unit_normal.empty()) throw InvalidInput("hyperplane: empty normal");
    require_finite(unit_normal);
    if (!std::isfinite(offset)) throw InvalidInput("hyperplane: non-finite offset");
    const double norm = std::sqrt(dot(unit_normal, unit_normal));
    if (std::abs(norm - 1.0) > 1e-12) throw InvalidInput("hyperplane: normal must have unit length");
    return Hypersurface(Hyperplane{std::move(unit_normal), offset});
}

Hypersurface Hypersurface::circle(double cx, double cy, double radius) {
    if (!std::isfinite(cx) || !std::isfinite(cy)) throw InvalidInput("circle: non-finite center");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("circle: radius must be positive");
    return Hypersurface(Circle2D{{cx, cy}, radius});
}

std::size_t Hypersurface::dimension() const noexcept {
    return std::visit(overloaded{
                          [](const PointSet1D&) -> std::size_t { return 1; },
                          [](const Hyperplane& h) -> std::size_t { return h.unit_normal.size(); },
                          [](const Circle2D&) -> std::size_t { return 2; },
                      },
                      shape_);
}

double Hypersurface::reach() const noexcept {
    return std::visit(overloaded{
                          [](const PointSet1D& p) {
                              double gap = std::numeric_limits<double>::infinity();
                              for (std::size_t i = 1; i < p.points.size(); ++i)
                                  gap = std::min(gap, p.points[i] - p.points[i - 1]);
                              return gap / 2.0;
                          },
                          [](const Hyperplane&) { return std::numeric_limits<double>::infinity(); },
                          [](const Circle2D& c) { return c.radius; },
                      },
                      shape_);
}

double Hypersurface::distance(std::span<const double> x) const {
    if (x.size() != dimension())
        throw InvalidInput("distance: point has dimension " + std::to_string(x.size()) + ", surface has " +
                           std::to_string(dimension()));
    return std::visit(overloaded{
                          [&](const PointSet1D& p) {
                              return std::abs(x[0] - p.points[nearest_index(p.points, x[0])]);
                          },
                          [&](const Hyperplane& h) { return std::abs(dot(h.unit_normal, x) - h.offset); },
                          [&](const Circle2D& c) {
                              return std::abs(std::hypot(x[0] - c.center[0], x[1] - c.center[1]) - c.radius);
                          },
                      },
                      shape_);
}

std::vector<double> Hypersurface::project(std::span<const double> x) const {
    require_finite(x);
    const double d = distance(x);
    if (!(d < reach())) throw NoUniqueProjection("project: point lies outside the reach of the surface");
    return std::visit(overloaded{
                          [&](const PointSet1D& p) {
                              return std::vector<double>{p.points[nearest_index(p.points, x[0])]};
                          },
                          [&](const Hyperplane& h) {
                              const double s = dot(h.unit_normal, x) - h.offset;
                              std::vector<double> out(x.begin(), x.end());
                              for (std::size_t i = 0; i < out.size(); ++i) out[i] -= s * h.unit_normal[i];
                              return out;
                          },
                          [&](const Circle2D& c) {
                              const double dx = x[0] - c.center[0];
                              const double dy = x[1] - c.center[1];
                              const double r = std::hypot(dx, dy);
                              if (r == 0.0) throw NoUniqueProjection("project: circle center has no unique projection");
                              return std::vector<double>{c.center[0] + c.radius * dx / r,
                                                         c.center[1] + c.radius * dy / r};
                          },
                      },
                      shape_);
}

std::vector<double> Hypersurface::unit_normal(std::span<const double> xi) const {
    require_finite(xi);
    if (distance(xi) > kOnSurfaceTol) throw InvalidInput("unit_normal: point is not on the surface");
    return std::visit(overloaded{
                          [](const PointSet1D&) { return std::vector<double>{1.0}; },
                          [](const Hyperplane& h) { return h.unit_normal; },
                          [&](const Circle2D& c) {
                              const double dx = xi[0] - c.center[0];
                              const double dy = xi[1] - c.center[1];
                              const double r = std::hypot(dx, dy);
                              return std::vector<double>{dx / r, dy / r};
                          },
                      },
                      shape_);
}

} // namespace adaptem
