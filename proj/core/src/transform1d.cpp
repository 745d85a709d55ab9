#include "adaptem/transform1d.h"

#include "adaptem/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace adaptem {

namespace {

struct BumpTerms {
    double phi, d1, d2; // φ(u), φ′(u), φ″(u)
};

BumpTerms bump_terms(double u) noexcept {
    if (u >= 1.0) return {0.0, 0.0, 0.0};
    const double w = 1.0 - u * u;
    const double w2 = w * w;
    return {w2 * w2, -8.0 * u * w2 * w, -8.0 * w2 * w + 48.0 * u * u * w2};
}

// f(s) = s|s|φ(|s|/c) and its derivatives; G = x + α f, G′ = 1 + α f′, G″ = α f″.
double f0(double s, double c) noexcept {
    const double t = std::abs(s);
    return s * t * bump_terms(t / c).phi;
}

double f1(double s, double c) noexcept {
    const double u = std::abs(s) / c;
    const BumpTerms b = bump_terms(u);
    return c * (2.0 * u * b.phi + u * u * b.d1);
}

double f2(double s, double c) noexcept {
    const double u = std::abs(s) / c;
    const BumpTerms b = bump_terms(u);
    const double v = 2.0 * b.phi + 4.0 * u * b.d1 + u * u * b.d2;
    return s < 0.0 ? -v : v;
}

constexpr int kGridPoints = 2001;
constexpr double kMinDerivative = 0.1;

} // namespace

PiecewiseDrift1D::PiecewiseDrift1D(std::vector<double> breakpoints, std::vector<ScalarFn> branches,
                                   std::vector<double> left_limits, std::vector<double> right_limits)
    : breakpoints_(std::move(breakpoints)), branches_(std::move(branches)), left_(std::move(left_limits)),
      right_(std::move(right_limits)) {
    const std::size_t m = breakpoints_.size();
    if (m == 0) throw InvalidInput("PiecewiseDrift1D: need at least one breakpoint");
    if (branches_.size() != m + 1) throw InvalidInput("PiecewiseDrift1D: need one more branch than breakpoints");
    if (left_.size() != m || right_.size() != m) throw InvalidInput("PiecewiseDrift1D: one limit pair per breakpoint");
    for (std::size_t i = 1; i < m; ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1]))
            throw InvalidInput("PiecewiseDrift1D: breakpoints must be strictly increasing");
    }
    for (const auto& b : branches_) {
        if (!b) throw InvalidInput("PiecewiseDrift1D: empty branch");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = breakpoints_[i];
        if (std::abs(branches_[i](xi - 1e-8) - left_[i]) > 1e-6 ||
            std::abs(branches_[i + 1](xi + 1e-8) - right_[i]) > 1e-6)
            throw InvalidInput("PiecewiseDrift1D: one-sided limits disagree with the branches at breakpoint " +
                               std::to_string(i));
    }
}

std::size_t PiecewiseDrift1D::branch_index(double x) const {
    return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                    breakpoints_.begin());
}

double PiecewiseDrift1D::operator()(double x) const { return branches_[branch_index(x)](x); }

double jump_coefficient(const PiecewiseDrift1D& drift, const ScalarFn& sigma, std::size_t index) {
    const double xi = drift.breakpoints().at(index);
    const double s = sigma(xi);
    if (s == 0.0 || !std::isfinite(s))
        throw DegenerateAtSurface("jump coefficient: diffusion vanishes at breakpoint " + std::to_string(xi));
    return (drift.left_limits()[index] - drift.right_limits()[index]) / (2.0 * s * s);
}

double bump(double u) noexcept {
    if (std::abs(u) > 1.0) return 0.0;
    const double a = (1.0 + u) * (1.0 - u);
    const double a2 = a * a;
    return a2 * a2;
}

double ScalarTransform::min_derivative_on_grid(const std::vector<double>& alphas, double c) {
    double lo = 1.0;
    for (double a : alphas) {
        for (int i = 0; i <= kGridPoints; ++i) {
            const double s = c * static_cast<double>(i) / kGridPoints;
            lo = std::min(lo, 1.0 + a * f1(s, c));
        }
    }
    return lo;
}

ScalarTransform::ScalarTransform(PiecewiseDrift1D drift, ScalarFn sigma, TransformParams params)
    : drift_(std::move(drift)), sigma_(std::move(sigma)), params_(params) {
    if (!sigma_) throw InvalidInput("ScalarTransform: sigma must be set");
    if (!(params_.c > 0.0)) throw InvalidInput("ScalarTransform: c must be positive");
    if (!(params_.c < params_.eps0)) throw InvalidInput("ScalarTransform: c must be smaller than eps0");
    const auto& xs = drift_.breakpoints();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(2.0 * params_.c <= xs[i] - xs[i - 1]))
            throw InvalidInput("ScalarTransform: bump supports overlap; c exceeds half the breakpoint gap");
    }
    alphas_.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) alphas_.push_back(jump_coefficient(drift_, sigma_, i));
    if (min_derivative_on_grid(alphas_, params_.c) < kMinDerivative)
        throw InvalidInput("ScalarTransform: c too large, G' drops below 0.1 so G is not safely invertible");
}

ScalarTransform ScalarTransform::with_default_radius(PiecewiseDrift1D drift, ScalarFn sigma, double eps0) {
    if (!(eps0 > 0.0)) throw InvalidInput("ScalarTransform: eps0 must be positive");
    const auto& xs = drift.breakpoints();
    double half_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < xs.size(); ++i) half_gap = std::min(half_gap, (xs[i] - xs[i - 1]) / 2.0);
    double c = std::min(eps0, half_gap) / 2.0;

    std::vector<double> alphas;
    for (std::size_t i = 0; i < xs.size(); ++i) alphas.push_back(jump_coefficient(drift, sigma, i));
    for (int iter = 0; iter < 64 && min_derivative_on_grid(alphas, c) < kMinDerivative; ++iter) c /= 2.0;
    return ScalarTransform(std::move(drift), std::move(sigma), TransformParams{c, eps0});
}

std::ptrdiff_t ScalarTransform::active_index(double x) const {
    const auto& xs = drift_.breakpoints();
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    auto idx = it - xs.begin();
    if (it == xs.end() || (it != xs.begin() && x - xs[idx - 1] < xs[idx] - x)) --idx;
    return std::abs(x - xs[idx]) < params_.c ? idx : -1;
}

double ScalarTransform::G(double x) const {
    if (!std::isfinite(x)) throw NumericError("G: non-finite argument");
    const auto i = active_index(x);
    if (i < 0) return x;
    return x + alphas_[i] * f0(x - drift_.breakpoints()[i], params_.c);
}

double ScalarTransform::G_prime(double x) const {
    if (!std::isfinite(x)) throw NumericError("G': non-finite argument");
    const auto i = active_index(x);
    if (i < 0) return 1.0;
    return 1.0 + alphas_[i] * f1(x - drift_.breakpoints()[i], params_.c);
}

double ScalarTransform::G_second(double x) const {
    if (!std::isfinite(x)) throw NumericError("G'': non-finite argument");
    const auto i = active_index(x);
    if (i < 0) return 0.0;
    return alphas_[i] * f2(x - drift_.breakpoints()[i], params_.c);
}

double ScalarTransform::G_inverse(double z) const {
    if (!std::isfinite(z)) throw NumericError("G_inverse: non-finite argument");
    // G maps [ξ−c, ξ+c] onto itself and fixes ξ, so the preimage stays in z's half-interval.
    const auto i = active_index(z);
    if (i < 0) return z;
    const double xi = drift_.breakpoints()[i];
    if (z == xi) return xi;
    double lo = z > xi ? xi : xi - params_.c;
    double hi = z > xi ? xi + params_.c : xi;

    double x = z;
    for (int iter = 0; iter < 200; ++iter) {
        const double g = G(x) - z;
        if (std::abs(g) < 1e-12) return x;
        if (g > 0.0) hi = x;
        else lo = x;
        double next = x - g / G_prime(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
    }
    throw RootFindError("G_inverse: no convergence after 200 iterations for z=" + std::to_string(z));
}

ScalarTransform::Coefficients ScalarTransform::transformed_coeffs(double z) const {
    const double x = G_inverse(z);
    const double mu = drift_(x);
    const double s = sigma_(x);
    const double gp = G_prime(x);
    return {gp * mu + 0.5 * s * s * G_second(x), gp * s};
}

} // namespace adaptem
