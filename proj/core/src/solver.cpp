#include "adaptem/solver.h"

#include "adaptem/errors.h"
#include "adaptem/log.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace adaptem {

namespace {

void check_dims(const SdeProblem& problem, const BrownianPath& path) {
    if (path.dimension() != problem.dimension)
        throw InvalidInput("solver: Brownian path dimension " + std::to_string(path.dimension()) +
                           " does not match problem dimension " + std::to_string(problem.dimension));
    if (problem.x0.size() != problem.dimension) throw InvalidInput("solver: x0 has wrong dimension");
}

// Scratch buffers for one integration, sized once.
struct Workspace {
    explicit Workspace(std::size_t d) : mu(d), sigma(d * d), w_prev(d), w_next(d), dw(d), x(d), x_next(d) {}
    std::vector<double> mu, sigma, w_prev, w_next, dw, x, x_next;
};

void advance(const SdeProblem& problem, Workspace& ws, double h, BrownianPath& path, double t_next) {
    problem.drift_at(ws.x, ws.mu);
    problem.diffusion_at(ws.x, ws.sigma);
    path.query(t_next, ws.w_next);
    for (std::size_t i = 0; i < ws.dw.size(); ++i) ws.dw[i] = ws.w_next[i] - ws.w_prev[i];
    em_step(ws.x, ws.mu, ws.sigma, h, ws.dw, ws.x_next);
    ws.x.swap(ws.x_next);
    ws.w_prev.swap(ws.w_next);
}

} // namespace

StepSizeParams StepSizeParams::make(double delta, double eps0, double sigma_sup, bool warn) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("step size: delta must lie in (0,1)");
    if (!(eps0 > 0.0)) throw InvalidInput("step size: eps0 must be positive");
    if (!(sigma_sup > 0.0) || !std::isfinite(sigma_sup)) throw InvalidInput("step size: sigma_sup must be positive");
    StepSizeParams p;
    p.delta = delta;
    p.eps0 = eps0;
    p.sigma_sup = sigma_sup;
    p.log_inv_delta = std::log(1.0 / delta);
    p.eps1 = sigma_sup * p.log_inv_delta * std::sqrt(delta);
    p.eps2 = sigma_sup * p.log_inv_delta * delta;
    p.eps_mid = std::sqrt(p.eps1 * p.eps2);
    p.framework_valid = p.eps1 < eps0 / 4.0;
    if (warn && !p.framework_valid) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "delta=%.6g gives eps1=%.6g >= eps0/4=%.6g; proceeding outside the framework",
                      delta, p.eps1, eps0 / 4.0);
        log_warning(buf);
    }
    return p;
}

double middle_branch(double distance, const StepSizeParams& params) noexcept {
    const auto lower = [&](double d) {
        const double r = d / params.eps2;
        return (params.delta * params.delta) * (r * r);
    };
    if (distance < params.eps_mid) return lower(distance);
    const double r = distance / params.eps1;
    // The max guards monotonicity against a one-ulp mismatch of the two forms at eps_mid.
    return std::max(params.delta * (r * r), lower(params.eps_mid));
}

double step_size_from_distance(double distance, const StepSizeParams& params) noexcept {
    const double d2 = params.delta * params.delta;
    if (distance < params.eps2) return d2;
    if (distance < params.eps1) return std::clamp(middle_branch(distance, params), d2, params.delta);
    return params.delta;
}

double step_size(std::span<const double> x, const StepSizeParams& params, const Hypersurface& surface) {
    if (!(params.delta > 0.0 && params.delta < 1.0)) throw InvalidInput("step_size: delta must lie in (0,1)");
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidInput("step_size: x must be finite");
    }
    return step_size_from_distance(surface.distance(x), params);
}

void em_step(std::span<const double> state, std::span<const double> mu, std::span<const double> sigma, double h,
             std::span<const double> dw, std::span<double> out) {
    const std::size_t d = state.size();
    if (mu.size() != d || dw.size() != d || out.size() != d || sigma.size() != d * d)
        throw InvalidInput("em_step: inconsistent shapes");
    for (std::size_t i = 0; i < d; ++i) {
        double v = state[i] + mu[i] * h;
        const double* row = sigma.data() + i * d;
        for (std::size_t j = 0; j < d; ++j) v += row[j] * dw[j];
        if (!std::isfinite(v)) throw NumericError("em_step: non-finite state");
        out[i] = v;
    }
}

std::vector<double> em_step(std::span<const double> state, std::span<const double> mu,
                            std::span<const double> sigma, double h, std::span<const double> dw) {
    std::vector<double> out(state.size());
    em_step(state, mu, sigma, h, dw, out);
    return out;
}

Trajectory simulate_adaptive(const SdeProblem& problem, const StepSizeParams& params, BrownianPath& path) {
    if (!(params.delta > 0.0 && params.delta < 1.0)) throw InvalidInput("simulate_adaptive: delta must lie in (0,1)");
    check_dims(problem, path);

    const std::size_t d = problem.dimension;
    const double T = problem.horizon;
    const double budget = 10.0 * T / (params.delta * params.delta);

    Trajectory traj;
    traj.dimension = d;
    traj.times.reserve(static_cast<std::size_t>(std::min(budget, 4.0 * T / params.delta)) + 2);
    traj.states.reserve(traj.times.capacity() * d);
    traj.times.push_back(0.0);
    traj.states.insert(traj.states.end(), problem.x0.begin(), problem.x0.end());

    Workspace ws(d);
    ws.x = problem.x0;
    path.query(0.0, ws.w_prev);

    double tau = 0.0;
    std::size_t k = 0;
    while (tau < T) {
        if (static_cast<double>(k) >= budget) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "simulate_adaptive: exceeded %.0f steps at tau=%.9g (delta=%.6g, d(x,Theta)=%.6g)", budget,
                          tau, params.delta, problem.surface.distance(ws.x));
            throw RunawaySimulation(buf);
        }
        const double h = step_size_from_distance(problem.surface.distance(ws.x), params);
        const double next = tau + h;
        advance(problem, ws, h, path, next);
        tau = next;
        ++k;
        traj.times.push_back(tau);
        traj.states.insert(traj.states.end(), ws.x.begin(), ws.x.end());
    }
    traj.step_count = k;
    return traj;
}

Trajectory simulate_equidistant(const SdeProblem& problem, std::size_t n_steps, BrownianPath& path) {
    if (n_steps == 0) throw InvalidInput("simulate_equidistant: n_steps must be positive");
    check_dims(problem, path);

    const std::size_t d = problem.dimension;
    const double T = problem.horizon;
    const double n = static_cast<double>(n_steps);

    Trajectory traj;
    traj.dimension = d;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve((n_steps + 1) * d);
    traj.times.push_back(0.0);
    traj.states.insert(traj.states.end(), problem.x0.begin(), problem.x0.end());

    Workspace ws(d);
    ws.x = problem.x0;
    path.query(0.0, ws.w_prev);

    double tau = 0.0;
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double next = static_cast<double>(k) * T / n;
        advance(problem, ws, next - tau, path, next);
        tau = next;
        traj.times.push_back(tau);
        traj.states.insert(traj.states.end(), ws.x.begin(), ws.x.end());
    }
    traj.step_count = n_steps;
    return traj;
}

std::vector<double> interpolate(const Trajectory& traj, const SdeProblem& problem, BrownianPath& path, double t) {
    if (traj.times.empty()) throw InvalidInput("interpolate: empty trajectory");
    if (!(t >= 0.0 && t <= traj.times.back())) throw InvalidInput("interpolate: t outside the simulated range");
    check_dims(problem, path);

    const auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
    const auto k = static_cast<std::size_t>(it - traj.times.begin()) - 1;
    const double tau = traj.times[k];
    const auto xk = traj.state(k);
    if (t == tau) return {xk.begin(), xk.end()};

    const std::size_t d = traj.dimension;
    std::vector<double> mu(d), sigma(d * d), dw(d), out(d);
    problem.drift_at(xk, mu);
    problem.diffusion_at(xk, sigma);
    path.increment(tau, t, dw);
    em_step(xk, mu, sigma, t - tau, dw, out);
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "k,tau_k";
    for (std::size_t i = 0; i < traj.dimension; ++i) out << ",x" << i;
    out << '\n';
    char buf[32];
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << k;
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
        out << ',' << buf;
        for (double v : traj.state(k)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

} // namespace adaptem
