#include "doctest.h"

#include "adaptem/errors.h"
#include "adaptem/examples.h"
#include "adaptem/log.h"
#include "adaptem/montecarlo.h"
#include "adaptem/rng.h"

#include <atomic>
#include <cmath>
#include <vector>

using namespace adaptem;

namespace {

SdeProblem constant_problem(double mu, double sigma, double x0) {
    SdeProblem p;
    p.dimension = 1;
    p.drift = [mu](std::span<const double>, std::span<double> out) { out[0] = mu; };
    p.diffusion = [sigma](std::span<const double>, std::span<double> out) { out[0] = sigma; };
    p.surface = Hypersurface::points1d({0.0});
    p.x0 = {x0};
    p.eps0 = 0.5;
    p.sigma_sup = 1.0;
    p.mu_sup = 1.0;
    return p;
}

struct QuietLogs {
    LogLevel saved = log_level();
    QuietLogs() { set_log_level(LogLevel::off); }
    ~QuietLogs() { set_log_level(saved); }
};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= double(x.size());
    my /= double(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace

TEST_CASE("summarize") {
    const std::vector<double> same(10, 0.75);
    const auto s = summarize(same);
    CHECK(s.mean == 0.75);
    CHECK(s.std_error == 0.0);
    const std::vector<double> two{1.0, 3.0};
    CHECK(summarize(two).mean == 2.0);
    CHECK(summarize(two).std_error == doctest::Approx(1.0));
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS((void)summarize(one), InvalidInput);
}

TEST_CASE("parallel_for covers every index once and reports the smallest failure") {
    for (unsigned workers : {1u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) REQUIRE(h.load() == 1);

        try {
            parallel_for(200, workers, [](std::size_t i) {
                if (i == 150 || i == 37 || i == 90) throw NumericError("boom");
            });
            FAIL("expected a SampleFailure");
        } catch (const SampleFailure& f) {
            CHECK(f.sample_index() == 37);
        }
    }
}

TEST_CASE("experiment config validation") {
    ExperimentConfig c;
    c.deltas = {0.25, 0.125};
    c.samples = 10;
    CHECK_NOTHROW(c.validate());
    c.samples = 1;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c.samples = 10;
    c.deltas = {0.125, 0.25};
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c.deltas = {0.5};
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c.deltas = {};
    CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("coupled difference vanishes for exactly solvable problems") {
    QuietLogs quiet;
    const auto still = constant_problem(0.0, 0.0, 0.3);
    for (std::size_t i = 0; i < 5; ++i) CHECK(coupled_difference_sample(still, 0.125, i, 1).sq_diff == 0.0);

    const auto bm = constant_problem(0.0, 1.0, 100.0);
    for (std::size_t i = 0; i < 50; ++i) {
        const auto s = coupled_difference_sample(bm, 0.0625, i, 1);
        CHECK(s.sq_diff < 1e-24);
        CHECK(s.cost_fine == 16);
        CHECK(s.cost_coarse == 8);
    }
}

TEST_CASE("coupled difference decays at order one for geometric Brownian motion") {
    QuietLogs quiet;
    SdeProblem p = constant_problem(0.0, 0.0, 1.0);
    p.drift = [](std::span<const double> x, std::span<double> out) { out[0] = 0.5 * x[0]; };
    p.diffusion = [](std::span<const double> x, std::span<double> out) { out[0] = 0.8 * x[0]; };
    p.surface = Hypersurface::points1d({-1000.0});
    ExperimentConfig c;
    c.deltas = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    c.samples = 4000;
    c.master_seed = 3;
    const auto rows = estimate_msq(p, c);
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(std::log(r.delta));
        y.push_back(std::log(r.estimate.mean));
    }
    const double order = slope(x, y);
    MESSAGE("msq order " << order);
    CHECK(order > 0.8);
    CHECK(order < 1.2);
}

TEST_CASE("reports do not depend on the worker count") {
    QuietLogs quiet;
    const auto e = example1();
    ExperimentConfig c;
    c.deltas = {0.25, 0.125, 0.0625};
    c.samples = 300;
    c.master_seed = 42;
    c.workers = 1;
    const auto a = run_experiment(e.problem, c);
    c.workers = 4;
    const auto b = run_experiment(e.problem, c);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].msq == b.rows[i].msq);
        CHECK(a.rows[i].msq_stderr == b.rows[i].msq_stderr);
        CHECK(a.rows[i].cost_mean == b.rows[i].cost_mean);
        CHECK(a.rows[i].cost_stderr == b.rows[i].cost_stderr);
    }
    const auto msq = estimate_msq(e.problem, c);
    const auto cost = estimate_cost(e.problem, c);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(msq[i].delta == a.rows[i].delta);
        CHECK(msq[i].estimate.mean == a.rows[i].msq);
        CHECK(cost[i].estimate.mean == a.rows[i].cost_mean);
    }
}

TEST_CASE("report rows satisfy basic invariants") {
    QuietLogs quiet;
    const auto e = example2();
    ExperimentConfig c;
    c.deltas = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
    c.samples = 1000;
    c.master_seed = 5;
    const auto report = run_experiment(e.problem, c);
    CHECK(report.samples == 1000);
    CHECK(report.seed == 5);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        CHECK(r.msq >= 0.0);
        CHECK(r.cost_mean >= e.problem.horizon / r.delta);
        if (i > 0) {
            const auto& prev = report.rows[i - 1];
            CHECK(r.cost_mean > prev.cost_mean + 2.0 * std::hypot(r.cost_stderr, prev.cost_stderr));
        }
    }
}

TEST_CASE("deterministic outer-regime cost") {
    QuietLogs quiet;
    const auto p = constant_problem(0.1, 0.0, 10.0);
    ExperimentConfig c;
    c.deltas = {0.25, 0.125};
    c.samples = 20;
    const auto cost = estimate_cost(p, c);
    CHECK(cost[0].estimate.mean == 4.0);
    CHECK(cost[1].estimate.mean == 8.0);
    CHECK(cost[0].estimate.std_error == 0.0);
    CHECK(cost[1].estimate.std_error == 0.0);
}

TEST_CASE("standard error shrinks like one over root M") {
    QuietLogs quiet;
    // Ornstein-Uhlenbeck: the coupled difference is Gaussian, so the standard error
    // itself is estimated precisely enough for a 30% band.
    SdeProblem p = constant_problem(0.0, 1.0, 1.0);
    p.drift = [](std::span<const double> x, std::span<double> out) { out[0] = -x[0]; };
    p.surface = Hypersurface::points1d({-1000.0});
    std::vector<double> se;
    for (std::size_t M : {1000u, 4000u, 16000u}) {
        ExperimentConfig c;
        c.deltas = {0.125};
        c.samples = M;
        c.master_seed = 77;
        se.push_back(estimate_msq(p, c)[0].estimate.std_error);
    }
    MESSAGE("stderr " << se[0] << " " << se[1] << " " << se[2]);
    for (std::size_t i = 1; i < se.size(); ++i) {
        CHECK(se[i - 1] / se[i] > 2.0 / 1.3);
        CHECK(se[i - 1] / se[i] < 2.0 * 1.3);
    }
}

namespace {
ExperimentConfig single_delta_run() {
    ExperimentConfig c;
    c.deltas = {0.015625};
    c.samples = 10000;
    c.master_seed = 7;
    return c;
}
} // namespace

TEST_CASE("example1 msq at delta = 2^-6 is within a factor 2 of its reference rate curve") {
    QuietLogs quiet;
    const double msq = estimate_msq(example1().problem, single_delta_run())[0].estimate.mean;
    const double ref = 0.5940 * std::pow(std::log(64.0), -2.0209) * std::pow(0.015625, 1.1037);
    MESSAGE("example1 msq " << msq << " vs " << ref);
    CHECK(msq > 0.5 * ref);
    CHECK(msq < 2.0 * ref);
}

TEST_CASE("example3 cost at delta = 2^-6 is within a factor 2 of its reference rate curve") {
    QuietLogs quiet;
    const double cost = estimate_cost(example3().problem, single_delta_run())[0].estimate.mean;
    const double ref = 1.7280 * std::pow(std::log(64.0), 0.7362) * std::pow(0.015625, -1.0248);
    MESSAGE("example3 cost " << cost << " vs " << ref);
    CHECK(cost > 0.5 * ref);
    CHECK(cost < 2.0 * ref);
}

TEST_CASE("occupation time") {
    QuietLogs quiet;
    const auto params = StepSizeParams::make(0.0625, 0.5, 1.0);
    CHECK(occupation_estimate(constant_problem(0.0, 0.0, 3.0), params, 0.1, 10, 1).mean == 0.0);
    const auto inside = occupation_estimate(constant_problem(0.0, 0.0, 0.05), params, 0.1, 10, 1);
    CHECK(inside.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inside.std_error == 0.0);
    CHECK_THROWS_AS((void)occupation_estimate(constant_problem(0.0, 0.0, 0.05), params, 0.25, 10, 1), InvalidInput);

    // crossing at unit speed: from x0 = -1 with drift 1 and Θ = {0}, time within 0.2 of Θ is 0.4
    SdeProblem p = constant_problem(1.0, 0.0, -1.0);
    p.horizon = 2.0;
    p.eps0 = 0.9;
    const auto fine = StepSizeParams::make(0.01, 0.9, 1.0);
    CHECK(occupation_estimate(p, fine, 0.2, 2, 1).mean == doctest::Approx(0.4).epsilon(0.02));

    const auto e = example1();
    const std::vector<double> eps{0.1, 0.05};
    const auto est = occupation_estimates(e.problem, StepSizeParams::make(0.015625, 0.4, 1.0), eps, 2000, 9);
    CHECK(est[0].mean > est[1].mean);
    CHECK(est[0].mean / est[1].mean > 1.4);
    CHECK(est[0].mean / est[1].mean < 2.6);
}

TEST_CASE("transform comparison") {
    QuietLogs quiet;
    SUBCASE("example2 statistic decreases with delta") {
        const auto e = example2();
        const auto t = ScalarTransform::with_default_radius(*e.drift1d, e.sigma1d, e.problem.eps0);
        const std::vector<double> deltas{0.125, 0.03125};
        const auto rows = transform_comparison(e.problem, t, deltas, 500, 3);
        CHECK(rows[1].estimate.mean < rows[0].estimate.mean);
    }
    SUBCASE("start far from the breakpoints over a short horizon") {
        const auto e = example2();
        auto problem = make_scalar_problem(*e.drift1d, e.sigma1d, 0.5, 0.05, 1.0, 1.0, 6.0);
        const auto t = ScalarTransform::with_default_radius(*e.drift1d, e.sigma1d, problem.eps0);
        const std::vector<double> deltas{0.125, 0.0625};
        for (const auto& r : transform_comparison(problem, t, deltas, 100, 3)) CHECK(r.estimate.mean < 1e-20);
    }
    SUBCASE("planar problems are rejected") {
        const auto e1 = example1();
        const auto t = ScalarTransform::with_default_radius(*e1.drift1d, e1.sigma1d, e1.problem.eps0);
        const std::vector<double> deltas{0.125};
        CHECK_THROWS_AS((void)transform_comparison(example3().problem, t, deltas, 10, 1), Unsupported);
    }
}
