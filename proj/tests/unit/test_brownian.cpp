#include "doctest.h"

#include "adaptem/brownian.h"
#include "adaptem/errors.h"
#include "adaptem/rng.h"

#include <cmath>
#include <vector>

using namespace adaptem;

namespace {
struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.var += (x - m.mean) * (x - m.mean);
    m.var /= static_cast<double>(v.size() - 1);
    return m;
}

// |sample variance - target| within k standard errors, for a Gaussian sample.
bool variance_close(double sample_var, double target, std::size_t n, double k = 3.0) {
    return std::abs(sample_var - target) <= k * target * std::sqrt(2.0 / static_cast<double>(n - 1));
}
} // namespace

TEST_CASE("query basics") {
    BrownianPath p(3, 9);
    CHECK(p.query(0.0) == std::vector{0.0, 0.0, 0.0});
    CHECK(p.query(-0.0) == std::vector{0.0, 0.0, 0.0});
    CHECK(p.knot_count() == 1);
    CHECK_THROWS_AS((void)p.query(-1e-300), InvalidInput);
    CHECK_THROWS_AS((void)p.query(std::nan("")), InvalidInput);
    CHECK_THROWS_AS((void)BrownianPath(0, 1), InvalidInput);
}

TEST_CASE("repeated queries are bit-identical and knots are immutable") {
    BrownianPath p(2, 77);
    const auto w1 = p.query(1.0);
    const auto w05 = p.query(0.5);
    const auto w025 = p.query(0.25);
    const auto w2 = p.query(2.0);
    CHECK(p.query(1.0) == w1);
    CHECK(p.query(0.5) == w05);
    (void)p.query(0.75);
    (void)p.query(0.1);
    CHECK(p.query(0.25) == w025);
    CHECK(p.query(2.0) == w2);
    const auto knots = p.knot_times();
    CHECK(knots == std::vector{0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 2.0});
    for (std::size_t i = 1; i < knots.size(); ++i) CHECK(knots[i - 1] < knots[i]);
    CHECK(std::vector(p.knot_value(1.0).begin(), p.knot_value(1.0).end()) == w1);
    CHECK_THROWS_AS((void)p.knot_value(0.3), InvalidInput);
}

TEST_CASE("same seed and query sequence give identical knots") {
    const std::vector<double> times{0.3, 1.0, 0.7, 0.01, 0.5, 3.0, 0.3};
    BrownianPath a(2, 5), b(2, 5), c(2, 6);
    for (double t : times) {
        (void)a.query(t);
        (void)b.query(t);
        (void)c.query(t);
    }
    CHECK(a.knot_times() == b.knot_times());
    bool any_diff = false;
    for (double t : a.knot_times()) {
        const auto va = a.knot_value(t), vb = b.knot_value(t), vc = c.knot_value(t);
        CHECK(std::vector(va.begin(), va.end()) == std::vector(vb.begin(), vb.end()));
        if (t > 0.0 && va[0] != vc[0]) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("increment") {
    BrownianPath p(2, 1);
    CHECK(p.increment(1.0, 1.0) == std::vector{0.0, 0.0});
    CHECK(p.knot_count() == 1);
    const auto inc = p.increment(0.0, 0.6);
    CHECK(inc == p.query(0.6));
    const auto d = p.increment(0.2, 0.6);
    const auto w02 = p.query(0.2);
    CHECK(d[0] == doctest::Approx(inc[0] - w02[0]).epsilon(1e-15));
    CHECK_THROWS_AS((void)p.increment(0.7, 0.6), InvalidInput);
}

TEST_CASE("marginal variance of W_1") {
    const std::size_t n = 100000;
    std::vector<double> a, b;
    a.reserve(n);
    b.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BrownianPath p(2, rng::stream_seed(101, i));
        const auto w = p.query(1.0);
        a.push_back(w[0]);
        b.push_back(w[1]);
    }
    for (const auto& v : {a, b}) {
        const auto m = moments(v);
        CHECK(std::abs(m.mean) <= 3.0 / std::sqrt(double(n)));
        CHECK(variance_close(m.var, 1.0, n));
    }
}

TEST_CASE("increment variance over [0.25, 0.75]") {
    const std::size_t n = 100000;
    std::vector<double> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BrownianPath p(1, rng::stream_seed(202, i));
        (void)p.query(1.0); // forces both ends to be bridged
        v.push_back(p.increment(0.25, 0.75)[0]);
    }
    const auto m = moments(v);
    CHECK(std::abs(m.mean) <= 3.0 * std::sqrt(0.5 / double(n)));
    CHECK(variance_close(m.var, 0.5, n));
}

TEST_CASE("bridge midpoint conditional law") {
    // Residual of W_{1/2} around w/2 must be N(0, 1/4) independent of w.
    const std::size_t n = 100000;
    std::vector<double> r;
    r.reserve(n);
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        BrownianPath p(1, rng::stream_seed(303, i));
        const double w1 = p.query(1.0)[0];
        const double res = p.query(0.5)[0] - 0.5 * w1;
        r.push_back(res);
        cov += res * w1;
    }
    const auto m = moments(r);
    CHECK(std::abs(m.mean) <= 3.0 * 0.5 / std::sqrt(double(n)));
    CHECK(variance_close(m.var, 0.25, n));
    CHECK(std::abs(cov / double(n)) <= 3.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("law does not depend on query order") {
    const std::size_t n = 100000;
    for (bool late_first : {false, true}) {
        double s11 = 0, s12 = 0, s22 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            BrownianPath p(1, rng::stream_seed(late_first ? 404 : 505, i));
            double a, b;
            if (late_first) {
                b = p.query(0.5)[0];
                a = p.query(0.25)[0];
            } else {
                a = p.query(0.25)[0];
                b = p.query(0.5)[0];
            }
            s11 += a * a;
            s12 += a * b;
            s22 += b * b;
        }
        const double dn = double(n);
        // Var of a product of jointly Gaussian variables: σ_aa σ_bb + σ_ab².
        CHECK(std::abs(s11 / dn - 0.25) <= 3.0 * std::sqrt(2 * 0.25 * 0.25 / dn));
        CHECK(std::abs(s12 / dn - 0.25) <= 3.0 * std::sqrt((0.25 * 0.5 + 0.25 * 0.25) / dn));
        CHECK(std::abs(s22 / dn - 0.5) <= 3.0 * std::sqrt(2 * 0.5 * 0.5 / dn));
    }
}
