#include "doctest.h"

#include "adaptem/config.h"
#include "adaptem/errors.h"
#include "adaptem/report_io.h"

#include <cmath>
#include <sstream>
#include <string>

using namespace adaptem;

TEST_CASE("delta parsing") {
    CHECK(parse_deltas("2^-2..2^-4") == std::vector{0.25, 0.125, 0.0625});
    CHECK(parse_deltas("2^-3,2^-5") == std::vector{0.125, 0.03125});
    CHECK(parse_deltas("0.25, 0.1") == std::vector{0.25, 0.1});
    CHECK_THROWS_AS((void)parse_deltas("2^-x"), InvalidInput);
    CHECK_THROWS_AS((void)parse_deltas("0.1..0.2"), InvalidInput);
    CHECK_THROWS_AS((void)parse_deltas(""), InvalidInput);
}

TEST_CASE("report csv and json schemas") {
    MonteCarloReport r;
    r.rows = {{0.25, 0.1, 0.01, 10.0, 0.5}, {0.125, 0.03, 0.002, 25.5, 0.7}};
    r.seed = 9;
    r.samples = 100;
    std::ostringstream csv;
    write_report_csv(csv, r);
    CHECK(csv.str() == "delta,msq,msq_stderr,cost_mean,cost_stderr\n"
                       "0.25,0.10000000000000001,0.01,10,0.5\n"
                       "0.125,0.029999999999999999,0.002,25.5,0.69999999999999996\n");

    std::istringstream in(csv.str());
    const auto cols = read_csv_columns(in, "cost_mean");
    CHECK(cols.deltas == std::vector{0.25, 0.125});
    CHECK(cols.values == std::vector{10.0, 25.5});
    std::istringstream in2(csv.str());
    CHECK_THROWS_AS((void)read_csv_columns(in2, "nope"), InvalidInput);

    std::ostringstream json;
    write_report_json(json, r, "example1");
    const auto s = json.str();
    for (const char* key : {"\"problem\"", "\"seed\"", "\"samples\"", "\"wall_seconds\"", "\"rows\"", "\"cost_stderr\""})
        CHECK(s.find(key) != std::string::npos);

    RegressionFit f;
    f.c1 = 2;
    f.c2 = -1;
    f.c3 = 1;
    std::ostringstream fj;
    write_fit_json(fj, f);
    const auto t = fj.str();
    std::size_t last = 0;
    for (const char* key : {"\"c1\"", "\"c2\"", "\"c3\"", "\"residual_logspace\"", "\"residual_rawspace\""}) {
        const auto pos = t.find(key);
        REQUIRE(pos != std::string::npos);
        CHECK(pos > last);
        last = pos;
    }
}

TEST_CASE("surface parsing") {
    const auto pts = parse_surface(R"({"type":"points1d","points":[0.0,1.0]})");
    CHECK(pts.dimension() == 1);
    CHECK(pts.reach() == 0.5);
    const auto c = parse_surface(R"({"type":"circle","center":[0,0],"radius":1.0})");
    CHECK(c.distance(std::vector{0.0, 0.0}) == 1.0);
    const auto h = parse_surface(R"({"type":"hyperplane","normal":[0,1],"offset":2.0})");
    CHECK(h.distance(std::vector{5.0, -1.0}) == 3.0);
    CHECK_THROWS_AS((void)parse_surface(R"({"type":"torus"})"), InvalidInput);
    CHECK_THROWS_AS((void)parse_surface("not json"), InvalidInput);
}

TEST_CASE("experiment config with a registry example") {
    const auto f = parse_experiment_config(
        R"({"example":"example2","deltas":"2^-2..2^-3","samples":50,"seed":4,"x0":[0.5],"occupation_epsilons":[0.1]})");
    CHECK(f.entry.name == "example2");
    CHECK(f.entry.problem.x0 == std::vector{0.5});
    CHECK(f.experiment.deltas == std::vector{0.25, 0.125});
    CHECK(f.experiment.samples == 50);
    CHECK(f.experiment.master_seed == 4);
    CHECK(f.occupation_epsilons == std::vector{0.1});
    CHECK_THROWS_AS((void)parse_experiment_config(R"({"example":"example9"})"), InvalidInput);
}

TEST_CASE("experiment config with an inline problem") {
    const auto f = parse_experiment_config(R"({
        "problem": {
            "dimension": 1,
            "surface": {"type": "points1d", "points": [0.0]},
            "drift": {"type": "piecewise_polynomial", "branches": [[1.0], [-1.0]]},
            "diffusion": {"type": "polynomial", "coeffs": [1.0, 0.0, 0.5]},
            "x0": [0.2], "horizon": 1.0, "eps0": 0.5, "sigma_sup": 1.2, "mu_sup": 1.0
        },
        "deltas": [0.25, 0.125], "samples": 10})");
    const auto& p = f.entry.problem;
    std::vector<double> out(1);
    p.drift_at(std::vector{-0.1}, out);
    CHECK(out[0] == 1.0);
    p.drift_at(std::vector{0.0}, out);
    CHECK(out[0] == -1.0);
    p.diffusion_at(std::vector{2.0}, out);
    CHECK(out[0] == 3.0);
    REQUIRE(f.entry.drift1d.has_value());
    CHECK(f.entry.drift1d->left_limits() == std::vector{1.0});

    const auto planar = parse_experiment_config(R"({
        "problem": {
            "dimension": 2,
            "surface": {"type": "hyperplane", "normal": [1, 0], "offset": 0},
            "drift": {"type": "linear", "matrix": [[0, 1], [-1, 0]], "offset": [0.5, 0]},
            "diffusion": {"type": "constant", "matrix": [[1, 0], [0, 1]]},
            "x0": [1, 1], "eps0": 1.0, "sigma_sup": 1.5, "mu_sup": 3.0
        }})");
    std::vector<double> v(2);
    planar.entry.problem.drift_at(std::vector{2.0, 3.0}, v);
    CHECK(v == std::vector{3.5, -2.0});

    CHECK_THROWS_AS((void)parse_experiment_config(R"({"problem":{"dimension":1}})"), InvalidInput);
}
