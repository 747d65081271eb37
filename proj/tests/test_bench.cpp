#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksos/bench.hpp"
#include "ksos/rng.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace ksos;

namespace {

TestFunctionSpec bumps_spec(const std::string& kind, int d = 2) {
    TestFunctionSpec spec;
    spec.kind = kind;
    spec.bumps = default_bumps_2d();
    spec.d = d;
    return spec;
}

}  // namespace

TEST_CASE("normalization: min 0 and range 1 on the build grid") {
    TestFunction fn = build_test_function(bumps_spec("gaussian_bumps_2d"));
    const int g = 401;
    double vmin = 1e300, vmax = -1e300;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Vector x(2);
            x << -1.0 + 2.0 * i / (g - 1), -1.0 + 2.0 * j / (g - 1);
            double v = fn.eval(x);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    CHECK(std::abs(vmin) <= 1e-3);
    CHECK(vmax >= 1.0 - 1e-2);
    CHECK(vmax <= 1.0 + 1e-3);
    CHECK(fn.eval(fn.minimizer) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single bump: minimizer at the center") {
    TestFunctionSpec spec;
    spec.kind = "gaussian_bumps_2d";
    GaussianBump b;
    b.center = Vector(2);
    b.center << 0.3, -0.4;
    b.width = 0.3;
    b.weight = -1.0;
    spec.bumps = {b};
    TestFunction fn = build_test_function(spec);
    CHECK((fn.minimizer - b.center).norm() <= 2.0 / 400 + 1e-12);  // grid resolution
    CHECK(fn.eval(fn.minimizer) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("separable lift: sum-of-base oracle at 1000 random points") {
    TestFunction base = build_test_function(bumps_spec("gaussian_bumps_2d"));
    TestFunction lift = build_test_function(bumps_spec("separable_lift", 4));
    CHECK(lift.d == 4);
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        Vector x(4);
        for (int j = 0; j < 4; ++j) x[j] = rng.uniform(-1.0, 1.0);
        // lift min/range are 2x the block's, so the normalized lift is the
        // mean of the two normalized blocks
        double expected = 0.5 * (base.eval(x.head(2)) + base.eval(x.tail(2)));
        CHECK(lift.eval(x) == doctest::Approx(expected).epsilon(1e-12));
    }
    // minimizer replicates across blocks
    CHECK(lift.minimizer.head(2) == base.minimizer);
    CHECK(lift.minimizer.tail(2) == base.minimizer);
}

TEST_CASE("cosine amplitude 0 equals the base; odd lift dimension rejected") {
    TestFunctionSpec pert = bumps_spec("cosine_perturbed");
    pert.cosine_amplitude = 0.0;
    pert.cosine_frequency = 30.0;
    TestFunction base = build_test_function(bumps_spec("gaussian_bumps_2d"));
    TestFunction p = build_test_function(pert);
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        Vector x(2);
        x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
        CHECK(p.eval(x) == base.eval(x));
    }
    CHECK_THROWS(build_test_function(bumps_spec("separable_lift", 3)));
    CHECK_THROWS(build_test_function(bumps_spec("no_such_kind")));
}

TEST_CASE("cross_validate: single cell, counted extra evaluations, argmin") {
    TestFunction fn = build_test_function(bumps_spec("gaussian_bumps_2d"));
    Domain dom = Domain::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
    SolverConfig cfg;
    long evals = 0;
    Evaluator counted = [&](const Vector& x) {
        ++evals;
        return fn.eval(x);
    };
    auto single = cross_validate(counted, dom, 2.0, {1e-4}, {0.5}, 60, 1, cfg);
    CHECK(single.best_lambda == 1e-4);
    CHECK(single.best_sigma == 0.5);
    CHECK(single.table.size() == 1);
    CHECK(single.extra_evaluations == 1);

    auto grid = cross_validate(fn.eval, dom, 2.0, {1e-5, 1e-3}, {0.3, 0.6, 1.0}, 60, 1, cfg);
    CHECK(grid.table.size() == 6);
    CHECK(grid.extra_evaluations == 6);
    double best = 1e300;
    for (const auto& cell : grid.table)
        if (cell.ok) best = std::min(best, cell.f_at_z);
    bool found = false;
    for (const auto& cell : grid.table)
        if (cell.ok && cell.lambda == grid.best_lambda && cell.sigma == grid.best_sigma) {
            CHECK(cell.f_at_z == best);
            found = true;
        }
    CHECK(found);
    CHECK_THROWS(cross_validate(fn.eval, dom, 2.0, {}, {1.0}, 10, 1, cfg));
}

TEST_CASE("CSV round trip") {
    RunRecord r;
    r.method = "ksos";
    r.n = 300;
    r.seed = 17;
    r.lambda = 1e-6;
    r.sigma = 0.45;
    r.nu = 0.5;
    r.c_hat = -0.0123456789012345;
    r.f_at_z = 0.001;
    r.gap_to_true_min = 0.001;
    r.cert_bound = 0.2;
    r.iterations = 42;
    r.wall_ms = 12.5;
    RunRecord back = from_csv_row(to_csv_row(r));
    CHECK(back.method == r.method);
    CHECK(back.n == r.n);
    CHECK(back.seed == r.seed);
    CHECK(back.lambda == r.lambda);
    CHECK(back.sigma == r.sigma);
    CHECK(back.nu == r.nu);
    CHECK(back.c_hat == r.c_hat);
    CHECK(back.f_at_z == r.f_at_z);
    CHECK(back.gap_to_true_min == r.gap_to_true_min);
    CHECK(back.cert_bound == r.cert_bound);
    CHECK(back.iterations == r.iterations);
    CHECK(back.wall_ms == r.wall_ms);
    CHECK_THROWS(from_csv_row("ksos,1,2"));
}

TEST_CASE("config parsing from JSON") {
    std::string path = "test_bench_config.json";
    {
        std::ofstream out(path);
        out << R"({
  "schema_version": 1,
  "function": {"kind": "gaussian_bumps_2d"},
  "methods": ["random_search", "random_gd"],
  "n_grid": [50, 100, 150],
  "seeds": [0, 1, 2, 3],
  "sampler": "uniform",
  "sigma": 0.5,
  "lambda_grid": [1e-5],
  "out_dir": "bench_out",
  "solver": {"eps_barrier": 1e-3, "max_iters": 100}
})";
    }
    BenchConfig cfg = load_config(path);
    CHECK(cfg.methods.size() == 2);
    CHECK(cfg.n_grid.size() == 3);
    CHECK(cfg.seeds.size() == 4);
    CHECK(cfg.sampler == "uniform");
    CHECK(cfg.sigma == 0.5);
    CHECK(cfg.solver.max_iters == 100);
    CHECK(cfg.function.bumps.size() == 3);  // defaults
    std::remove(path.c_str());
    CHECK_THROWS(load_config("no_such_config.json"));
}

TEST_CASE("run_experiment: cardinality, schema, determinism") {
    BenchConfig cfg;
    cfg.function = bumps_spec("gaussian_bumps_2d");
    cfg.methods = {"random_search", "random_gd"};
    cfg.n_grid = {50, 100, 150};
    cfg.seeds = {0, 1, 2, 3};
    cfg.sampler = "uniform";
    cfg.gd_steps = 10;  // keep one restart inside the n=50 budget
    cfg.out_dir = "bench_test_out";
    auto records = run_experiment(cfg);
    CHECK(records.size() == 24);

    std::ifstream csv(cfg.out_dir + "/results.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == csv_header());
    int rows = 0;
    while (std::getline(csv, line)) {
        RunRecord r = from_csv_row(line);
        CHECK((r.method == "random_search" || r.method == "random_gd"));
        ++rows;
    }
    CHECK(rows == 24);

    auto again = run_experiment(cfg);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(again[i].method == records[i].method);
        CHECK(again[i].seed == records[i].seed);
        CHECK(again[i].f_at_z == records[i].f_at_z);  // identical modulo timing
        CHECK(again[i].gap_to_true_min == records[i].gap_to_true_min);
    }
    std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("run_experiment: ksos path with plot output") {
    BenchConfig cfg;
    cfg.function = bumps_spec("gaussian_bumps_2d");
    cfg.methods = {"ksos", "random_search"};
    cfg.n_grid = {40, 80};
    cfg.seeds = {0};
    cfg.sampler = "halton";
    cfg.sigma = 0.5;
    cfg.lambda_grid = {1e-5};
    cfg.out_dir = "bench_test_out2";
    cfg.write_plot = true;
    auto records = run_experiment(cfg);
    CHECK(records.size() == 4);
    for (const auto& r : records)
        if (r.method == "ksos") {
            CHECK(r.iterations > 0);
            CHECK(std::isfinite(r.c_hat));
            CHECK(r.f_at_z >= -1e-3);
        }
    CHECK(std::filesystem::exists(cfg.out_dir + "/error_vs_n.svg"));
    std::filesystem::remove_all(cfg.out_dir);
}
