#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksos/gram.hpp"
#include "ksos/kernels.hpp"
#include "ksos/rng.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace ksos;

TEST_CASE("spec validation") {
    CHECK_THROWS(KernelSpec::make(2, 1.0));   // s <= d/2
    CHECK_THROWS(KernelSpec::make(1, 1.0, 0.0));
    KernelSpec k = KernelSpec::make(2, 2.5, 0.7);
    CHECK(k.nu() == doctest::Approx(1.5));
}

TEST_CASE("k(x,x) = 1") {
    Rng rng(5);
    for (double s : {1.0, 2.0, 3.5}) {
        KernelSpec k = KernelSpec::make(1, s, 0.5);
        for (int t = 0; t < 5; ++t) {
            Vector x(1);
            x << rng.uniform(-2.0, 2.0);
            CHECK(kernel_eval(k, x, x) == 1.0);
        }
    }
}

TEST_CASE("half-integer closed forms at reference radii") {
    Vector x = Vector::Zero(1), y = Vector::Zero(1);
    y << 1.0;
    KernelSpec exp_k = KernelSpec::make(1, 1.0);  // nu = 1/2
    CHECK(kernel_eval(exp_k, x, y) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    y << 2.0;
    KernelSpec m32 = KernelSpec::make(1, 2.0);  // nu = 3/2
    CHECK(kernel_eval(m32, x, y) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));

    KernelSpec m52 = KernelSpec::make(1, 3.0);  // nu = 5/2
    double rho = 2.0;
    CHECK(kernel_profile(m52, rho) ==
          doctest::Approx((1.0 + rho + rho * rho / 3.0) * std::exp(-rho)).epsilon(1e-12));
    KernelSpec m72 = KernelSpec::make(1, 4.0);  // nu = 7/2
    CHECK(kernel_profile(m72, rho) ==
          doctest::Approx((1.0 + rho + 0.4 * rho * rho + rho * rho * rho / 15.0) *
                          std::exp(-rho))
              .epsilon(1e-12));
}

TEST_CASE("sigma rescales the argument") {
    KernelSpec k = KernelSpec::make(1, 1.0, 2.0);
    Vector x = Vector::Zero(1), y = Vector::Zero(1);
    y << 1.0;
    CHECK(kernel_eval(k, x, y) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("high-precision oracle table: rel error <= 1e-10") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/matern_oracle.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        std::string f;
        std::getline(is, f, ',');
        double nu = std::stod(f);
        std::getline(is, f, ',');
        double rho = std::stod(f);
        std::getline(is, f, ',');
        double expected = std::stod(f);
        KernelSpec k = KernelSpec::make(1, nu + 0.5);
        CHECK(std::abs(kernel_profile(k, rho) - expected) <= 1e-10 * std::abs(expected));
        ++rows;
    }
    CHECK(rows == 300);
}

#if defined(__GLIBCXX__) || defined(_GLIBCXX_RELEASE)
TEST_CASE("closed forms agree with the Bessel backend") {
    // perturb nu off the half-integer grid by eps and compare continuity;
    // also check exact half-integers through the generic path by calling
    // cyl_bessel_k directly
    Rng rng(17);
    for (double nu : {0.5, 1.5, 2.5, 3.5}) {
        KernelSpec k = KernelSpec::make(1, nu + 0.5);
        for (int t = 0; t < 25; ++t) {
            double rho = rng.uniform(0.05, 6.0);
            double generic = std::exp((1.0 - nu) * std::log(2.0) - std::lgamma(nu) +
                                      nu * std::log(rho)) *
                             std::cyl_bessel_k(nu, rho);
            CHECK(std::abs(kernel_profile(k, rho) - generic) <= 1e-10 * generic);
        }
    }
}

TEST_CASE("general (non-half-integer) orders are supported") {
    KernelSpec k = KernelSpec::make(1, 1.7);
    CHECK(kernel_profile(k, 1.0) > 0.0);
    CHECK(kernel_profile(k, 0.0) == 1.0);
}
#endif

TEST_CASE("symmetry, range, stationarity") {
    Rng rng(23);
    KernelSpec k = KernelSpec::make(3, 3.0, 0.8);
    for (int t = 0; t < 20; ++t) {
        Vector x(3), y(3), shift(3);
        for (int j = 0; j < 3; ++j) {
            x[j] = rng.uniform(-1.0, 1.0);
            y[j] = rng.uniform(-1.0, 1.0);
            shift[j] = rng.uniform(-2.0, 2.0);
        }
        double v = kernel_eval(k, x, y);
        CHECK(kernel_eval(k, y, x) == v);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        if ((x - y).norm() > 0) CHECK(v < 1.0);
        CHECK(kernel_eval(k, x + shift, y + shift) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("positive definiteness on random points") {
    Rng rng(31);
    KernelSpec k = KernelSpec::make(2, 2.0, 0.5);
    Matrix pts(10, 2);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 2; ++j) pts(i, j) = rng.uniform(-1.0, 1.0);
    Matrix K = gram_matrix(k, PointSet{pts, 0});
    Eigen::SelfAdjointEigenSolver<Matrix> es(K);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("trace constants: M and D_m reference values") {
    double M = algebra_constant(KernelSpec::make(2, 2.0));
    CHECK(M == doctest::Approx(2.0 * M_PI * std::pow(2.0, 2.5)).epsilon(1e-12));
    CHECK(M == doctest::Approx(35.543).epsilon(1e-3));

    KernelConstants c1 = trace_constants(KernelSpec::make(1, 2.5), 1);
    double expected = std::pow(2.0 * M_PI, 0.25) *
                      std::sqrt(std::tgamma(1.5) * std::tgamma(1.0) /
                                (std::tgamma(2.0) * std::tgamma(0.5)));
    CHECK(c1.D_m == doctest::Approx(expected).epsilon(1e-12));
    CHECK(c1.D_m == doctest::Approx(1.119).epsilon(1e-3));
    CHECK(c1.M >= 1.0);
    CHECK(c1.D_m >= 1.0);
}

TEST_CASE("trace constants: sigma scaling of D_m") {
    KernelConstants unit = trace_constants(KernelSpec::make(1, 2.5, 1.0), 1);
    KernelConstants half = trace_constants(KernelSpec::make(1, 2.5, 0.5), 1);
    CHECK(half.D_m == doctest::Approx(2.0 * unit.D_m).epsilon(1e-12));
}

TEST_CASE("trace constants: m >= s - d/2 rejected") {
    CHECK_THROWS(trace_constants(KernelSpec::make(1, 2.5), 2));  // m = nu exactly
    CHECK_THROWS(trace_constants(KernelSpec::make(1, 1.0), 1));  // exponential kernel
}

TEST_CASE("C0 values") {
    CHECK(c0_constant(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c0_constant(2, 1) == doctest::Approx(486.0).epsilon(1e-12));
    CHECK(c0_constant(1, 4) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("kernel evaluation counter") {
    reset_kernel_eval_count();
    KernelSpec k = KernelSpec::make(1, 1.0);
    Vector x = Vector::Zero(1), y = Vector::Ones(1);
    kernel_eval(k, x, y);
    kernel_eval(k, x, y);
    CHECK(kernel_eval_count() == 2);
}
