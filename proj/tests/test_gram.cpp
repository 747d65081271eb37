#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksos/gram.hpp"
#include "ksos/rng.hpp"

#include <cmath>

using namespace ksos;

namespace {

PointSet random_points(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix pts(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) pts(i, j) = rng.uniform(-1.0, 1.0);
    return PointSet{std::move(pts), seed};
}

}  // namespace

TEST_CASE("n=1: K=[1], R=[1], no jitter") {
    KernelSpec k = KernelSpec::make(1, 1.0);
    GramFactor g = make_gram(k, PointSet{Matrix::Zero(1, 1), 0});
    CHECK(g.K(0, 0) == 1.0);
    CHECK(g.R(0, 0) == 1.0);
    CHECK(g.jitter == 0.0);
}

TEST_CASE("two points at distance 1, exponential kernel") {
    KernelSpec k = KernelSpec::make(1, 1.0);
    Matrix pts(2, 1);
    pts << 0.0, 1.0;
    Matrix K = gram_matrix(k, PointSet{pts, 0});
    CHECK(K(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(K == K.transpose().eval());
}

TEST_CASE("duplicated point forces jitter and still factors") {
    KernelSpec k = KernelSpec::make(2, 2.0);
    Matrix pts(3, 2);
    pts << 0.1, 0.2, 0.1, 0.2, -0.5, 0.4;  // rows 0 and 1 identical
    GramFactor g = make_gram(k, PointSet{pts, 0});
    CHECK(g.jitter > 0.0);
    CHECK((g.R.diagonal().array() > 0.0).all());
}

TEST_CASE("all jitters failing raises a rank error") {
    Matrix K = Matrix::Constant(2, 2, 1.0);
    K(1, 1) = -1.0;  // indefinite beyond any scheduled jitter
    CHECK_THROWS(cholesky_jitter(K));
}

TEST_CASE("reconstruction: R^T R = K + eta I to 1e-8 relative") {
    KernelSpec k = KernelSpec::make(2, 2.5, 0.6);
    for (std::uint64_t seed : {1, 2, 3}) {
        GramFactor g = make_gram(k, random_points(20, 2, seed));
        Matrix recon = g.R.transpose() * g.R;
        Matrix target = g.K;
        target.diagonal().array() += g.jitter;
        CHECK((recon - target).norm() / g.K.norm() <= 1e-8);
        // feature inner products reproduce K
        for (int i = 0; i < 20; ++i)
            for (int j = i; j < 20; ++j) {
                double expected = g.K(i, j) + (i == j ? g.jitter : 0.0);
                CHECK(g.feature(i).dot(g.feature(j)) == doctest::Approx(expected).epsilon(1e-8));
            }
    }
}

TEST_CASE("assembly cost is O(n^2) kernel calls") {
    KernelSpec k = KernelSpec::make(2, 2.0);
    PointSet pts = random_points(30, 2, 4);
    reset_kernel_eval_count();
    gram_matrix(k, pts);
    CHECK(kernel_eval_count() == 30 * 29 / 2);  // upper triangle only
}

TEST_CASE("cross_vector") {
    KernelSpec k = KernelSpec::make(2, 2.0);
    PointSet pts = random_points(8, 2, 5);
    Matrix K = gram_matrix(k, pts);
    Vector q = cross_vector(k, pts, pts.point(3));
    CHECK(q[3] == 1.0);
    CHECK((q.array() > 0.0).all());
    CHECK((q.array() <= 1.0).all());
    CHECK((q - K.col(3)).norm() == 0.0);
    CHECK_THROWS(cross_vector(k, pts, Vector::Zero(3)));
}
