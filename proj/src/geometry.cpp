#include "ksos/geometry.hpp"
#include "ksos/rng.hpp"

#include <array>
#include <cmath>

namespace ksos {

Domain Domain::ball(const Vector& center, double radius, std::optional<double> inner_r) {
    if (radius <= 0.0) throw std::invalid_argument("Domain::ball: radius must be positive");
    if (center.size() < 1) throw std::invalid_argument("Domain::ball: empty center");
    Domain dom;
    dom.shape_ = DomainShape::Ball;
    dom.d_ = static_cast<int>(center.size());
    dom.center_ = center;
    dom.R_ = radius;
    dom.r_ = inner_r.value_or(radius);
    if (dom.r_ <= 0.0 || dom.r_ > dom.R_)
        throw std::invalid_argument("Domain::ball: inner radius must satisfy 0 < r <= R");
    return dom;
}

Domain Domain::box(const Vector& lo, const Vector& hi, std::optional<double> inner_r) {
    if (lo.size() != hi.size() || lo.size() < 1)
        throw std::invalid_argument("Domain::box: lo/hi size mismatch");
    if (!((lo.array() < hi.array()).all()))
        throw std::invalid_argument("Domain::box: need lo < hi componentwise");
    Domain dom;
    dom.shape_ = DomainShape::Box;
    dom.d_ = static_cast<int>(lo.size());
    dom.lo_ = lo;
    dom.hi_ = hi;
    dom.center_ = 0.5 * (lo + hi);
    dom.R_ = 0.5 * (hi - lo).norm();
    // largest inscribed ball of the box
    dom.r_ = inner_r.value_or(0.5 * (hi - lo).minCoeff());
    if (dom.r_ <= 0.0 || dom.r_ > dom.R_)
        throw std::invalid_argument("Domain::box: inner radius must satisfy 0 < r <= R");
    return dom;
}

bool Domain::contains(const Vector& x) const {
    if (x.size() != d_) throw std::invalid_argument("Domain::contains: dimension mismatch");
    constexpr double slack = 1e-12;
    if (shape_ == DomainShape::Ball)
        return (x - center_).norm() <= R_ * (1.0 + slack) + slack;
    return (x.array() >= lo_.array() - slack).all() && (x.array() <= hi_.array() + slack).all();
}

Vector Domain::project(const Vector& x) const {
    if (x.size() != d_) throw std::invalid_argument("Domain::project: dimension mismatch");
    if (shape_ == DomainShape::Ball) {
        Vector v = x - center_;
        double nrm = v.norm();
        if (nrm <= R_) return x;
        return center_ + v * (R_ / nrm);
    }
    return x.array().max(lo_.array()).min(hi_.array());
}

std::pair<Vector, Vector> Domain::bounding_box() const {
    if (shape_ == DomainShape::Box) return {lo_, hi_};
    return {center_.array() - R_, center_.array() + R_};
}

PointSet sample_uniform(const Domain& domain, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_uniform: n must be >= 1");
    const int d = domain.dim();
    Rng rng(seed);
    Matrix pts(n, d);
    if (domain.shape() == DomainShape::Box) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j)
                pts(i, j) = rng.uniform(domain.lo()[j], domain.hi()[j]);
    } else {
        for (int i = 0; i < n; ++i) {
            Vector dir(d);
            double nrm = 0.0;
            do {
                for (int j = 0; j < d; ++j) dir[j] = rng.normal();
                nrm = dir.norm();
            } while (nrm == 0.0);
            double radius = domain.outer_radius() * std::pow(rng.uniform01(), 1.0 / d);
            pts.row(i) = (domain.center() + dir * (radius / nrm)).transpose();
        }
    }
    return PointSet{std::move(pts), seed};
}

namespace {
constexpr std::array<int, 32> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131};
}

int halton_max_dim() { return static_cast<int>(kPrimes.size()); }

double radical_inverse(std::uint64_t index, int base) {
    double q = 0.0;
    double bk = 1.0 / base;
    while (index > 0) {
        q += static_cast<double>(index % base) * bk;
        index /= base;
        bk /= base;
    }
    return q;
}

PointSet sample_halton(const Domain& domain, int n, int skip) {
    if (n < 1) throw std::invalid_argument("sample_halton: n must be >= 1");
    if (skip < 0) throw std::invalid_argument("sample_halton: skip must be >= 0");
    const int d = domain.dim();
    if (d > halton_max_dim())
        throw std::invalid_argument("sample_halton: dimension exceeds supported prime bases");
    auto [lo, hi] = domain.bounding_box();
    Matrix pts(n, d);
    int accepted = 0;
    std::uint64_t index = static_cast<std::uint64_t>(skip) + 1;  // sequence is 1-based
    while (accepted < n) {
        Vector x(d);
        for (int j = 0; j < d; ++j) {
            double u = radical_inverse(index, kPrimes[static_cast<std::size_t>(j)]);
            x[j] = lo[j] + (hi[j] - lo[j]) * u;
        }
        ++index;
        if (domain.shape() == DomainShape::Ball && !domain.contains(x)) continue;
        pts.row(accepted++) = x.transpose();
    }
    return PointSet{std::move(pts), std::nullopt};
}

double fill_distance_empirical(const PointSet& points, const Domain& domain,
                               int probes, std::uint64_t seed) {
    if (points.size() < 1) throw std::invalid_argument("fill_distance_empirical: empty point set");
    if (probes < 1) throw std::invalid_argument("fill_distance_empirical: probes must be >= 1");
    PointSet ys = sample_uniform(domain, probes, seed);
    double h = 0.0;
    for (int p = 0; p < probes; ++p) {
        double dmin = (points.points.rowwise() - ys.points.row(p)).rowwise().norm().minCoeff();
        h = std::max(h, dmin);
    }
    return h;
}

FillDistanceBound fill_distance_bound(int n, const Domain& domain, double delta) {
    if (n < 1) throw std::invalid_argument("fill_distance_bound: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("fill_distance_bound: delta must lie in (0,1)");
    const double d = domain.dim();
    const double R = domain.outer_radius();
    const double r = domain.inner_radius();
    const double value =
        11.0 * R * std::pow(n, -1.0 / d) *
        std::pow(std::log(n / delta) + d * std::log(2.0 * R / r), 1.0 / d);
    const double threshold =
        2.0 * std::pow(6.0 * R / r, d) *
        (std::log(2.0 / delta) + 2.0 * d * std::log(4.0 * R / r));
    return FillDistanceBound{value, static_cast<double>(n) >= threshold};
}

}  // namespace ksos
