#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace ksos {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class DomainShape { Ball, Box };

// Search region: a Euclidean ball or an axis-aligned box, together with the
// inner-ball radius r used by the fill-distance machinery (every point of
// the region is within r of a ball fully contained in it; for a ball r = R
// is valid).
class Domain {
public:
    static Domain ball(const Vector& center, double radius, std::optional<double> inner_r = {});
    static Domain box(const Vector& lo, const Vector& hi, std::optional<double> inner_r = {});

    DomainShape shape() const { return shape_; }
    int dim() const { return d_; }
    double outer_radius() const { return R_; }
    double inner_radius() const { return r_; }
    double diameter() const { return 2.0 * R_; }

    const Vector& center() const { return center_; }  // ball only
    const Vector& lo() const { return lo_; }          // box only
    const Vector& hi() const { return hi_; }          // box only

    bool contains(const Vector& x) const;
    Vector project(const Vector& x) const;

    // Axis-aligned bounding box, as (lo, hi).
    std::pair<Vector, Vector> bounding_box() const;

private:
    Domain() = default;
    DomainShape shape_ = DomainShape::Box;
    int d_ = 0;
    double R_ = 0.0;
    double r_ = 0.0;
    Vector center_, lo_, hi_;
};

// Points stored row-wise in generation order; deterministic given the seed.
struct PointSet {
    Matrix points;  // n x d
    std::optional<std::uint64_t> seed;  // none for quasi-random sequences

    int size() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
    Vector point(int i) const { return points.row(i).transpose(); }
};

// n i.i.d. uniform draws from the domain. Ball sampling is exact
// (Gaussian direction times radius ~ R U^{1/d}), not rejection-based.
PointSet sample_uniform(const Domain& domain, int n, std::uint64_t seed);

// First n points of the Halton sequence (bases = first d primes, after
// `skip` burn-in), affinely mapped into the domain's bounding box. For
// ball domains the sequence is rejection-filtered to the ball, preserving
// order.
PointSet sample_halton(const Domain& domain, int n, int skip = 0);

int halton_max_dim();

// Radical inverse of index i (1-based) in the given base.
double radical_inverse(std::uint64_t index, int base);

// Monte-Carlo estimate of the fill distance sup_y min_i ||y - x_i||:
// a lower bound that converges from below as probes grows.
double fill_distance_empirical(const PointSet& points, const Domain& domain,
                               int probes, std::uint64_t seed);

struct FillDistanceBound {
    double value;          // the high-probability bound on h
    bool n_above_threshold;  // whether n meets the validity threshold
};

// High-probability fill-distance bound for n uniform samples:
//   h <= 11 R n^{-1/d} (log(n/delta) + d log(2R/r))^{1/d},
// valid (w.p. >= 1-delta) once n >= 2 (6R/r)^d (log(2/delta) + 2d log(4R/r)).
FillDistanceBound fill_distance_bound(int n, const Domain& domain, double delta);

}  // namespace ksos
