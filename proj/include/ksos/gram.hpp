#pragma once

#include "ksos/geometry.hpp"
#include "ksos/kernels.hpp"

#include <vector>

namespace ksos {

// Kernel matrix together with its upper-triangular Cholesky factor,
// R^T R = K + jitter * I. The columns of R are the feature vectors the
// solver works with.
struct GramFactor {
    Matrix K;       // n x n, symmetric, unit diagonal
    Matrix R;       // n x n, upper triangular, positive diagonal
    double jitter;  // ridge eta added to make the factorization succeed

    int size() const { return static_cast<int>(K.rows()); }

    Vector feature(int i) const { return R.col(i); }
};

extern const std::vector<double> kDefaultJitterSchedule;

// K_ij = k(x_i, x_j); upper triangle computed, mirrored by symmetry.
Matrix gram_matrix(const KernelSpec& spec, const PointSet& points);

// Attempts the Cholesky factorization with ridge values from the schedule
// (in order) until one succeeds; records the ridge used.
GramFactor cholesky_jitter(const Matrix& K,
                           const std::vector<double>& schedule = kDefaultJitterSchedule);

GramFactor make_gram(const KernelSpec& spec, const PointSet& points,
                     const std::vector<double>& schedule = kDefaultJitterSchedule);

// q(x)_i = k(x, x_i).
Vector cross_vector(const KernelSpec& spec, const PointSet& points, const Vector& x);

}  // namespace ksos
