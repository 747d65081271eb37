#include "ksos/gram.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

namespace ksos {

const std::vector<double> kDefaultJitterSchedule = {0.0, 1e-12, 1e-10, 1e-8, 1e-6};

Matrix gram_matrix(const KernelSpec& spec, const PointSet& points) {
    const int n = points.size();
    if (n < 1) throw std::invalid_argument("gram_matrix: empty point set");
    Matrix K(n, n);
    for (int i = 0; i < n; ++i) {
        K(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            K(i, j) = kernel_eval(spec, points.point(i), points.point(j));
            K(j, i) = K(i, j);
        }
    }
    return K;
}

GramFactor cholesky_jitter(const Matrix& K, const std::vector<double>& schedule) {
    const int n = static_cast<int>(K.rows());
    if (K.cols() != n || n < 1) throw std::invalid_argument("cholesky_jitter: K must be square");
    for (double eta : schedule) {
        Matrix A = K;
        A.diagonal().array() += eta;
        Eigen::LLT<Matrix> llt(A);
        if (llt.info() == Eigen::Success) {
            Matrix R = llt.matrixU();
            if ((R.diagonal().array() > 0.0).all())
                return GramFactor{K, std::move(R), eta};
        }
    }
    throw std::runtime_error(
        "cholesky_jitter: kernel matrix numerically rank-deficient even with the largest "
        "jitter; deduplicate or perturb coincident points");
}

GramFactor make_gram(const KernelSpec& spec, const PointSet& points,
                     const std::vector<double>& schedule) {
    return cholesky_jitter(gram_matrix(spec, points), schedule);
}

Vector cross_vector(const KernelSpec& spec, const PointSet& points, const Vector& x) {
    if (x.size() != spec.d) throw std::invalid_argument("cross_vector: dimension mismatch");
    const int n = points.size();
    Vector q(n);
    for (int i = 0; i < n; ++i) q[i] = kernel_eval(spec, x, points.point(i));
    return q;
}

}  // namespace ksos
