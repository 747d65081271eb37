#include "ksos/sos_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ksos {

void SolverConfig::validate() const {
    if (!(eps_barrier > 0.0)) throw std::invalid_argument("SolverConfig: eps_barrier must be > 0");
    if (lambda < 0.0) throw std::invalid_argument("SolverConfig: lambda must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (!(kappa > 0.0)) throw std::invalid_argument("SolverConfig: kappa must be > 0");
    if (nu < 0.0) throw std::invalid_argument("SolverConfig: nu must be >= 0");
}

SampleSet make_sample_set(const Domain& domain, const KernelSpec& kernel,
                          const PointSet& points, const Vector& values) {
    if (values.size() != points.size())
        throw std::invalid_argument("make_sample_set: values/points size mismatch");
    if (points.dim() != domain.dim() || kernel.d != domain.dim())
        throw std::invalid_argument("make_sample_set: dimension mismatch");
    return SampleSet{domain, kernel, points, values, make_gram(kernel, points)};
}

SampleSet make_sample_set(const Domain& domain, const KernelSpec& kernel,
                          const PointSet& points, const Evaluator& f) {
    Vector values(points.size());
    for (int i = 0; i < points.size(); ++i) values[i] = f(points.point(i));
    return make_sample_set(domain, kernel, points, values);
}

namespace {

Matrix barrier_matrix(const Vector& alpha, const SampleSet& data, const SolverConfig& cfg) {
    const Matrix& R = data.gram.R;
    Matrix G = R * alpha.asDiagonal() * R.transpose();
    G.diagonal().array() += cfg.lambda;
    return G;
}

}  // namespace

DualState::DualState(const Vector& alpha, const SampleSet& data, const SolverConfig& cfg)
    : alpha_(alpha) {
    const int n = data.size();
    if (alpha.size() != n) throw std::invalid_argument("DualState: alpha size mismatch");
    Matrix G = barrier_matrix(alpha, data, cfg);
    llt_.compute(G);
    if (llt_.info() != Eigen::Success || !(llt_.matrixLLT().diagonal().array() > 0.0).all())
        throw std::domain_error("DualState: barrier matrix not positive definite");
    log_det_ = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
    // W = R^T G^{-1} R = S^T S with S = L^{-1} R
    Matrix S = llt_.matrixL().solve(data.gram.R);
    W_.noalias() = S.transpose() * S;
}

bool DualState::in_domain(const Vector& alpha, const SampleSet& data, const SolverConfig& cfg) {
    Eigen::LLT<Matrix> llt(barrier_matrix(alpha, data, cfg));
    return llt.info() == Eigen::Success && (llt.matrixLLT().diagonal().array() > 0.0).all();
}

double dual_objective(const DualState& state, const SampleSet& data, const SolverConfig& cfg) {
    const double n = data.size();
    const double eps = cfg.eps_barrier;
    double value = state.alpha().dot(data.values) - (eps / n) * state.log_det() +
                   (eps / n) * std::log(eps / n) - eps;
    if (cfg.nu > 0.0) {
        Vector z = data.points.points.transpose() * state.alpha();
        double sq = 0.0;
        for (int i = 0; i < data.size(); ++i)
            sq += state.alpha()[i] * data.points.points.row(i).squaredNorm();
        value += 0.5 * cfg.nu * (z.squaredNorm() - sq);
    }
    return value;
}

Vector dual_gradient(const DualState& state, const SampleSet& data, const SolverConfig& cfg) {
    const double n = data.size();
    Vector grad = data.values - (cfg.eps_barrier / n) * state.witness().diagonal();
    if (cfg.nu > 0.0) {
        Vector z = data.points.points.transpose() * state.alpha();
        for (int i = 0; i < data.size(); ++i) {
            double xi_sq = data.points.points.row(i).squaredNorm();
            grad[i] += 0.5 * cfg.nu * (2.0 * data.points.points.row(i).dot(z) - xi_sq);
        }
    }
    return grad;
}

Matrix dual_hessian(const DualState& state, const SampleSet& data, const SolverConfig& cfg) {
    const double n = data.size();
    Matrix H = (cfg.eps_barrier / n) * state.witness().cwiseProduct(state.witness());
    if (cfg.nu > 0.0)
        H.noalias() += cfg.nu * data.points.points * data.points.points.transpose();
    return H;
}

NewtonStep newton_step(const DualState& state, const SampleSet& data, const SolverConfig& cfg) {
    const int n = data.size();
    Vector grad = dual_gradient(state, data, cfg);
    Matrix H = dual_hessian(state, data, cfg);
    Vector ones = Vector::Ones(n);

    Eigen::LLT<Matrix> llt(H);
    if (llt.info() != Eigen::Success) {
        // the Hessian can saturate numerically; add a trace-scaled ridge
        double ridge = 1e-12 * H.trace() / n;
        for (int attempt = 0; attempt < 8 && llt.info() != Eigen::Success; ++attempt) {
            Matrix Hr = H;
            Hr.diagonal().array() += ridge;
            llt.compute(Hr);
            ridge *= 100.0;
        }
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("newton_step: Hessian factorization failed after regularization");
    }
    Vector a = llt.solve(grad);
    Vector b = llt.solve(ones);
    Vector delta = a - (ones.dot(a) / ones.dot(b)) * b;
    double dec_sq = delta.dot(H * delta);
    return NewtonStep{std::move(delta), std::sqrt(std::max(0.0, dec_sq))};
}

SolveOutput solve(const SampleSet& data, const SolverConfig& cfg) {
    cfg.validate();
    const int n = data.size();
    const double eps = cfg.eps_barrier;
    const double scale = std::sqrt(n / eps);

    SolveOutput out;
    out.jitter_tau = data.gram.jitter;

    Vector alpha = Vector::Constant(n, 1.0 / n);
    DualState state(alpha, data, cfg);
    double objective = dual_objective(state, data, cfg);

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        NewtonStep step = newton_step(state, data, cfg);
        double scaled_dec = scale * step.decrement;
        out.history.push_back({objective, scaled_dec});
        out.final_decrement = scaled_dec;
        out.iterations = iter - 1;
        if (scaled_dec <= cfg.kappa) {
            out.converged = true;
            break;
        }
        double t = 1.0 / (1.0 + scaled_dec);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            Vector candidate = alpha - t * step.direction;
            try {
                DualState next(candidate, data, cfg);
                double next_obj = dual_objective(next, data, cfg);
                if (std::isfinite(next_obj) &&
                    next_obj <= objective + 1e-12 * (1.0 + std::abs(objective))) {
                    alpha = std::move(candidate);
                    state = std::move(next);
                    objective = next_obj;
                    accepted = true;
                    break;
                }
            } catch (const std::domain_error&) {
                // outside the barrier domain; shrink
            }
            t *= 0.5;
            ++out.backtracks;
        }
        if (!accepted)
            throw std::runtime_error("solve: damped Newton step rejected after backtracking");
        out.iterations = iter;
    }

    // recovery
    Vector grad = dual_gradient(state, data, cfg);
    out.alpha = alpha;
    out.c_hat = grad.mean();
    out.c_feas = grad.minCoeff();
    out.residual_max = (grad.array() - out.c_hat).abs().maxCoeff();
    out.B_hat = (eps / n) * state.factor().solve(Matrix::Identity(n, n));
    out.B_hat = 0.5 * (out.B_hat + out.B_hat.transpose()).eval();
    out.trace_B = out.B_hat.trace();
    Vector z_raw = data.points.points.transpose() * alpha;
    out.z_hat = data.domain.project(z_raw);

    // analytic step bound with tr(A_*) replaced by the recovered trace
    Matrix Kn = data.gram.K;
    Kn.diagonal().array() += n * cfg.lambda;
    Eigen::LLT<Matrix> lltK(Kn);
    double log_det_Kn = (lltK.info() == Eigen::Success)
                            ? 2.0 * lltK.matrixLLT().diagonal().array().log().sum()
                            : 0.0;
    out.iteration_budget = (n / eps) * (data.values.mean() - data.values.minCoeff()) +
                           log_det_Kn + (n / eps) * cfg.lambda * out.trace_B + std::log(eps) +
                           std::log(std::log(1.0 / std::min(cfg.kappa, 0.99)));
    return out;
}

double model_eval(const SolveOutput& out, const GramFactor& gram, const KernelSpec& spec,
                  const PointSet& points, const SolverConfig& cfg, const Vector& x) {
    const int n = gram.size();
    Vector v = cross_vector(spec, points, x);
    Vector w = gram.R.transpose().triangularView<Eigen::Lower>().solve(v);
    double value = w.dot(out.B_hat * w);
    if (cfg.lambda > 0.0) {
        // the component of phi(x) outside span{Phi_i} sees only the lambda*I
        // part of the regularized operator
        double residual = std::max(0.0, 1.0 - w.squaredNorm());  // k(x,x) = 1
        value += cfg.eps_barrier / (n * cfg.lambda) * residual;
    }
    return value;
}

double model_eval_kform(const SolveOutput& out, const SampleSet& data,
                        const SolverConfig& cfg, const Vector& x) {
    if (!(cfg.lambda > 0.0))
        throw std::invalid_argument("model_eval_kform: requires lambda > 0");
    if (!(out.alpha.array() > 0.0).all())
        throw std::invalid_argument("model_eval_kform: requires alpha > 0 componentwise");
    const double n = data.size();
    Vector q = cross_vector(data.kernel, data.points, x);
    Matrix M = data.gram.K;
    M.diagonal() += cfg.lambda * out.alpha.cwiseInverse();
    double quad = q.dot(M.ldlt().solve(q));
    return (cfg.eps_barrier / (n * cfg.lambda)) * (1.0 - quad);
}

}  // namespace ksos
