#pragma once

#include "ksos/geometry.hpp"
#include "ksos/gram.hpp"
#include "ksos/kernels.hpp"

#include <Eigen/Cholesky>
#include <functional>
#include <vector>

namespace ksos {

using Evaluator = std::function<double(const Vector&)>;

struct SolverConfig {
    double lambda = 0.0;       // trace-penalty weight, >= 0
    double eps_barrier = 1e-3; // barrier parameter, > 0
    double kappa = 1e-6;       // stop when sqrt(n/eps) * decrement <= kappa
    int max_iters = 500;
    double nu = 0.0;           // parabola weight; 0 = plain lower-bound problem

    void validate() const;
};

// Evaluation points, values, and the Gram factorization they induce.
struct SampleSet {
    Domain domain;
    KernelSpec kernel;
    PointSet points;
    Vector values;  // f(x_i)
    GramFactor gram;

    int size() const { return points.size(); }
};

SampleSet make_sample_set(const Domain& domain, const KernelSpec& kernel,
                          const PointSet& points, const Evaluator& f);
SampleSet make_sample_set(const Domain& domain, const KernelSpec& kernel,
                          const PointSet& points, const Vector& values);

// Dual iterate on the affine slice alpha^T 1 = 1, with the factorization
// of G(alpha) = R Diag(alpha) R^T + lambda I shared by the objective,
// gradient, Hessian, and recovery formulas.
class DualState {
public:
    // Throws std::domain_error when G(alpha) is not positive definite.
    DualState(const Vector& alpha, const SampleSet& data, const SolverConfig& cfg);

    const Vector& alpha() const { return alpha_; }
    // W = R^T G^{-1} R, so W_ij = Phi_i^T G^{-1} Phi_j.
    const Matrix& witness() const { return W_; }
    double log_det() const { return log_det_; }
    const Eigen::LLT<Matrix>& factor() const { return llt_; }

    static bool in_domain(const Vector& alpha, const SampleSet& data, const SolverConfig& cfg);

private:
    Vector alpha_;
    Eigen::LLT<Matrix> llt_;
    Matrix W_;
    double log_det_;
};

struct NewtonStep {
    Vector direction;  // Delta, with 1^T Delta = 0
    double decrement;  // lambda(alpha) = sqrt(Delta^T H'' Delta)
};

double dual_objective(const DualState& state, const SampleSet& data, const SolverConfig& cfg);
Vector dual_gradient(const DualState& state, const SampleSet& data, const SolverConfig& cfg);
Matrix dual_hessian(const DualState& state, const SampleSet& data, const SolverConfig& cfg);

NewtonStep newton_step(const DualState& state, const SampleSet& data, const SolverConfig& cfg);

struct IterationRecord {
    double objective;
    double decrement;  // scaled: sqrt(n/eps) * lambda(alpha)
};

struct SolveOutput {
    double c_hat = 0.0;       // Lagrange-multiplier estimate, mean of the gradient
    double c_feas = 0.0;      // primal-feasible variant, min_i (g_i - Phi_i^T B Phi_i)
    Matrix B_hat;             // (eps/n) G(alpha)^{-1}, symmetric PSD
    Vector alpha;
    Vector z_hat;             // candidate minimizer sum_i alpha_i x_i, projected onto the domain
    double trace_B = 0.0;
    double residual_max = 0.0;  // max_i |g_i - c_hat - Phi_i^T B Phi_i|
    double jitter_tau = 0.0;    // ridge eta inherited from the Gram factorization
    std::vector<IterationRecord> history;
    int iterations = 0;
    int backtracks = 0;
    bool converged = false;
    double final_decrement = 0.0;  // scaled
    double iteration_budget = 0.0; // analytic step bound (soft check)
};

// Damped Newton on the dual from alpha_0 = 1/n until the scaled decrement
// drops below kappa or the iteration cap is reached. With cfg.nu > 0 the
// parabola-vertex variant is solved; the recovered quantities refer to the
// shifted constraint values g_i = f_i - (nu/2)||x_i||^2 + nu x_i^T z.
SolveOutput solve(const SampleSet& data, const SolverConfig& cfg);

// Learned model g(x) >= 0 (approximates f - c): the quadratic form
// v(x)^T R^{-1} B R^{-T} v(x), plus for lambda > 0 the contribution
// (eps/(n lambda)) (k(x,x) - q^T K^{-1} q) of the feature component
// orthogonal to the sample span.
double model_eval(const SolveOutput& out, const GramFactor& gram, const KernelSpec& spec,
                  const PointSet& points, const SolverConfig& cfg, const Vector& x);

// Equivalent form (eps/(n lambda)) (k(x,x) - q^T (K + lambda Diag(alpha)^{-1})^{-1} q);
// requires lambda > 0 and alpha > 0 componentwise.
double model_eval_kform(const SolveOutput& out, const SampleSet& data,
                        const SolverConfig& cfg, const Vector& x);

}  // namespace ksos
