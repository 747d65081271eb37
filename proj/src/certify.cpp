#include "ksos/certify.hpp"
#include "ksos/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ksos {

namespace {

Vector constraint_quadratics(const SampleSet& data, const Matrix& B) {
    // Phi_i^T B Phi_i = (R^T B R)_ii with Phi_i the i-th column of R
    const Matrix& R = data.gram.R;
    Matrix BR = B * R;
    Vector q(data.size());
    for (int i = 0; i < data.size(); ++i) q[i] = R.col(i).dot(BR.col(i));
    return q;
}

}  // namespace

double residual_tau(const SampleSet& data, double c, const Matrix& B) {
    Vector quad = constraint_quadratics(data, B);
    double tau = (data.values.array() - c - quad.array()).abs().maxCoeff();
    return tau + data.gram.jitter * B.diagonal().array().abs().maxCoeff();
}

double residual_tau_parabola(const SampleSet& data, double c, const Matrix& B, double nu,
                             const Vector& z) {
    Vector quad = constraint_quadratics(data, B);
    double tau = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        double xi_sq = data.points.points.row(i).squaredNorm();
        double g = data.values[i] - 0.5 * nu * xi_sq + nu * data.points.points.row(i).dot(z);
        tau = std::max(tau, std::abs(g - c - quad[i]));
    }
    return tau + data.gram.jitter * B.diagonal().array().abs().maxCoeff();
}

UniformBound uniform_bound(double h, int m, double seminorm, double trace_B,
                           const KernelConstants& consts, const Domain& domain) {
    if (h < 0.0 || seminorm < 0.0 || trace_B < 0.0)
        throw std::invalid_argument("uniform_bound: negative input");
    if (m < 1) throw std::invalid_argument("uniform_bound: m must be >= 1");
    double threshold = domain.inner_radius();
    if (m > 1) threshold = std::min(threshold, domain.inner_radius() / (18.0 * (m - 1) * (m - 1)));
    double value = consts.C0 * (seminorm + consts.M * consts.D_m * trace_B) * std::pow(h, m);
    return UniformBound{value, h <= threshold};
}

Certificate certify_minimum(const SolveOutput& out, const SampleSet& data,
                            const KernelConstants& consts, double seminorm, double h,
                            const Vector& z, double f_at_z, const std::string& h_label) {
    (void)z;
    Certificate cert;
    cert.tau = residual_tau(data, out.c_hat, out.B_hat);
    UniformBound ub = uniform_bound(h, consts.m, seminorm, out.trace_B, consts, data.domain);
    cert.epsilon = ub.value;
    cert.precondition_ok = ub.precondition_ok;
    cert.h = h;
    cert.m = consts.m;
    cert.seminorm_bound = seminorm;
    cert.h_label = h_label;
    cert.gap_bound = f_at_z - out.c_hat + cert.epsilon + 2.0 * cert.tau;
    cert.lower_bound = out.c_hat - cert.epsilon - 2.0 * cert.tau;
    cert.consistent = f_at_z >= cert.lower_bound;
    return cert;
}

MinimizerCertificate certify_minimizer(const LocalizeOutput& out, const SampleSet& data,
                                       const SolverConfig& cfg, const KernelConstants& consts,
                                       double seminorm, double h, double f_at_z,
                                       const std::string& h_label) {
    if (!(cfg.nu > 0.0))
        throw std::invalid_argument("certify_minimizer: requires nu > 0 (use certify_minimum)");
    const SolveOutput& sv = out.solve;
    const Vector& z = sv.z_hat;

    MinimizerCertificate mc;
    // C_hat = (nu/2) || R^{-T} (X - 1 z^T) ||_F^2
    Matrix centered = data.points.points.rowwise() - z.transpose();
    Matrix solved = data.gram.R.transpose().triangularView<Eigen::Lower>().solve(centered);
    mc.C_hat = 0.5 * cfg.nu * solved.squaredNorm();

    double tau = residual_tau_parabola(data, sv.c_hat, sv.B_hat, cfg.nu, z);
    double f_vertex = sv.c_hat - 0.5 * cfg.nu * z.squaredNorm();

    UniformBound value_eps =
        uniform_bound(h, consts.m, seminorm, sv.trace_B + mc.C_hat, consts, data.domain);
    Certificate& cert = mc.value;
    cert.tau = tau;
    cert.epsilon = value_eps.value;
    cert.precondition_ok = value_eps.precondition_ok;
    cert.h = h;
    cert.m = consts.m;
    cert.seminorm_bound = seminorm;
    cert.h_label = h_label;
    cert.gap_bound = f_at_z - f_vertex + 2.0 * tau + value_eps.value;
    cert.lower_bound = f_vertex - value_eps.value - 2.0 * tau;
    cert.consistent = f_at_z >= cert.lower_bound;

    UniformBound loc_eps =
        uniform_bound(h, consts.m, seminorm + cfg.nu, sv.trace_B, consts, data.domain);
    mc.localization_bound = f_at_z - f_vertex + 2.0 * tau + loc_eps.value;
    return mc;
}

double estimate_seminorm(const Evaluator& f, const Domain& domain, int m, int probes,
                         std::uint64_t seed) {
    if (m != 1 && m != 2)
        throw std::invalid_argument("estimate_seminorm: only m in {1,2} supported");
    if (probes < 1) throw std::invalid_argument("estimate_seminorm: probes must be >= 1");
    const int d = domain.dim();
    const double h = 1e-4 * domain.diameter();
    PointSet xs = sample_uniform(domain, probes, seed);
    double bound = 0.0;
    for (int p = 0; p < probes; ++p) {
        Vector x = xs.point(p);
        if (m == 1) {
            for (int j = 0; j < d; ++j) {
                Vector e = Vector::Zero(d);
                e[j] = h;
                double df = (f(domain.project(x + e)) - f(domain.project(x - e))) / (2.0 * h);
                bound = std::max(bound, std::abs(df));
            }
        } else {
            double f0 = f(x);
            for (int j = 0; j < d; ++j) {
                for (int l = j; l < d; ++l) {
                    Vector ej = Vector::Zero(d), el = Vector::Zero(d);
                    ej[j] = h;
                    el[l] = h;
                    double dd;
                    if (j == l) {
                        dd = (f(domain.project(x + ej)) - 2.0 * f0 +
                              f(domain.project(x - ej))) /
                             (h * h);
                    } else {
                        dd = (f(domain.project(x + ej + el)) - f(domain.project(x + ej - el)) -
                              f(domain.project(x - ej + el)) + f(domain.project(x - ej - el))) /
                             (4.0 * h * h);
                    }
                    bound = std::max(bound, std::abs(dd));
                }
            }
        }
    }
    return bound;
}

}  // namespace ksos
