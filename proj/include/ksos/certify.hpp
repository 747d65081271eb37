#pragma once

#include "ksos/localizer.hpp"
#include "ksos/sos_solver.hpp"

#include <string>

namespace ksos {

// A posteriori optimality certificate. precondition_ok is false when the
// fill distance exceeds the validity threshold h <= r min(1, 1/(18(m-1)^2));
// the bound value is still reported but is not rigorous in that case.
struct Certificate {
    double epsilon = 0.0;        // uniform bound C0 (|f| + M D_m tr B) h^m
    double tau = 0.0;            // constraint slack, jitter included
    double h = 0.0;              // fill distance used
    int m = 0;
    double seminorm_bound = 0.0; // user-supplied |f|_{Omega,m}
    double gap_bound = 0.0;      // certified bound on |f(z) - f_*|
    double lower_bound = 0.0;    // certified f_* >= c_hat - epsilon - 2 tau
    bool precondition_ok = false;
    bool consistent = true;      // false if f(z) < lower_bound numerically
    std::string h_label;         // "empirical-h (optimistic)" or "probabilistic (delta-valid)"
};

struct MinimizerCertificate {
    Certificate value;            // bound on |f(z) - f_*| (with the extra trace term)
    double localization_bound = 0.0;  // bound on (nu/2) ||zeta - z||^2
    double C_hat = 0.0;               // (nu/2) ||R^{-T}(X - 1 z^T)||_F^2
};

// tau = max_i |f(x_i) - c - Phi_i^T B Phi_i| + eta * max_i B_ii.
double residual_tau(const SampleSet& data, double c, const Matrix& B);

// Same residual for the parabola-variant constraints, g_i = f_i - (nu/2)||x_i||^2 + nu x_i^T z.
double residual_tau_parabola(const SampleSet& data, double c, const Matrix& B, double nu,
                             const Vector& z);

struct UniformBound {
    double value;
    bool precondition_ok;
};

UniformBound uniform_bound(double h, int m, double seminorm, double trace_B,
                           const KernelConstants& consts, const Domain& domain);

// Thm-style certificate |f(z) - f_*| <= f(z) - c_hat + epsilon + 2 tau.
Certificate certify_minimum(const SolveOutput& out, const SampleSet& data,
                            const KernelConstants& consts, double seminorm, double h,
                            const Vector& z, double f_at_z,
                            const std::string& h_label = "empirical-h (optimistic)");

// Certificate for the parabola-variant candidate: both the value bound
// (trace augmented by C_hat) and the localization bound on (nu/2)||zeta - z||^2.
MinimizerCertificate certify_minimizer(const LocalizeOutput& out, const SampleSet& data,
                                       const SolverConfig& cfg, const KernelConstants& consts,
                                       double seminorm, double h, double f_at_z,
                                       const std::string& h_label = "empirical-h (optimistic)");

// Heuristic finite-difference estimate of |f|_{Omega,m} on a probe set,
// supported for m in {1, 2}. Certificates built from it are heuristic.
double estimate_seminorm(const Evaluator& f, const Domain& domain, int m, int probes,
                         std::uint64_t seed);

}  // namespace ksos
