#pragma once

#include "ksos/sos_solver.hpp"

namespace ksos {

struct StageRecord {
    int stage = 0;
    Vector center;
    double radius = 0.0;
    Vector z;
    double c_hat = 0.0;
    double vertex_value = 0.0;
};

struct LocalizeOutput {
    SolveOutput solve;
    double vertex_value = 0.0;  // c_hat - (nu/2) ||z_hat||^2, estimate of the minimum
    std::vector<StageRecord> stage_log;
    bool warning = false;       // a stage failed; result is the best stage so far
};

// Solves the parabola-vertex variant: same damped Newton, dual augmented by
// (nu/2)(-sum_i alpha_i ||x_i||^2 + ||sum_i alpha_i x_i||^2). With nu = 0
// this is exactly the plain solve.
LocalizeOutput solve_parabola(const SampleSet& data, const SolverConfig& cfg);

struct RestartSchedule {
    int stages = 4;
    int n_per_stage = 150;
    double shrink = 0.36787944117144233;  // 1/e
    std::uint64_t seed = 0;
    bool halton = false;
};

// Geometric localization: stage t samples fresh points in the ball of the
// current radius around the incumbent (intersected with the original
// domain), solves the parabola problem, recenters, and shrinks the radius.
LocalizeOutput warm_restart(const Evaluator& f, const Domain& domain, const KernelSpec& kernel,
                            const SolverConfig& cfg, const RestartSchedule& schedule);

// Estimates the strong-convexity lower bound beta near a point by sampled
// second finite differences; a hint for choosing nu, not a guarantee.
double estimate_beta(const Evaluator& f, const Domain& domain, const Vector& at, int probes,
                     std::uint64_t seed);

}  // namespace ksos
