#pragma once

#include "ksos/sos_solver.hpp"

namespace ksos {

enum class SamplerKind { Uniform, Halton };

struct BaselineResult {
    Vector best_x;
    double best_f = 0.0;
    std::vector<double> trace;  // running minimum after each evaluation
    long evaluations = 0;
};

// Evaluates exactly n sampled points and keeps the best.
BaselineResult random_search(const Evaluator& f, const Domain& domain, int n,
                             SamplerKind sampler, std::uint64_t seed);

struct GdConfig {
    int steps = 20;
    double step_size = 0.1;
    double fd_step_rel = 1e-5;  // forward-difference step, relative to the diameter
};

// Random restarts of projected gradient descent with forward-difference
// gradients (d+1 evaluations per step). Restarts = floor(n / ((d+1) steps));
// total evaluations never exceed n.
BaselineResult random_gd(const Evaluator& f, const Domain& domain, int n, const GdConfig& gd,
                         std::uint64_t seed);

// Grid-tunes the step size on a log grid, rejecting any step size whose
// accepted iterates ever increase f; returns the best run.
BaselineResult random_gd_tuned(const Evaluator& f, const Domain& domain, int n, int steps,
                               std::uint64_t seed,
                               const std::vector<double>& grid = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1,
                                                                  3e-1, 1.0});

}  // namespace ksos
