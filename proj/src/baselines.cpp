#include "ksos/baselines.hpp"
#include "ksos/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksos {

namespace {

// Wraps the objective with a budget counter and a running-minimum trace.
class CountedEvaluator {
public:
    CountedEvaluator(const Evaluator& f, long budget) : f_(f), budget_(budget) {}

    double operator()(const Vector& x, BaselineResult& out) {
        if (out.evaluations >= budget_)
            throw std::runtime_error("evaluation budget exceeded");
        double v = f_(x);
        ++out.evaluations;
        if (v < out.best_f || out.trace.empty()) {
            out.best_f = v;
            out.best_x = x;
        }
        out.trace.push_back(out.best_f);
        return v;
    }

    long remaining(const BaselineResult& out) const { return budget_ - out.evaluations; }

private:
    const Evaluator& f_;
    long budget_;
};

}  // namespace

BaselineResult random_search(const Evaluator& f, const Domain& domain, int n,
                             SamplerKind sampler, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_search: n must be >= 1");
    PointSet pts = sampler == SamplerKind::Uniform ? sample_uniform(domain, n, seed)
                                                   : sample_halton(domain, n, 0);
    BaselineResult out;
    out.best_f = std::numeric_limits<double>::infinity();
    CountedEvaluator eval(f, n);
    for (int i = 0; i < n; ++i) eval(pts.point(i), out);
    return out;
}

namespace {

struct GdRun {
    BaselineResult result;
    bool descent_ok = true;
};

GdRun run_random_gd(const Evaluator& f, const Domain& domain, int n, const GdConfig& gd,
                    std::uint64_t seed) {
    const int d = domain.dim();
    const long per_restart = static_cast<long>(d + 1) * gd.steps;
    const long restarts = n / per_restart;
    if (restarts < 1)
        throw std::invalid_argument("random_gd: budget too small for one restart");
    const double fd = gd.fd_step_rel * domain.diameter();

    GdRun run;
    run.result.best_f = std::numeric_limits<double>::infinity();
    CountedEvaluator eval(f, n);
    PointSet starts = sample_uniform(domain, static_cast<int>(restarts), seed);

    for (long r = 0; r < restarts; ++r) {
        if (eval.remaining(run.result) < 1) break;
        Vector x = starts.point(static_cast<int>(r));
        double fx = eval(x, run.result);
        for (int step = 0; step < gd.steps; ++step) {
            if (eval.remaining(run.result) < d) break;
            Vector grad(d);
            for (int j = 0; j < d; ++j) {
                Vector e = Vector::Zero(d);
                e[j] = fd;
                grad[j] = (eval(domain.project(x + e), run.result) - fx) / fd;
            }
            if (eval.remaining(run.result) < 1) break;
            x = domain.project(x - gd.step_size * grad);
            double fnew = eval(x, run.result);
            if (fnew > fx) run.descent_ok = false;
            fx = fnew;
        }
    }
    return run;
}

}  // namespace

BaselineResult random_gd(const Evaluator& f, const Domain& domain, int n, const GdConfig& gd,
                         std::uint64_t seed) {
    return run_random_gd(f, domain, n, gd, seed).result;
}

BaselineResult random_gd_tuned(const Evaluator& f, const Domain& domain, int n, int steps,
                               std::uint64_t seed, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("random_gd_tuned: empty step-size grid");
    bool have_best = false;
    BaselineResult best;
    for (double step_size : grid) {
        GdConfig gd;
        gd.steps = steps;
        gd.step_size = step_size;
        GdRun run = run_random_gd(f, domain, n, gd, seed);
        if (!run.descent_ok) continue;
        if (!have_best || run.result.best_f < best.best_f) {
            best = std::move(run.result);
            have_best = true;
        }
    }
    if (!have_best) {
        // every candidate violated descent; fall back to the most conservative
        GdConfig gd;
        gd.steps = steps;
        gd.step_size = grid.front();
        best = run_random_gd(f, domain, n, gd, seed).result;
    }
    return best;
}

}  // namespace ksos
