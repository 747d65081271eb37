#include "ksos/localizer.hpp"
#include "ksos/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksos {

LocalizeOutput solve_parabola(const SampleSet& data, const SolverConfig& cfg) {
    LocalizeOutput out;
    out.solve = solve(data, cfg);
    out.vertex_value = out.solve.c_hat - 0.5 * cfg.nu * out.solve.z_hat.squaredNorm();
    return out;
}

namespace {

// Uniform samples from ball(center, radius) intersected with the base domain.
PointSet sample_stage(const Domain& base, const Vector& center, double radius, int n,
                      std::uint64_t seed, bool halton) {
    Domain stage_ball = Domain::ball(center, radius);
    Matrix pts(n, base.dim());
    int accepted = 0;
    if (halton) {
        // grow the batch until n points land in the intersection; order preserved
        for (int m = n; accepted < n; m *= 2) {
            if (m > (1 << 24))
                throw std::runtime_error("sample_stage: stage ball barely intersects the domain");
            PointSet batch = sample_halton(stage_ball, m, 0);
            accepted = 0;
            for (int i = 0; i < batch.size() && accepted < n; ++i)
                if (base.contains(batch.point(i))) pts.row(accepted++) = batch.points.row(i);
        }
    } else {
        Rng rng(seed);
        std::uint64_t sub_seed = 0;
        int attempts = 0;
        while (accepted < n) {
            sub_seed = static_cast<std::uint64_t>(rng.uniform01() * 9e18);
            PointSet batch = sample_uniform(stage_ball, n, sub_seed);
            for (int i = 0; i < batch.size() && accepted < n; ++i)
                if (base.contains(batch.point(i))) pts.row(accepted++) = batch.points.row(i);
            if (++attempts > 4096)
                throw std::runtime_error("sample_stage: stage ball barely intersects the domain");
        }
    }
    return PointSet{std::move(pts), seed};
}

}  // namespace

LocalizeOutput warm_restart(const Evaluator& f, const Domain& domain, const KernelSpec& kernel,
                            const SolverConfig& cfg, const RestartSchedule& schedule) {
    if (schedule.stages < 1) throw std::invalid_argument("warm_restart: stages must be >= 1");
    if (schedule.n_per_stage < 1)
        throw std::invalid_argument("warm_restart: n_per_stage must be >= 1");
    if (!(schedule.shrink > 0.0 && schedule.shrink < 1.0))
        throw std::invalid_argument("warm_restart: shrink must lie in (0,1)");

    Vector center = domain.center();
    double radius = domain.outer_radius();
    std::vector<StageRecord> log;
    LocalizeOutput best;
    bool have_result = false;

    for (int t = 1; t <= schedule.stages; ++t) {
        LocalizeOutput stage_out;
        try {
            PointSet pts = sample_stage(domain, center, radius, schedule.n_per_stage,
                                        schedule.seed + static_cast<std::uint64_t>(t),
                                        schedule.halton);
            stage_out = solve_parabola(make_sample_set(domain, kernel, pts, f), cfg);
        } catch (const std::exception&) {
            if (have_result) {
                best.warning = true;
                best.stage_log = std::move(log);
                return best;
            }
            throw;
        }
        log.push_back({t, center, radius, stage_out.solve.z_hat, stage_out.solve.c_hat,
                       stage_out.vertex_value});
        center = stage_out.solve.z_hat;
        best = std::move(stage_out);
        have_result = true;
        radius *= schedule.shrink;
    }
    best.stage_log = std::move(log);
    return best;
}

double estimate_beta(const Evaluator& f, const Domain& domain, const Vector& at, int probes,
                     std::uint64_t seed) {
    if (probes < 1) throw std::invalid_argument("estimate_beta: probes must be >= 1");
    const int d = domain.dim();
    const double h = 1e-4 * domain.diameter();
    Rng rng(seed);
    double beta = std::numeric_limits<double>::infinity();
    const double f0 = f(at);
    for (int p = 0; p < probes; ++p) {
        Vector dir(d);
        for (int j = 0; j < d; ++j) dir[j] = rng.normal();
        dir.normalize();
        double second = (f(domain.project(at + h * dir)) - 2.0 * f0 +
                         f(domain.project(at - h * dir))) /
                        (h * h);
        beta = std::min(beta, second);
    }
    return std::max(beta, 0.0);
}

}  // namespace ksos
