// Command-line front end: solve / localize / bench / certify.
#include "ksos/bench.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace ksos;

Domain default_domain(int d) {
    return Domain::box(Vector::Constant(d, -1.0), Vector::Constant(d, 1.0));
}

int cmd_solve(const std::string& config_path, std::uint64_t seed, const std::string& out_dir) {
    BenchConfig cfg = load_config(config_path);
    TestFunction fn = build_test_function(cfg.function);
    Domain domain = default_domain(fn.d);
    double s = cfg.kernel_s > 0.0 ? cfg.kernel_s : 0.5 * fn.d + 0.5;
    int n = cfg.n_grid.front();
    PointSet pts = cfg.sampler == "uniform" ? sample_uniform(domain, n, seed)
                                            : sample_halton(domain, n, 0);
    SampleSet data = make_sample_set(domain, KernelSpec::make(fn.d, s, cfg.sigma), pts, fn.eval);
    SolverConfig scfg = cfg.solver;
    scfg.lambda = cfg.lambda_grid.front();
    SolveOutput sol = solve(data, scfg);

    std::cout << "c_hat = " << sol.c_hat << "\n"
              << "c_feas = " << sol.c_feas << "\n"
              << "z_hat = " << sol.z_hat.transpose() << "\n"
              << "f(z_hat) = " << fn.eval(sol.z_hat) << "\n"
              << "iterations = " << sol.iterations << " (converged: " << sol.converged << ")\n"
              << "final scaled decrement = " << sol.final_decrement << "\n"
              << "residual_max = " << sol.residual_max << "\n"
              << "backtracks = " << sol.backtracks << "\n"
              << "jitter eta = " << sol.jitter_tau << "\n";
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir + "/solve.csv");
    RunRecord rec;
    rec.method = "ksos";
    rec.n = n;
    rec.seed = seed;
    rec.lambda = scfg.lambda;
    rec.sigma = cfg.sigma;
    rec.nu = scfg.nu;
    rec.c_hat = sol.c_hat;
    rec.f_at_z = fn.eval(sol.z_hat);
    rec.gap_to_true_min = rec.f_at_z;
    rec.iterations = sol.iterations;
    csv << csv_header() << '\n' << to_csv_row(rec) << '\n';
    return 0;
}

int cmd_localize(const std::string& config_path, std::uint64_t seed, int stages, int n_per_stage,
                 double nu) {
    BenchConfig cfg = load_config(config_path);
    TestFunction fn = build_test_function(cfg.function);
    // warm restart shrinks balls, so run on the circumscribed ball of the box
    Domain domain = Domain::ball(Vector::Zero(fn.d), std::sqrt(static_cast<double>(fn.d)));
    double s = cfg.kernel_s > 0.0 ? cfg.kernel_s : 0.5 * fn.d + 0.5;
    SolverConfig scfg = cfg.solver;
    scfg.lambda = cfg.lambda_grid.front();
    scfg.nu = nu > 0.0 ? nu : scfg.nu;
    RestartSchedule sched;
    sched.stages = stages;
    sched.n_per_stage = n_per_stage;
    sched.seed = seed;
    LocalizeOutput out = warm_restart(fn.eval, domain, KernelSpec::make(fn.d, s, cfg.sigma),
                                      scfg, sched);
    std::cout << "stage,center_norm,radius,c_hat,vertex_value\n";
    for (const auto& st : out.stage_log)
        std::cout << st.stage << ',' << st.center.norm() << ',' << st.radius << ',' << st.c_hat
                  << ',' << st.vertex_value << '\n';
    std::cout << "z_final = " << out.solve.z_hat.transpose() << "\n"
              << "f(z_final) = " << fn.eval(out.solve.z_hat) << "\n"
              << "vertex_value = " << out.vertex_value << "\n";
    if (out.warning) std::cerr << "warning: a stage failed; reporting best stage so far\n";
    return 0;
}

int cmd_bench(const std::string& config_path) {
    BenchConfig cfg = load_config(config_path);
    auto records = run_experiment(cfg);
    std::cout << "wrote " << records.size() << " records to " << cfg.out_dir << "/results.csv\n";
    return 0;
}

int cmd_certify(const std::string& config_path, std::uint64_t seed, int m, double seminorm) {
    BenchConfig cfg = load_config(config_path);
    TestFunction fn = build_test_function(cfg.function);
    Domain domain = default_domain(fn.d);
    double s = cfg.kernel_s > 0.0 ? cfg.kernel_s : 0.5 * fn.d + 0.5;
    KernelSpec kernel = KernelSpec::make(fn.d, s, cfg.sigma);
    KernelConstants consts = trace_constants(kernel, m);
    int n = cfg.n_grid.front();
    PointSet pts = cfg.sampler == "uniform" ? sample_uniform(domain, n, seed)
                                            : sample_halton(domain, n, 0);
    SampleSet data = make_sample_set(domain, kernel, pts, fn.eval);
    SolverConfig scfg = cfg.solver;
    scfg.lambda = cfg.lambda_grid.front();
    SolveOutput sol = solve(data, scfg);

    bool heuristic = seminorm <= 0.0;
    if (heuristic) seminorm = estimate_seminorm(fn.eval, domain, m, 200, seed + 1);
    double h_emp = fill_distance_empirical(pts, domain, 50 * n, seed + 2);
    double f_at_z = fn.eval(sol.z_hat);

    Certificate emp = certify_minimum(sol, data, consts, seminorm, h_emp, sol.z_hat, f_at_z,
                                      "empirical-h (optimistic)");
    std::cout << "sampler = " << cfg.sampler << (heuristic ? " | seminorm: heuristic" : "")
              << "\nnote: M is treated as scale-free (sigma enters D_m only)\n";
    auto print = [&](const char* name, const Certificate& c) {
        std::cout << name << ": gap_bound = " << c.gap_bound
                  << ", lower_bound = " << c.lower_bound << ", epsilon = " << c.epsilon
                  << ", tau = " << c.tau << ", h = " << c.h
                  << ", precondition_ok = " << c.precondition_ok
                  << (c.precondition_ok ? "" : " (bound non-rigorous)")
                  << ", consistent = " << c.consistent << " [" << c.h_label << "]\n";
    };
    print("empirical-h", emp);
    if (cfg.sampler == "uniform") {
        auto hb = fill_distance_bound(n, domain, 0.05);
        Certificate prob = certify_minimum(sol, data, consts, seminorm, hb.value, sol.z_hat,
                                           f_at_z, "probabilistic (delta-valid)");
        prob.precondition_ok = prob.precondition_ok && hb.n_above_threshold;
        print("probabilistic", prob);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel sum-of-squares global optimizer"};
    app.require_subcommand(1);

    std::string config = "config.json", out_dir = "out";
    std::uint64_t seed = 0;
    int stages = 4, n_per_stage = 150, m = 1;
    double nu = 0.0, seminorm = 0.0;

    auto* c_solve = app.add_subcommand("solve", "single solve from a config file");
    c_solve->add_option("--config", config)->required();
    c_solve->add_option("--seed", seed);
    c_solve->add_option("--out-dir", out_dir);

    auto* c_loc = app.add_subcommand("localize", "warm-restart minimizer localization");
    c_loc->add_option("--config", config)->required();
    c_loc->add_option("--seed", seed);
    c_loc->add_option("--stages", stages);
    c_loc->add_option("--n-per-stage", n_per_stage);
    c_loc->add_option("--nu", nu);

    auto* c_bench = app.add_subcommand("bench", "run the experiment grid from a config file");
    c_bench->add_option("--config", config)->required();

    auto* c_cert = app.add_subcommand("certify", "solve and emit optimality certificates");
    c_cert->add_option("--config", config)->required();
    c_cert->add_option("--seed", seed);
    c_cert->add_option("--m", m);
    c_cert->add_option("--seminorm", seminorm,
                       "user-supplied |f|_m bound; omit for a heuristic estimate");

    CLI11_PARSE(app, argc, argv);
    try {
        if (c_solve->parsed()) return cmd_solve(config, seed, out_dir);
        if (c_loc->parsed()) return cmd_localize(config, seed, stages, n_per_stage, nu);
        if (c_bench->parsed()) return cmd_bench(config);
        if (c_cert->parsed()) return cmd_certify(config, seed, m, seminorm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
