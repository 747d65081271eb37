#include "ksos/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace ksos {

using nlohmann::json;

std::string csv_header() {
    return "method,n,seed,lambda,sigma,nu,c_hat,f_at_z,gap_to_true_min,cert_bound,iterations,"
           "wall_ms";
}

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.method << ',' << r.n << ',' << r.seed << ',' << r.lambda << ',' << r.sigma << ','
       << r.nu << ',' << r.c_hat << ',' << r.f_at_z << ',' << r.gap_to_true_min << ','
       << r.cert_bound << ',' << r.iterations << ',' << r.wall_ms;
    return os.str();
}

RunRecord from_csv_row(const std::string& line) {
    std::istringstream is(line);
    RunRecord r;
    std::string field;
    auto next = [&] {
        if (!std::getline(is, field, ',')) throw std::runtime_error("from_csv_row: short row");
        return field;
    };
    r.method = next();
    r.n = std::stoi(next());
    r.seed = std::stoull(next());
    r.lambda = std::stod(next());
    r.sigma = std::stod(next());
    r.nu = std::stod(next());
    r.c_hat = std::stod(next());
    r.f_at_z = std::stod(next());
    r.gap_to_true_min = std::stod(next());
    r.cert_bound = std::stod(next());
    r.iterations = std::stoi(next());
    r.wall_ms = std::stod(next());
    return r;
}

BenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    json j = json::parse(in);
    BenchConfig cfg;
    cfg.schema_version = j.value("schema_version", 1);
    if (cfg.schema_version != 1)
        throw std::runtime_error("load_config: unsupported schema_version");

    const json& fn = j.at("function");
    cfg.function.kind = fn.value("kind", "gaussian_bumps_2d");
    cfg.function.d = fn.value("d", 2);
    cfg.function.cosine_amplitude = fn.value("cosine_amplitude", 0.0);
    cfg.function.cosine_frequency = fn.value("cosine_frequency", 0.0);
    cfg.function.grid = fn.value("grid", 401);
    if (fn.contains("bumps")) {
        for (const auto& b : fn["bumps"]) {
            GaussianBump bump;
            bump.center = Vector(2);
            bump.center << b.at("center")[0].get<double>(), b.at("center")[1].get<double>();
            bump.width = b.at("width").get<double>();
            bump.weight = b.at("weight").get<double>();
            cfg.function.bumps.push_back(bump);
        }
    } else {
        cfg.function.bumps = default_bumps_2d();
    }

    cfg.methods = j.value("methods", std::vector<std::string>{"ksos"});
    cfg.n_grid = j.value("n_grid", std::vector<int>{100});
    for (const auto& s : j.value("seeds", std::vector<std::uint64_t>{0, 1, 2, 3}))
        cfg.seeds.push_back(s);
    cfg.sampler = j.value("sampler", std::string("halton"));
    cfg.kernel_s = j.value("kernel_s", 0.0);
    cfg.sigma = j.value("sigma", 1.0);
    cfg.lambda_grid = j.value("lambda_grid", std::vector<double>{1e-6});
    cfg.sigma_grid = j.value("sigma_grid", std::vector<double>{});
    cfg.cross_validate = j.value("cross_validate", false);
    cfg.gd_steps = j.value("gd_steps", 20);
    cfg.out_dir = j.value("out_dir", std::string("."));
    cfg.write_plot = j.value("write_plot", false);
    if (j.contains("solver")) {
        const json& s = j["solver"];
        cfg.solver.lambda = s.value("lambda", cfg.solver.lambda);
        cfg.solver.eps_barrier = s.value("eps_barrier", cfg.solver.eps_barrier);
        cfg.solver.kappa = s.value("kappa", cfg.solver.kappa);
        cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
        cfg.solver.nu = s.value("nu", cfg.solver.nu);
    }
    return cfg;
}

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

RunRecord run_ksos(const BenchConfig& cfg, const TestFunction& fn, int n, std::uint64_t seed) {
    const int d = fn.d;
    Vector lo = Vector::Constant(d, -1.0), hi = Vector::Constant(d, 1.0);
    Domain domain = Domain::box(lo, hi);
    double s = cfg.kernel_s > 0.0 ? cfg.kernel_s : 0.5 * d + 0.5;

    RunRecord rec;
    rec.method = "ksos";
    rec.n = n;
    rec.seed = seed;
    rec.nu = cfg.solver.nu;
    double t0 = now_ms();

    double lambda = cfg.lambda_grid.front();
    double sigma = cfg.sigma;
    if (cfg.cross_validate) {
        std::vector<double> sgrid = cfg.sigma_grid.empty() ? std::vector<double>{cfg.sigma}
                                                           : cfg.sigma_grid;
        auto sampler = cfg.sampler == "uniform" ? SamplerKind::Uniform : SamplerKind::Halton;
        auto cv = cross_validate(fn.eval, domain, s, cfg.lambda_grid, sgrid, n, seed,
                                 cfg.solver, sampler);
        lambda = cv.best_lambda;
        sigma = cv.best_sigma;
    }
    PointSet pts = cfg.sampler == "uniform" ? sample_uniform(domain, n, seed)
                                            : sample_halton(domain, n, 0);
    SampleSet data = make_sample_set(domain, KernelSpec::make(d, s, sigma), pts, fn.eval);
    SolverConfig scfg = cfg.solver;
    scfg.lambda = lambda;
    SolveOutput sol = solve(data, scfg);

    rec.lambda = lambda;
    rec.sigma = sigma;
    rec.c_hat = sol.c_hat;
    rec.f_at_z = fn.eval(sol.z_hat);
    rec.gap_to_true_min = rec.f_at_z;  // true minimum is 0 by normalization
    rec.iterations = sol.iterations;
    rec.cert_bound = 0.0;
    rec.wall_ms = now_ms() - t0;
    return rec;
}

RunRecord run_baseline(const BenchConfig& cfg, const TestFunction& fn, const std::string& method,
                       int n, std::uint64_t seed) {
    const int d = fn.d;
    Domain domain = Domain::box(Vector::Constant(d, -1.0), Vector::Constant(d, 1.0));
    RunRecord rec;
    rec.method = method;
    rec.n = n;
    rec.seed = seed;
    double t0 = now_ms();
    BaselineResult res;
    if (method == "random_search") {
        auto sampler = cfg.sampler == "uniform" ? SamplerKind::Uniform : SamplerKind::Halton;
        res = random_search(fn.eval, domain, n, sampler, seed);
    } else {
        res = random_gd_tuned(fn.eval, domain, n, cfg.gd_steps, seed);
    }
    rec.c_hat = res.best_f;
    rec.f_at_z = res.best_f;
    rec.gap_to_true_min = res.best_f;
    rec.iterations = static_cast<int>(res.evaluations);
    rec.wall_ms = now_ms() - t0;
    return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const BenchConfig& cfg) {
    TestFunction fn = build_test_function(cfg.function);
    std::vector<RunRecord> records;
    std::vector<std::string> errors;
    for (const std::string& method : cfg.methods)
        for (int n : cfg.n_grid)
            for (std::uint64_t seed : cfg.seeds) {
                try {
                    records.push_back(method == "ksos" ? run_ksos(cfg, fn, n, seed)
                                                       : run_baseline(cfg, fn, method, n, seed));
                } catch (const std::exception& e) {
                    errors.push_back(method + "/n=" + std::to_string(n) +
                                     "/seed=" + std::to_string(seed) + ": " + e.what());
                }
            }

    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream csv(cfg.out_dir + "/results.csv");
    csv << csv_header() << '\n';
    for (const auto& r : records) csv << to_csv_row(r) << '\n';
    if (!errors.empty()) {
        std::ofstream manifest(cfg.out_dir + "/errors.txt");
        for (const auto& e : errors) manifest << e << '\n';
        throw std::runtime_error("run_experiment: " + std::to_string(errors.size()) +
                                 " run(s) failed; see errors.txt");
    }
    if (cfg.write_plot) write_svg_plot(records, cfg.out_dir + "/error_vs_n.svg");
    return records;
}

void write_svg_plot(const std::vector<RunRecord>& records, const std::string& path) {
    // median gap per (method, n), log-log
    std::map<std::string, std::map<int, std::vector<double>>> by;
    for (const auto& r : records) by[r.method][r.n].push_back(std::max(r.gap_to_true_min, 1e-12));
    const double W = 640, H = 480, ml = 60, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [m, pts] : by)
        for (auto& [n, v] : pts) {
            std::sort(v.begin(), v.end());
            double med = v[v.size() / 2];
            xmin = std::min(xmin, std::log10((double)n));
            xmax = std::max(xmax, std::log10((double)n));
            ymin = std::min(ymin, std::log10(med));
            ymax = std::max(ymax, std::log10(med));
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto X = [&](double n) { return ml + (std::log10(n) - xmin) / (xmax - xmin) * (W - ml - 20); };
    auto Y = [&](double g) {
        return H - mb - (std::log10(g) - ymin) / (ymax - ymin) * (H - mb - 20);
    };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ofstream svg(path);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << W / 2 << "' y='" << H - 10 << "' text-anchor='middle'>n</text>\n";
    svg << "<text x='15' y='" << H / 2 << "' transform='rotate(-90 15 " << H / 2
        << ")' text-anchor='middle'>median error</text>\n";
    int ci = 0;
    for (auto& [m, pts] : by) {
        std::string color = colors[ci % 4];
        svg << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
        for (auto& [n, v] : pts) svg << X(n) << ',' << Y(v[v.size() / 2]) << ' ';
        svg << "'/>\n";
        svg << "<text x='" << W - 150 << "' y='" << 30 + 18 * ci << "' fill='" << color << "'>"
            << m << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
}

}  // namespace ksos
