#pragma once

#include "ksos/baselines.hpp"
#include "ksos/certify.hpp"
#include "ksos/test_functions.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ksos {

// One row of the results CSV.
struct RunRecord {
    std::string method;
    int n = 0;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    double sigma = 0.0;
    double nu = 0.0;
    double c_hat = 0.0;
    double f_at_z = 0.0;
    double gap_to_true_min = 0.0;
    double cert_bound = 0.0;
    int iterations = 0;
    double wall_ms = 0.0;
};

std::string csv_header();
std::string to_csv_row(const RunRecord& rec);
RunRecord from_csv_row(const std::string& line);

// Experiment configuration (JSON file with a versioned schema).
struct BenchConfig {
    int schema_version = 1;
    TestFunctionSpec function;
    std::vector<std::string> methods;  // "ksos", "random_search", "random_gd"
    std::vector<int> n_grid;
    std::vector<std::uint64_t> seeds;
    std::string sampler = "halton";  // or "uniform"
    double kernel_s = 0.0;           // 0 = exponential kernel s = d/2 + 1/2
    double sigma = 1.0;
    std::vector<double> lambda_grid;  // singleton = fixed lambda, no tuning
    std::vector<double> sigma_grid;
    SolverConfig solver;
    int gd_steps = 20;
    bool cross_validate = false;
    std::string out_dir = ".";
    bool write_plot = false;
};

BenchConfig load_config(const std::string& path);

// Executes methods x n-grid x seeds, writes results.csv (and a log-log SVG
// plot of error vs n when requested). Returns the records.
std::vector<RunRecord> run_experiment(const BenchConfig& cfg);

void write_svg_plot(const std::vector<RunRecord>& records, const std::string& path);

}  // namespace ksos
