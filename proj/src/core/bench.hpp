#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/memetic.hpp"

namespace gtsp {

enum class BenchFormat { Csv, Markdown, Both };

struct BenchConfig {
    std::vector<std::string> instances;  // .gtsp loaded as-is, anything else clustered
    int runs = 20;
    std::uint64_t seed = 1;
    double time_limit = 120.0;  // seconds per run; <= 0 means none
    int jobs = 1;
    std::string output;        // CSV destination; empty keeps it on stdout
    std::string tours_output;  // optional per-run tour dump
    BenchFormat format = BenchFormat::Csv;
    std::string best_known_path;
    MemeticParams params;

    void validate() const;
};

// One flat "key = value" assignment shared between the solver parameter file
// and the bench config. Returns false for keys it does not own.
bool apply_solver_key(MemeticParams& params, const std::string& key, const std::string& value);

MemeticParams load_params_file(const std::string& path);

// Flat key = value lines; '#' comments. Relative paths resolve against
// base_dir. Unknown keys are errors.
BenchConfig parse_bench_config(std::istream& in, const std::string& base_dir);
BenchConfig load_bench_config(const std::string& path);

// 100 * (f_avg - best) / best.
double compute_dev(double f_avg, std::int64_t best);

struct InstanceSummary {
    std::string name;
    int nodes = 0;
    int clusters = 0;
    std::optional<std::int64_t> best_known;
    std::int64_t best_found = 0;
    double avg_cost = 0.0;
    std::optional<double> dev;
    int hits = 0;  // runs that reached the best known cost
    double avg_cpu = 0.0;
    std::vector<RunReport> runs;
};

struct BenchReport {
    std::vector<InstanceSummary> rows;
    std::optional<double> avg_dev;
    double avg_cpu = 0.0;
};

// runs seeded solves per instance on a pool of `jobs` workers. Every reported
// tour is serialized, re-parsed, re-validated, and its cost recomputed before
// it enters the report. Results are independent of the worker count: each
// run's seed is derived from (master seed, instance name, run index) alone.
BenchReport run_benchmark(const BenchConfig& cfg, int jobs_override = 0);

// Deterministic apart from the CPU columns.
std::string bench_csv(const BenchReport& report);
std::string bench_markdown(const BenchReport& report);
// "<instance> <seed> <tour line>" per run; fully deterministic.
std::string bench_tours(const BenchReport& report);

// Runs the benchmark, writes the configured files, and returns the text a
// command-line caller should print.
std::string run_benchmark_and_write(const BenchConfig& cfg, int jobs_override = 0);

}  // namespace gtsp
