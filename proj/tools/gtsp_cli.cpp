// Command-line front end. Talks to the solver exclusively through the C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtsp/gtsp.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

int exit_code_for(int status) {
    switch (status) {
        case GTSP_OK: return 0;
        case GTSP_ERR_IO:
        case GTSP_ERR_PARSE:
        case GTSP_ERR_FORMAT:
        case GTSP_ERR_INVALID: return kExitUsage;
        default: return kExitValidation;
    }
}

int report_failure(int status) {
    std::fprintf(stderr, "error: %s\n", gtsp_last_error());
    return exit_code_for(status);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// .gtsp files come with their partition; anything else gets the default one.
int open_instance(const std::string& path, gtsp_instance** out) {
    return has_suffix(path, ".gtsp") ? gtsp_instance_load(path.c_str(), out)
                                     : gtsp_instance_from_tsplib(path.c_str(), 0, out);
}

struct SolveArgs {
    std::string instance;
    std::uint64_t seed = 1;
    std::int64_t best_known = 0;
    std::string params_file;
    double time_limit = 0.0;
};

int run_solve(const SolveArgs& args, const gtsp_params& params) {
    gtsp_instance* inst = nullptr;
    if (int rc = open_instance(args.instance, &inst)) return report_failure(rc);

    if (args.best_known > 0) {
        if (int rc = gtsp_instance_set_best_known(inst, args.best_known)) {
            gtsp_instance_free(inst);
            return report_failure(rc);
        }
    }

    gtsp_solution* sol = nullptr;
    int rc = gtsp_solve(inst, &params, args.seed, &sol);
    if (rc != GTSP_OK) {
        gtsp_instance_free(inst);
        return report_failure(rc);
    }

    size_t needed = 0;
    gtsp_solution_format(sol, nullptr, 0, &needed);
    std::vector<char> line(needed);
    if ((rc = gtsp_solution_format(sol, line.data(), line.size(), &needed)) != GTSP_OK) {
        gtsp_solution_free(sol);
        gtsp_instance_free(inst);
        return report_failure(rc);
    }

    // The solver's own output must withstand the same validation users get.
    int64_t recomputed = 0;
    if ((rc = gtsp_tour_cost(inst, line.data(), &recomputed)) != GTSP_OK) {
        gtsp_solution_free(sol);
        gtsp_instance_free(inst);
        return report_failure(rc);
    }

    std::printf("%s\n", line.data());

    int generations = 0;
    int64_t descents = 0;
    double wall = 0.0;
    gtsp_solution_stats(sol, &generations, &descents, &wall);
    std::fprintf(stderr, "instance=%s seed=%" PRIu64 " cost=%" PRId64, gtsp_instance_name(inst),
                 args.seed, recomputed);
    double dev = 0.0;
    if (gtsp_solution_dev(sol, &dev) == GTSP_OK) std::fprintf(stderr, " dev=%.2f%%", dev);
    std::fprintf(stderr, " generations=%d descents=%" PRId64 " time=%.3fs\n", generations,
                 descents, wall);

    gtsp_solution_free(sol);
    gtsp_instance_free(inst);
    return 0;
}

int run_cluster(const std::string& path, int clusters, const std::string& output) {
    gtsp_instance* inst = nullptr;
    if (int rc = gtsp_instance_from_tsplib(path.c_str(), clusters, &inst))
        return report_failure(rc);

    int rc;
    if (!output.empty()) {
        rc = gtsp_instance_write(inst, output.c_str());
    } else {
        size_t needed = 0;
        gtsp_instance_format(inst, nullptr, 0, &needed);
        std::vector<char> text(needed);
        rc = gtsp_instance_format(inst, text.data(), text.size(), &needed);
        if (rc == GTSP_OK) std::fputs(text.data(), stdout);
    }
    gtsp_instance_free(inst);
    return rc == GTSP_OK ? 0 : report_failure(rc);
}

int run_bench(const std::string& config, int jobs) {
    char* text = nullptr;
    int rc = gtsp_bench_run(config.c_str(), jobs, &text);
    if (rc != GTSP_OK) return report_failure(rc);
    if (text && *text) std::fputs(text, stdout);
    gtsp_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered travelling-salesman solver"};
    app.set_version_flag("--version", gtsp_version());
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve one instance and print the tour");
    solve->add_option("instance", solve_args.instance, "Instance file (.gtsp or TSPLIB)")
        ->required();
    solve->add_option("--seed", solve_args.seed, "Seed for the run");
    solve->add_option("--best-known", solve_args.best_known,
                      "Known best cost; enables early stop and the dev line");
    solve->add_option("--params", solve_args.params_file, "key = value parameter file");
    solve->add_option("--time-limit", solve_args.time_limit, "Wall-clock limit in seconds");

    std::string bench_config;
    int bench_jobs = 0;
    auto* bench = app.add_subcommand("bench", "Run a benchmark config");
    bench->add_option("--config", bench_config, "Benchmark config file")->required();
    bench->add_option("--jobs", bench_jobs, "Worker threads (overrides the config)");

    std::string cluster_path, cluster_output;
    int cluster_m = 0;
    auto* cluster = app.add_subcommand("cluster", "Partition a TSPLIB file into clusters");
    cluster->add_option("tsplib", cluster_path, "TSPLIB instance")->required();
    cluster->add_option("--m", cluster_m, "Cluster count (default ceil(n/5))");
    cluster->add_option("--output", cluster_output, "Write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (solve->parsed()) {
        gtsp_params params;
        gtsp_params_init(&params);
        if (!solve_args.params_file.empty()) {
            if (int rc = gtsp_params_load(solve_args.params_file.c_str(), &params))
                return report_failure(rc);
        }
        params.time_limit_seconds = solve_args.time_limit;
        return run_solve(solve_args, params);
    }
    if (bench->parsed()) return run_bench(bench_config, bench_jobs);
    if (cluster->parsed()) return run_cluster(cluster_path, cluster_m, cluster_output);
    return kExitUsage;
}
