#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "core/clustering.hpp"
#include "core/error.hpp"

namespace gtsp {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::int64_t to_int(const std::string& value, const char* key, int line) {
    std::int64_t out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ParseError(std::string(key) + " expects an integer, got '" + value + "'", line);
    return out;
}

double to_real(const std::string& value, const char* key, int line) {
    char* end = nullptr;
    double out = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
        throw ParseError(std::string(key) + " expects a number, got '" + value + "'", line);
    return out;
}

bool to_bool(const std::string& value, const char* key, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError(std::string(key) + " expects true or false, got '" + value + "'", line);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void BenchConfig::validate() const {
    if (runs < 1) throw InvalidInput("runs must be at least 1");
    if (jobs < 1) throw InvalidInput("jobs must be at least 1");
    for (const auto& path : instances)
        if (path.empty()) throw InvalidInput("empty instance path");
    params.validate();
}

bool apply_solver_key(MemeticParams& params, const std::string& key, const std::string& value) {
    const int line = 0;
    if (key == "l0") params.bls.l0 = static_cast<int>(to_int(value, "l0", line));
    else if (key == "lmax") params.bls.lmax = static_cast<int>(to_int(value, "lmax", line));
    else if (key == "t") params.bls.t = static_cast<int>(to_int(value, "t", line));
    else if (key == "gamma") params.bls.gamma = static_cast<int>(to_int(value, "gamma", line));
    else if (key == "p0") params.bls.p0 = to_real(value, "p0", line);
    else if (key == "q") params.bls.q = to_real(value, "q", line);
    else if (key == "descmax") params.bls.descmax = static_cast<int>(to_int(value, "descmax", line));
    else if (key == "sample_size")
        params.bls.sample_size = static_cast<int>(to_int(value, "sample_size", line));
    else if (key == "exhaustive_candidates")
        params.bls.exhaustive_candidates = to_bool(value, "exhaustive_candidates", line);
    else if (key == "p_mut") params.p_mut = to_real(value, "p_mut", line);
    else if (key == "max_generations")
        params.max_generations = static_cast<int>(to_int(value, "max_generations", line));
    else return false;
    return true;
}

namespace {

// Shared line loop for the two flat-file formats.
template <typename Handler>
void parse_flat_file(std::istream& in, Handler&& handle) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value', got '" + stripped + "'", line_no);
        auto key = trim(stripped.substr(0, eq));
        auto value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key", line_no);
        handle(key, value, line_no);
    }
}

}  // namespace

MemeticParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    MemeticParams params;
    parse_flat_file(in, [&](const std::string& key, const std::string& value, int line_no) {
        if (!apply_solver_key(params, key, value))
            throw ParseError("unknown parameter '" + key + "'", line_no);
    });
    return params;
}

BenchConfig parse_bench_config(std::istream& in, const std::string& base_dir) {
    BenchConfig cfg;
    parse_flat_file(in, [&](const std::string& key, const std::string& value, int line_no) {
        if (apply_solver_key(cfg.params, key, value)) return;
        if (key == "instance") {
            if (value.empty()) throw ParseError("instance expects a path", line_no);
            cfg.instances.push_back(resolve(base_dir, value));
        } else if (key == "runs") {
            cfg.runs = static_cast<int>(to_int(value, "runs", line_no));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(to_int(value, "seed", line_no));
        } else if (key == "time_limit") {
            cfg.time_limit = to_real(value, "time_limit", line_no);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(to_int(value, "jobs", line_no));
        } else if (key == "output") {
            cfg.output = resolve(base_dir, value);
        } else if (key == "tours_output") {
            cfg.tours_output = resolve(base_dir, value);
        } else if (key == "best_known") {
            cfg.best_known_path = resolve(base_dir, value);
        } else if (key == "format") {
            if (value == "csv") cfg.format = BenchFormat::Csv;
            else if (value == "markdown") cfg.format = BenchFormat::Markdown;
            else if (value == "both") cfg.format = BenchFormat::Both;
            else throw ParseError("format must be csv, markdown, or both", line_no);
        } else {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
    });
    cfg.validate();
    return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    auto base = std::filesystem::path(path).parent_path().string();
    return parse_bench_config(in, base);
}

double compute_dev(double f_avg, std::int64_t best) {
    if (best <= 0) throw InvalidInput("best known cost must be positive");
    return 100.0 * (f_avg - static_cast<double>(best)) / static_cast<double>(best);
}

BenchReport run_benchmark(const BenchConfig& cfg, int jobs_override) {
    cfg.validate();

    std::unordered_map<std::string, std::int64_t> best_known;
    if (!cfg.best_known_path.empty()) best_known = load_best_known(cfg.best_known_path);

    std::vector<GtspInstance> instances;
    instances.reserve(cfg.instances.size());
    for (const auto& path : cfg.instances) {
        GtspInstance inst = [&] {
            if (ends_with(path, ".gtsp")) return load_gtsp(path);
            NodeSet nodes = load_tsplib(path);
            int m = default_cluster_count(nodes.count());
            return cluster_instance(std::move(nodes), m);
        }();
        auto hit = best_known.find(inst.name());
        if (hit != best_known.end()) inst.set_best_known(hit->second);
        instances.push_back(std::move(inst));
    }

    struct Task {
        std::size_t instance;
        int run;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (int r = 0; r < cfg.runs; ++r) tasks.push_back({i, r});

    std::vector<RunReport> results(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::atomic<std::size_t> cursor{0};

    auto worker = [&]() {
        for (;;) {
            std::size_t k = cursor.fetch_add(1, std::memory_order_relaxed);
            if (k >= tasks.size()) return;
            const Task& task = tasks[k];
            try {
                const GtspInstance& inst = instances[task.instance];
                StopCondition stop;
                if (cfg.time_limit > 0) {
                    stop.has_deadline = true;
                    stop.deadline = std::chrono::steady_clock::now() +
                                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                        std::chrono::duration<double>(cfg.time_limit));
                }
                std::uint64_t run_seed = derive_seed(derive_seed(cfg.seed, hash_name(inst.name())),
                                                     static_cast<std::uint64_t>(task.run));
                results[k] = solve(inst, cfg.params, run_seed, stop);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };

    int jobs = jobs_override > 0 ? jobs_override : cfg.jobs;
    if (jobs <= 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        int spawn = std::min<int>(jobs, static_cast<int>(tasks.size()));
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    BenchReport report;
    report.rows.reserve(instances.size());
    double dev_sum = 0.0;
    int dev_count = 0;
    double cpu_sum = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const GtspInstance& inst = instances[i];
        InstanceSummary row;
        row.name = inst.name();
        row.nodes = inst.node_count();
        row.clusters = inst.cluster_count();
        row.best_known = inst.best_known();
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        double cost_sum = 0.0, time_sum = 0.0;
        for (int r = 0; r < cfg.runs; ++r) {
            RunReport& run = results[i * static_cast<std::size_t>(cfg.runs) +
                                     static_cast<std::size_t>(r)];
            // Round-trip the reported tour before trusting the row.
            auto parsed = parse_tour_line(format_tour_line(run.best_tour, run.best_cost));
            validate_tour(inst, parsed.tour);
            if (parsed.cost != run.best_cost || tour_cost(inst, parsed.tour) != run.best_cost)
                throw InfeasibleError("reported cost mismatch for " + inst.name() + " seed " +
                                      std::to_string(run.seed));
            best = std::min(best, run.best_cost);
            cost_sum += static_cast<double>(run.best_cost);
            time_sum += run.wall_seconds;
            if (run.reached_best_known) ++row.hits;
            row.runs.push_back(std::move(run));
        }
        row.best_found = best;
        row.avg_cost = cost_sum / cfg.runs;
        row.avg_cpu = time_sum / cfg.runs;
        if (row.best_known) {
            row.dev = compute_dev(row.avg_cost, *row.best_known);
            dev_sum += *row.dev;
            ++dev_count;
        }
        cpu_sum += row.avg_cpu;
        report.rows.push_back(std::move(row));
    }
    if (dev_count > 0) report.avg_dev = dev_sum / dev_count;
    if (!report.rows.empty()) report.avg_cpu = cpu_sum / static_cast<double>(report.rows.size());
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "instance,nodes,clusters,runs,best_known,best_found,avg_cost,dev_percent,hits,avg_cpu_s\n";
    for (const auto& row : report.rows) {
        out << row.name << "," << row.nodes << "," << row.clusters << "," << row.runs.size() << ",";
        if (row.best_known) out << *row.best_known;
        out << "," << row.best_found << "," << format_fixed(row.avg_cost, 2) << ",";
        if (row.dev) out << format_fixed(*row.dev, 2);
        out << "," << row.hits << "," << format_fixed(row.avg_cpu, 3) << "\n";
    }
    if (!report.rows.empty()) {
        out << "AVERAGE,,,,,,,";
        if (report.avg_dev) out << format_fixed(*report.avg_dev, 2);
        out << ",," << format_fixed(report.avg_cpu, 3) << "\n";
    }
    return out.str();
}

std::string bench_markdown(const BenchReport& report) {
    std::ostringstream out;
    out << "| Instance | n | m | Best | Found | Avg | dev(%) | CPU(s) |\n";
    out << "|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& row : report.rows) {
        out << "| " << row.name << " | " << row.nodes << " | " << row.clusters << " | ";
        if (row.best_known) out << *row.best_known;
        else out << "-";
        out << " | " << row.best_found << " | " << format_fixed(row.avg_cost, 2) << " | ";
        if (row.dev) out << format_fixed(*row.dev, 2);
        else out << "-";
        out << " | " << format_fixed(row.avg_cpu, 3) << " |\n";
    }
    if (!report.rows.empty()) {
        out << "| Average |  |  |  |  |  | "
            << (report.avg_dev ? format_fixed(*report.avg_dev, 2) : std::string("-")) << " | "
            << format_fixed(report.avg_cpu, 3) << " |\n";
    }
    return out.str();
}

std::string bench_tours(const BenchReport& report) {
    std::ostringstream out;
    for (const auto& row : report.rows)
        for (const auto& run : row.runs)
            out << row.name << " " << run.seed << " "
                << format_tour_line(run.best_tour, run.best_cost) << "\n";
    return out.str();
}

std::string run_benchmark_and_write(const BenchConfig& cfg, int jobs_override) {
    BenchReport report = run_benchmark(cfg, jobs_override);
    if (!cfg.tours_output.empty()) write_text_file(cfg.tours_output, bench_tours(report));

    std::string csv = bench_csv(report);
    std::string md = bench_markdown(report);
    switch (cfg.format) {
        case BenchFormat::Csv:
            if (cfg.output.empty()) return csv;
            write_text_file(cfg.output, csv);
            return {};
        case BenchFormat::Markdown:
            if (cfg.output.empty()) return md;
            write_text_file(cfg.output, md);
            return {};
        case BenchFormat::Both:
            if (cfg.output.empty()) return csv + "\n" + md;
            write_text_file(cfg.output, csv);
            return md;
    }
    return {};
}

}  // namespace gtsp
