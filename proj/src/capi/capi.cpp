#include "gtsp/gtsp.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "core/bench.hpp"
#include "core/clustering.hpp"
#include "core/error.hpp"
#include "core/instance.hpp"
#include "core/memetic.hpp"
#include "core/tour.hpp"

struct gtsp_instance {
    gtsp::GtspInstance impl;
};

struct gtsp_solution {
    gtsp::RunReport impl;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, std::string message) {
    t_last_error = std::move(message);
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) noexcept {
    try {
        return fn();
    } catch (const gtsp::IoError& e) {
        return fail(GTSP_ERR_IO, e.what());
    } catch (const gtsp::ParseError& e) {
        return fail(GTSP_ERR_PARSE, e.what());
    } catch (const gtsp::FormatError& e) {
        return fail(GTSP_ERR_FORMAT, e.what());
    } catch (const gtsp::InvalidInput& e) {
        return fail(GTSP_ERR_INVALID, e.what());
    } catch (const gtsp::InfeasibleError& e) {
        return fail(GTSP_ERR_INFEASIBLE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(GTSP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(GTSP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GTSP_ERR_INTERNAL, "unknown error");
    }
}

int require(bool ok, const char* message) {
    return ok ? GTSP_OK : fail(GTSP_ERR_INVALID, message);
}

int copy_out(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
    size_t want = text.size() + 1;
    if (needed) *needed = want;
    if (!buffer || capacity < want)
        return fail(GTSP_ERR_BUFFER, "buffer of " + std::to_string(want) + " bytes required");
    std::memcpy(buffer, text.c_str(), want);
    return GTSP_OK;
}

gtsp::MemeticParams convert(const gtsp_params& p) {
    gtsp::MemeticParams out;
    out.bls.l0 = p.l0;
    out.bls.lmax = p.lmax;
    out.bls.t = p.t;
    out.bls.gamma = p.gamma;
    out.bls.p0 = p.p0;
    out.bls.q = p.q;
    out.bls.descmax = p.descmax;
    out.bls.sample_size = p.sample_size;
    out.p_mut = p.p_mut;
    out.max_generations = p.max_generations;
    return out;
}

}  // namespace

extern "C" {

const char* gtsp_version(void) { return "1.0.0"; }

const char* gtsp_last_error(void) { return t_last_error.c_str(); }

void gtsp_params_init(gtsp_params* params) {
    if (!params) return;
    gtsp::MemeticParams defaults;
    params->l0 = defaults.bls.l0;
    params->lmax = defaults.bls.lmax;
    params->t = defaults.bls.t;
    params->gamma = defaults.bls.gamma;
    params->p0 = defaults.bls.p0;
    params->q = defaults.bls.q;
    params->descmax = defaults.bls.descmax;
    params->sample_size = defaults.bls.sample_size;
    params->p_mut = defaults.p_mut;
    params->max_generations = defaults.max_generations;
    params->time_limit_seconds = 0.0;
}

int gtsp_params_load(const char* path, gtsp_params* params) {
    if (int rc = require(path && params, "path and params must not be NULL")) return rc;
    return guarded([&]() -> int {
        gtsp::MemeticParams loaded = gtsp::load_params_file(path);
        params->l0 = loaded.bls.l0;
        params->lmax = loaded.bls.lmax;
        params->t = loaded.bls.t;
        params->gamma = loaded.bls.gamma;
        params->p0 = loaded.bls.p0;
        params->q = loaded.bls.q;
        params->descmax = loaded.bls.descmax;
        params->sample_size = loaded.bls.sample_size;
        params->p_mut = loaded.p_mut;
        params->max_generations = loaded.max_generations;
        return GTSP_OK;
    });
}

int gtsp_instance_load(const char* path, gtsp_instance** out) {
    if (int rc = require(path && out, "path and out must not be NULL")) return rc;
    *out = nullptr;
    return guarded([&]() -> int {
        auto* handle = new gtsp_instance{gtsp::load_gtsp(path)};
        *out = handle;
        return GTSP_OK;
    });
}

int gtsp_instance_from_tsplib(const char* path, int clusters, gtsp_instance** out) {
    if (int rc = require(path && out, "path and out must not be NULL")) return rc;
    *out = nullptr;
    return guarded([&]() -> int {
        gtsp::NodeSet nodes = gtsp::load_tsplib(path);
        int m = clusters > 0 ? clusters : gtsp::default_cluster_count(nodes.count());
        auto* handle = new gtsp_instance{gtsp::cluster_instance(std::move(nodes), m)};
        *out = handle;
        return GTSP_OK;
    });
}

int gtsp_instance_write(const gtsp_instance* inst, const char* path) {
    if (int rc = require(inst && path, "instance and path must not be NULL")) return rc;
    return guarded([&]() -> int {
        gtsp::write_gtsp_file(inst->impl, path);
        return GTSP_OK;
    });
}

int gtsp_instance_format(const gtsp_instance* inst, char* buffer, size_t capacity,
                         size_t* needed) {
    if (int rc = require(inst != nullptr, "instance must not be NULL")) return rc;
    return guarded([&]() -> int {
        std::ostringstream text;
        gtsp::write_gtsp(inst->impl, text);
        return copy_out(text.str(), buffer, capacity, needed);
    });
}

void gtsp_instance_free(gtsp_instance* inst) { delete inst; }

int gtsp_instance_node_count(const gtsp_instance* inst) {
    return inst ? inst->impl.node_count() : 0;
}

int gtsp_instance_cluster_count(const gtsp_instance* inst) {
    return inst ? inst->impl.cluster_count() : 0;
}

const char* gtsp_instance_name(const gtsp_instance* inst) {
    return inst ? inst->impl.name().c_str() : "";
}

int gtsp_instance_set_best_known(gtsp_instance* inst, int64_t cost) {
    if (int rc = require(inst != nullptr, "instance must not be NULL")) return rc;
    if (int rc = require(cost > 0, "best known cost must be positive")) return rc;
    inst->impl.set_best_known(cost);
    return GTSP_OK;
}

int gtsp_instance_best_known(const gtsp_instance* inst, int64_t* cost) {
    if (int rc = require(inst && cost, "instance and cost must not be NULL")) return rc;
    auto bk = inst->impl.best_known();
    if (!bk) return fail(GTSP_ERR_INVALID, "no best known cost attached");
    *cost = *bk;
    return GTSP_OK;
}

int gtsp_solve(const gtsp_instance* inst, const gtsp_params* params, uint64_t seed,
               gtsp_solution** out) {
    if (int rc = require(inst && params && out, "instance, params, and out must not be NULL"))
        return rc;
    *out = nullptr;
    return guarded([&]() -> int {
        gtsp::MemeticParams mp = convert(*params);
        gtsp::StopCondition stop;
        if (params->time_limit_seconds > 0) {
            stop.has_deadline = true;
            stop.deadline = std::chrono::steady_clock::now() +
                            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(params->time_limit_seconds));
        }
        auto* handle = new gtsp_solution{gtsp::solve(inst->impl, mp, seed, stop)};
        *out = handle;
        return GTSP_OK;
    });
}

int gtsp_solution_cost(const gtsp_solution* sol, int64_t* cost) {
    if (int rc = require(sol && cost, "solution and cost must not be NULL")) return rc;
    *cost = sol->impl.best_cost;
    return GTSP_OK;
}

int gtsp_solution_length(const gtsp_solution* sol) {
    return sol ? sol->impl.best_tour.size() : 0;
}

int gtsp_solution_visit(const gtsp_solution* sol, int position, int* cluster, int* node) {
    if (int rc = require(sol && cluster && node, "solution, cluster, and node must not be NULL"))
        return rc;
    if (position < 0 || position >= sol->impl.best_tour.size())
        return fail(GTSP_ERR_INVALID, "position out of range");
    *cluster = sol->impl.best_tour.clusters[static_cast<size_t>(position)];
    *node = sol->impl.best_tour.nodes[static_cast<size_t>(position)];
    return GTSP_OK;
}

int gtsp_solution_stats(const gtsp_solution* sol, int* generations, int64_t* descents,
                        double* wall_seconds) {
    if (int rc = require(sol != nullptr, "solution must not be NULL")) return rc;
    if (generations) *generations = sol->impl.generations;
    if (descents) *descents = sol->impl.descents;
    if (wall_seconds) *wall_seconds = sol->impl.wall_seconds;
    return GTSP_OK;
}

int gtsp_solution_dev(const gtsp_solution* sol, double* dev) {
    if (int rc = require(sol && dev, "solution and dev must not be NULL")) return rc;
    if (!sol->impl.dev) return fail(GTSP_ERR_INVALID, "no best known cost was attached");
    *dev = *sol->impl.dev;
    return GTSP_OK;
}

int gtsp_solution_format(const gtsp_solution* sol, char* buffer, size_t capacity,
                         size_t* needed) {
    if (int rc = require(sol != nullptr, "solution must not be NULL")) return rc;
    return guarded([&]() -> int {
        return copy_out(gtsp::format_tour_line(sol->impl.best_tour, sol->impl.best_cost), buffer,
                        capacity, needed);
    });
}

void gtsp_solution_free(gtsp_solution* sol) { delete sol; }

int gtsp_tour_cost(const gtsp_instance* inst, const char* tour_line, int64_t* cost) {
    if (int rc = require(inst && tour_line && cost, "instance, line, and cost must not be NULL"))
        return rc;
    return guarded([&]() -> int {
        gtsp::ParsedTour parsed;
        try {
            parsed = gtsp::parse_tour_line(tour_line);
            gtsp::validate_tour(inst->impl, parsed.tour);
        } catch (const gtsp::Error& e) {
            return fail(GTSP_ERR_INFEASIBLE, e.what());
        }
        std::int64_t actual = gtsp::tour_cost(inst->impl, parsed.tour);
        if (actual != parsed.cost)
            return fail(GTSP_ERR_INFEASIBLE, "stated cost " + std::to_string(parsed.cost) +
                                                 " differs from recomputed " +
                                                 std::to_string(actual));
        *cost = actual;
        return GTSP_OK;
    });
}

int gtsp_best_known_lookup(const char* sidecar_path, const char* name, int64_t* cost) {
    if (int rc = require(sidecar_path && name && cost, "path, name, and cost must not be NULL"))
        return rc;
    return guarded([&]() -> int {
        auto table = gtsp::load_best_known(sidecar_path);
        auto hit = table.find(name);
        if (hit == table.end())
            return fail(GTSP_ERR_INVALID, std::string("no entry for '") + name + "'");
        *cost = hit->second;
        return GTSP_OK;
    });
}

int gtsp_bench_run(const char* config_path, int jobs_override, char** text_out) {
    if (int rc = require(config_path && text_out, "config path and text_out must not be NULL"))
        return rc;
    *text_out = nullptr;
    return guarded([&]() -> int {
        gtsp::BenchConfig cfg = gtsp::load_bench_config(config_path);
        std::string text = gtsp::run_benchmark_and_write(cfg, jobs_override);
        char* copy = static_cast<char*>(std::malloc(text.size() + 1));
        if (!copy) return fail(GTSP_ERR_INTERNAL, "out of memory");
        std::memcpy(copy, text.c_str(), text.size() + 1);
        *text_out = copy;
        return GTSP_OK;
    });
}

void gtsp_string_free(char* text) { std::free(text); }

}  // extern "C"
