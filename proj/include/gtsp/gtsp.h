#ifndef GTSP_H
#define GTSP_H

/* C interface to the clustered-tour solver. Objects are opaque handles;
 * every function that can fail returns a gtsp_status and leaves a message
 * retrievable through gtsp_last_error() on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(GTSP_BUILD)
#define GTSP_API __attribute__((visibility("default")))
#else
#define GTSP_API
#endif

typedef enum gtsp_status {
    GTSP_OK = 0,
    GTSP_ERR_IO = 1,         /* file missing or unreadable/unwritable */
    GTSP_ERR_PARSE = 2,      /* malformed input, message names the line */
    GTSP_ERR_FORMAT = 3,     /* recognized but unsupported input variant */
    GTSP_ERR_INVALID = 4,    /* argument or value out of contract */
    GTSP_ERR_INFEASIBLE = 5, /* tour violates the instance or fails validation */
    GTSP_ERR_BUFFER = 6,     /* caller buffer too small, *needed tells the size */
    GTSP_ERR_INTERNAL = 7
} gtsp_status;

typedef struct gtsp_instance gtsp_instance;
typedef struct gtsp_solution gtsp_solution;

/* Search parameters. Integer fields set to 0 are derived from the instance
 * (lmax, gamma, sample_size, max_generations); time_limit_seconds <= 0 means
 * no limit. gtsp_params_init fills the defaults. */
typedef struct gtsp_params {
    int l0;
    int lmax;
    int t;
    int gamma;
    double p0;
    double q;
    int descmax;
    int sample_size;
    double p_mut;
    int max_generations;
    double time_limit_seconds;
} gtsp_params;

GTSP_API const char* gtsp_version(void);

/* Message from the last failing call on this thread; never NULL. */
GTSP_API const char* gtsp_last_error(void);

GTSP_API void gtsp_params_init(gtsp_params* params);

/* Fills *params from a flat "key = value" file: defaults overridden by the
 * keys present. Unknown keys are parse errors; time_limit_seconds is left
 * untouched. */
GTSP_API int gtsp_params_load(const char* path, gtsp_params* params);

/* Clustered instance file (TSPLIB body plus GTSP_SETS / GTSP_SET_SECTION). */
GTSP_API int gtsp_instance_load(const char* path, gtsp_instance** out);

/* Plain TSPLIB file partitioned into `clusters` clusters (0 = ceil(n/5)). */
GTSP_API int gtsp_instance_from_tsplib(const char* path, int clusters, gtsp_instance** out);

GTSP_API int gtsp_instance_write(const gtsp_instance* inst, const char* path);

/* Serializes the instance into buffer (NUL-terminated). With a too-small or
 * NULL buffer, stores the required size in *needed and returns
 * GTSP_ERR_BUFFER. */
GTSP_API int gtsp_instance_format(const gtsp_instance* inst, char* buffer, size_t capacity,
                                  size_t* needed);

GTSP_API void gtsp_instance_free(gtsp_instance* inst);

GTSP_API int gtsp_instance_node_count(const gtsp_instance* inst);
GTSP_API int gtsp_instance_cluster_count(const gtsp_instance* inst);

/* Owned by the instance; valid until gtsp_instance_free. */
GTSP_API const char* gtsp_instance_name(const gtsp_instance* inst);

GTSP_API int gtsp_instance_set_best_known(gtsp_instance* inst, int64_t cost);

/* GTSP_ERR_INVALID when no best known cost is attached. */
GTSP_API int gtsp_instance_best_known(const gtsp_instance* inst, int64_t* cost);

/* Deterministic for fixed (instance, params, seed). Stops early when the
 * instance's best known cost is reached or the time limit expires. */
GTSP_API int gtsp_solve(const gtsp_instance* inst, const gtsp_params* params, uint64_t seed,
                        gtsp_solution** out);

GTSP_API int gtsp_solution_cost(const gtsp_solution* sol, int64_t* cost);
GTSP_API int gtsp_solution_length(const gtsp_solution* sol);

/* 0-based cluster and node at a tour position. */
GTSP_API int gtsp_solution_visit(const gtsp_solution* sol, int position, int* cluster, int* node);

GTSP_API int gtsp_solution_stats(const gtsp_solution* sol, int* generations, int64_t* descents,
                                 double* wall_seconds);

/* Percent above the best known cost; GTSP_ERR_INVALID when none was set. */
GTSP_API int gtsp_solution_dev(const gtsp_solution* sol, double* dev);

/* "cost ; c1:p1 c2:p2 ..." with 1-based ids; buffer protocol as above. */
GTSP_API int gtsp_solution_format(const gtsp_solution* sol, char* buffer, size_t capacity,
                                  size_t* needed);

GTSP_API void gtsp_solution_free(gtsp_solution* sol);

/* Parses a "cost ; c1:p1 ..." line, validates it against the instance, and
 * recomputes the cost. GTSP_ERR_INFEASIBLE when the tour is invalid or the
 * stated cost disagrees with the recomputation. */
GTSP_API int gtsp_tour_cost(const gtsp_instance* inst, const char* tour_line, int64_t* cost);

/* Looks `name` up in a "name cost" sidecar file. GTSP_ERR_INVALID when the
 * name has no entry. */
GTSP_API int gtsp_best_known_lookup(const char* sidecar_path, const char* name, int64_t* cost);

/* Runs a full benchmark from a config file, writes any configured output
 * files, and hands back the text a CLI should print (free with
 * gtsp_string_free). jobs_override > 0 replaces the config's worker count. */
GTSP_API int gtsp_bench_run(const char* config_path, int jobs_override, char** text_out);

GTSP_API void gtsp_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* GTSP_H */
