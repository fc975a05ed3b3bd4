/* hetsearch: discrete search over heterogeneous integer/boolean parameter
 * spaces under string-expressed constraints.
 *
 * C API over the C++ engine. All objects are opaque handles created and
 * destroyed here; every fallible call returns an hs_status and, when given,
 * writes a NUL-terminated message into the caller's error buffer.
 *
 * Problems are immutable once parsed and may be shared across threads;
 * results are independent of the problem they came from.
 */
#ifndef HETSEARCH_H
#define HETSEARCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
    HS_OK = 0,
    HS_ERR_PARSE = 1,      /* JSON syntax error or schema violation */
    HS_ERR_EVAL = 2,       /* expression evaluation failed at runtime */
    HS_ERR_IO = 3,         /* reserved for callers doing file I/O */
    HS_ERR_TOO_LARGE = 4,  /* enumeration space above the oracle limit */
    HS_ERR_INFEASIBLE = 5, /* no feasible assignment exists */
    HS_ERR_ARG = 6         /* invalid argument or handle misuse */
} hs_status;

typedef enum hs_strategy {
    HS_STRATEGY_UNIFORM = 0,
    HS_STRATEGY_LINEAR = 1,
    HS_STRATEGY_SQUARE = 2
} hs_strategy;

typedef struct hs_problem hs_problem;
typedef struct hs_result hs_result;

typedef struct hs_config {
    int64_t population;    /* even, >= 2 */
    int64_t iterations;    /* full sweeps, >= 1 */
    int32_t strategy;      /* hs_strategy */
    uint64_t seed;
    int64_t scan_cap;      /* exhaustive-scan threshold, >= 2 */
    int64_t init_attempts; /* per-member rejection resamples, >= 1 */
} hs_config;

const char* hs_version(void);

/* Parse and validate a problem document (UTF-8 JSON). On success *out owns
 * the handle; free it with hs_problem_free. */
hs_status hs_problem_parse(const char* json_text, size_t length, hs_problem** out,
                           char* err, size_t err_cap);
void hs_problem_free(hs_problem* p);

size_t hs_problem_param_count(const hs_problem* p);
const char* hs_problem_param_path(const hs_problem* p, size_t index);
hs_status hs_problem_param_bounds(const hs_problem* p, size_t index, int64_t* lo,
                                  int64_t* hi);
size_t hs_problem_constraint_count(const hs_problem* p);

/* Built-in defaults overlaid with the file's config block. */
hs_status hs_problem_default_config(const hs_problem* p, hs_config* out);

/* Run the evolution search. Deterministic for a fixed (problem, config). */
hs_status hs_run(const hs_problem* p, const hs_config* cfg, hs_result** out,
                 char* err, size_t err_cap);

/* Exhaustively enumerate the lattice (up to 10^7 points) and return the
 * optimum. The result carries an empty trace. */
hs_status hs_oracle(const hs_problem* p, hs_result** out, char* err, size_t err_cap);

void hs_result_free(hs_result* r);
int64_t hs_result_best_cost(const hs_result* r);
hs_status hs_result_value(const hs_result* r, const char* path, int64_t* out);
uint64_t hs_result_seed(const hs_result* r);
int32_t hs_result_strategy(const hs_result* r);
int64_t hs_result_iterations_run(const hs_result* r);
int64_t hs_result_total_resets(const hs_result* r);

/* Per-sweep trace; entry 0 describes the initial population. */
size_t hs_result_trace_len(const hs_result* r);
hs_status hs_result_trace_entry(const hs_result* r, size_t index, int64_t* iteration,
                                int64_t* best_cost, double* mean_cost,
                                int64_t* resets);

#ifdef __cplusplus
}
#endif

#endif /* HETSEARCH_H */
