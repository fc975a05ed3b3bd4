#include "hetsearch/hetsearch.h"

#include <cstring>
#include <string>

#include "evolution.hpp"
#include "problem.hpp"

using namespace hetsearch;

struct hs_problem {
    ProblemSpec spec;
};

struct hs_result {
    SearchResult result;
    std::vector<std::string> paths;  // FlatSpace order, aligned with result.best
};

namespace {

void write_error(char* err, size_t err_cap, const char* message) {
    if (err == nullptr || err_cap == 0) {
        return;
    }
    std::strncpy(err, message, err_cap - 1);
    err[err_cap - 1] = '\0';
}

hs_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse: return HS_ERR_PARSE;
        case ErrorKind::eval: return HS_ERR_EVAL;
        case ErrorKind::io: return HS_ERR_IO;
        case ErrorKind::too_large: return HS_ERR_TOO_LARGE;
        case ErrorKind::infeasible: return HS_ERR_INFEASIBLE;
        case ErrorKind::usage: return HS_ERR_ARG;
    }
    return HS_ERR_ARG;
}

template <typename Fn>
hs_status guarded(char* err, size_t err_cap, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        write_error(err, err_cap, e.what());
        return status_of(e.kind());
    } catch (const std::exception& e) {
        write_error(err, err_cap, e.what());
        return HS_ERR_ARG;
    }
}

SearchConfig to_search_config(const hs_config& cfg) {
    SearchConfig out;
    out.population = cfg.population;
    out.iterations = cfg.iterations;
    switch (cfg.strategy) {
        case HS_STRATEGY_UNIFORM: out.strategy = Strategy::uniform; break;
        case HS_STRATEGY_LINEAR: out.strategy = Strategy::linear; break;
        case HS_STRATEGY_SQUARE: out.strategy = Strategy::square; break;
        default:
            fail(ErrorKind::usage, "invalid strategy value");
    }
    out.seed = cfg.seed;
    out.scan_cap = cfg.scan_cap;
    out.init_attempts = cfg.init_attempts;
    return out;
}

int32_t from_strategy(Strategy s) {
    switch (s) {
        case Strategy::uniform: return HS_STRATEGY_UNIFORM;
        case Strategy::linear: return HS_STRATEGY_LINEAR;
        case Strategy::square: return HS_STRATEGY_SQUARE;
    }
    return HS_STRATEGY_SQUARE;
}

}  // namespace

extern "C" {

const char* hs_version(void) {
    return "0.1.0";
}

hs_status hs_problem_parse(const char* json_text, size_t length, hs_problem** out,
                           char* err, size_t err_cap) {
    if (json_text == nullptr || out == nullptr) {
        write_error(err, err_cap, "null argument");
        return HS_ERR_ARG;
    }
    *out = nullptr;
    return guarded(err, err_cap, [&]() {
        auto handle = new hs_problem{parse_problem(std::string_view(json_text, length))};
        *out = handle;
        return HS_OK;
    });
}

void hs_problem_free(hs_problem* p) {
    delete p;
}

size_t hs_problem_param_count(const hs_problem* p) {
    return p == nullptr ? 0 : p->spec.space.size();
}

const char* hs_problem_param_path(const hs_problem* p, size_t index) {
    if (p == nullptr || index >= p->spec.space.size()) {
        return nullptr;
    }
    return p->spec.space.at(index).path.c_str();
}

hs_status hs_problem_param_bounds(const hs_problem* p, size_t index, int64_t* lo,
                                  int64_t* hi) {
    if (p == nullptr || index >= p->spec.space.size() || lo == nullptr || hi == nullptr) {
        return HS_ERR_ARG;
    }
    *lo = p->spec.space.at(index).lo;
    *hi = p->spec.space.at(index).hi;
    return HS_OK;
}

size_t hs_problem_constraint_count(const hs_problem* p) {
    return p == nullptr ? 0 : p->spec.assertions.size();
}

hs_status hs_problem_default_config(const hs_problem* p, hs_config* out) {
    if (p == nullptr || out == nullptr) {
        return HS_ERR_ARG;
    }
    SearchConfig cfg = resolve_config(p->spec);
    out->population = cfg.population;
    out->iterations = cfg.iterations;
    out->strategy = from_strategy(cfg.strategy);
    out->seed = cfg.seed;
    out->scan_cap = cfg.scan_cap;
    out->init_attempts = cfg.init_attempts;
    return HS_OK;
}

hs_status hs_run(const hs_problem* p, const hs_config* cfg, hs_result** out, char* err,
                 size_t err_cap) {
    if (p == nullptr || cfg == nullptr || out == nullptr) {
        write_error(err, err_cap, "null argument");
        return HS_ERR_ARG;
    }
    *out = nullptr;
    return guarded(err, err_cap, [&]() {
        SearchConfig config = to_search_config(*cfg);
        auto handle = new hs_result{run(p->spec, config), p->spec.space.paths()};
        *out = handle;
        return HS_OK;
    });
}

hs_status hs_oracle(const hs_problem* p, hs_result** out, char* err, size_t err_cap) {
    if (p == nullptr || out == nullptr) {
        write_error(err, err_cap, "null argument");
        return HS_ERR_ARG;
    }
    *out = nullptr;
    return guarded(err, err_cap, [&]() {
        auto [best, cost] = brute_force_oracle(p->spec);
        SearchResult r;
        r.best = std::move(best);
        r.best_cost = cost;
        auto handle = new hs_result{std::move(r), p->spec.space.paths()};
        *out = handle;
        return HS_OK;
    });
}

void hs_result_free(hs_result* r) {
    delete r;
}

int64_t hs_result_best_cost(const hs_result* r) {
    return r == nullptr ? 0 : r->result.best_cost;
}

hs_status hs_result_value(const hs_result* r, const char* path, int64_t* out) {
    if (r == nullptr || path == nullptr || out == nullptr) {
        return HS_ERR_ARG;
    }
    for (size_t i = 0; i < r->paths.size(); ++i) {
        if (r->paths[i] == path) {
            *out = r->result.best[i];
            return HS_OK;
        }
    }
    return HS_ERR_ARG;
}

uint64_t hs_result_seed(const hs_result* r) {
    return r == nullptr ? 0 : r->result.seed;
}

int32_t hs_result_strategy(const hs_result* r) {
    return r == nullptr ? 0 : from_strategy(r->result.strategy);
}

int64_t hs_result_iterations_run(const hs_result* r) {
    return r == nullptr ? 0 : r->result.iterations_run;
}

int64_t hs_result_total_resets(const hs_result* r) {
    return r == nullptr ? 0 : r->result.total_resets;
}

size_t hs_result_trace_len(const hs_result* r) {
    return r == nullptr ? 0 : r->result.trace.size();
}

hs_status hs_result_trace_entry(const hs_result* r, size_t index, int64_t* iteration,
                                int64_t* best_cost, double* mean_cost, int64_t* resets) {
    if (r == nullptr || index >= r->result.trace.size()) {
        return HS_ERR_ARG;
    }
    const TraceEntry& e = r->result.trace[index];
    if (iteration != nullptr) *iteration = e.iteration;
    if (best_cost != nullptr) *best_cost = e.best_cost;
    if (mean_cost != nullptr) *mean_cost = e.mean_cost;
    if (resets != nullptr) *resets = e.resets;
    return HS_OK;
}

}  // extern "C"
