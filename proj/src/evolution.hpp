#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "feasibility.hpp"
#include "problem.hpp"

namespace hetsearch {

struct SearchConfig {
    int64_t population = 16;    // N, even
    int64_t iterations = 200;   // K, full sweeps
    Strategy strategy = Strategy::square;
    uint64_t seed = 0;
    int64_t scan_cap = kDefaultScanCap;
    int64_t init_attempts = 100;  // R, per-member rejection resamples

    // Stop once the best cost has not changed for this many sweeps.
    // 0 disables it; off by default so traces stay comparable.
    int64_t early_stop_window = 0;

    void validate() const;  // throws Error(parse) on a bad value
};

// Built-in defaults overlaid with the problem file's config block.
SearchConfig resolve_config(const ProblemSpec& spec);

struct Member {
    Assignment values;
    int64_t cost = 0;
};

// Always exactly N members, sorted by cost ascending (ties keep the older
// member first).
using Population = std::vector<Member>;

struct StepStats {
    int64_t resets = 0;
};

struct TraceEntry {
    int64_t iteration = 0;
    int64_t best_cost = 0;
    double mean_cost = 0.0;
    int64_t resets = 0;
};

struct SearchResult {
    Assignment best;
    int64_t best_cost = 0;
    std::vector<TraceEntry> trace;  // entry 0 is the initial population
    uint64_t seed = 0;
    Strategy strategy = Strategy::square;
    int64_t iterations_run = 0;
    int64_t total_resets = 0;
};

// N assignments drawn uniformly per parameter from the declared bounds; each
// member is redrawn up to R times to reach joint validity and otherwise keeps
// its last draw (the sweep repairs it coordinate-wise).
Population initialize(const ProblemSpec& spec, const SearchConfig& config);

// One sweep: for every parameter in flat order, each member proposes one
// weighted neighbor from its valid set (falling back to the reset set when
// the valid set is empty), then the merged 2N assignments are truncated to
// the N cheapest.
StepStats evolve_step(Population& pop, const ProblemSpec& spec,
                      const SearchConfig& config, int64_t iteration);

// Merge-and-truncate selection; ties retain the earlier (incumbent) entry.
Population select_survivors(std::vector<Member> merged, size_t n);

SearchResult run(const ProblemSpec& spec, const SearchConfig& config);

// Exhaustive reference: enumerates the whole lattice (product of domain
// sizes at most max_points), filters by joint validity and returns the
// minimum-cost assignment, ties broken toward the lexicographically smallest.
// Throws Error(too_large) or Error(infeasible).
std::pair<Assignment, int64_t> brute_force_oracle(const ProblemSpec& spec,
                                                  uint64_t max_points = 10'000'000);

}  // namespace hetsearch
