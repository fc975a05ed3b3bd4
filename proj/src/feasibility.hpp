#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"

namespace hetsearch {

inline constexpr int64_t kDefaultScanCap = 65536;

// The set of in-domain values for one parameter that keep every assertion
// mentioning it truthy under the current values of all other parameters.
// Stored either densely (sorted values) or as a contiguous interval; the
// interval form exists so a reset over a huge domain never materializes it.
struct ValidSet {
    std::string target;
    bool exact = true;

    bool is_interval = false;
    std::vector<int64_t> values;  // dense form, strictly ascending
    int64_t lo = 0;               // interval form, inclusive
    int64_t hi = 0;

    static ValidSet dense(std::string target, std::vector<int64_t> values, bool exact);
    static ValidSet whole_range(std::string target, int64_t lo, int64_t hi);

    bool empty() const { return !is_interval && values.empty(); }
    uint128 size() const;
    bool contains(int64_t v) const;

    // Dense expansion, for inspection and small sets only.
    std::vector<int64_t> materialized() const;
};

// Algorithm: select the assertions mentioning the target, fix every other
// parameter at its current value, and keep the domain points where all of
// them are truthy. Domains up to scan_cap are scanned exhaustively
// (exact = true); larger domains are probed on a sound candidate grid
// (current +/- powers of two, plus an even lattice of scan_cap points) and
// the result is a subset of the true valid set (exact = false).
// current must be complete and in-domain; the target's own current value may
// be infeasible. Evaluation failures are reported with the assertion id and
// the candidate value.
ValidSet valid_set(const std::string& target_path, const Assignment& current,
                   const ProblemSpec& spec, int64_t scan_cap = kDefaultScanCap);

// Backtracking fallback: the full declared domain of the target, bounds only,
// assertions ignored. Used when valid_set comes back empty.
ValidSet reset_set(const std::string& target_path, const ProblemSpec& spec);

// Candidates ranked by |v - current| ascending (ties: smaller value first);
// rank r in a set of size L weighs 1 (uniform), L - r (linear) or (L - r)^2
// (square). Draws `count` independent samples with replacement. Deterministic
// given the rng state. Throws on an empty set (caller applies the reset rule).
std::vector<int64_t> sample_neighbors(const ValidSet& vs, int64_t current_value,
                                      Strategy strategy, int64_t count, Rng& rng);

// Exposed pieces of the sampler, used directly by tests.
std::vector<int64_t> closeness_order(const std::vector<int64_t>& ascending,
                                     int64_t current);
uint128 rank_weight(Strategy strategy, uint128 rank, uint128 set_size);

}  // namespace hetsearch
