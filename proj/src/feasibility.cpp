#include "feasibility.hpp"

#include <algorithm>

namespace hetsearch {

ValidSet ValidSet::dense(std::string target, std::vector<int64_t> values, bool exact) {
    ValidSet vs;
    vs.target = std::move(target);
    vs.values = std::move(values);
    vs.exact = exact;
    return vs;
}

ValidSet ValidSet::whole_range(std::string target, int64_t lo, int64_t hi) {
    ValidSet vs;
    vs.target = std::move(target);
    vs.is_interval = true;
    vs.lo = lo;
    vs.hi = hi;
    vs.exact = true;
    return vs;
}

uint128 ValidSet::size() const {
    if (!is_interval) {
        return values.size();
    }
    return static_cast<uint128>(static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo)) + 1;
}

bool ValidSet::contains(int64_t v) const {
    if (is_interval) {
        return v >= lo && v <= hi;
    }
    return std::binary_search(values.begin(), values.end(), v);
}

std::vector<int64_t> ValidSet::materialized() const {
    if (!is_interval) {
        return values;
    }
    if (size() > 1u << 22) {
        fail(ErrorKind::usage, "refusing to materialize a huge interval set");
    }
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(size()));
    for (int64_t v = lo;; ++v) {
        out.push_back(v);
        if (v == hi) {
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Valid-set computation
// ---------------------------------------------------------------------------

namespace {

// Distance within an ordered pair, exact for the full int64 range.
uint64_t distance(int64_t lo, int64_t hi) {
    return static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
}

struct TargetScan {
    const ProblemSpec& spec;
    std::vector<const AssertionDecl*> mentioning;
    Assignment slots;
    size_t target_index;

    bool feasible_at(int64_t v) {
        slots[target_index] = v;
        for (const AssertionDecl* a : mentioning) {
            int64_t r;
            try {
                r = a->compiled.eval(slots);
            } catch (const Error& e) {
                fail(ErrorKind::eval,
                     "assertion '" + a->id + "': " + e.what() + " (at " +
                         spec.space.at(target_index).path + " = " + std::to_string(v) + ")");
            }
            if (r == 0) {
                return false;
            }
        }
        return true;
    }
};

}  // namespace

ValidSet valid_set(const std::string& target_path, const Assignment& current,
                   const ProblemSpec& spec, int64_t scan_cap) {
    size_t ti = spec.space.find(target_path);
    if (ti == FlatSpace::npos) {
        fail(ErrorKind::usage, "unknown parameter path '" + target_path + "'");
    }
    if (current.size() != spec.space.size()) {
        fail(ErrorKind::usage, "assignment size does not match the flat space");
    }
    if (scan_cap < 2) {
        fail(ErrorKind::usage, "scan_cap must be >= 2");
    }
    const FlatParameter& p = spec.space.at(ti);

    TargetScan scan{spec, {}, current, ti};
    for (const auto& a : spec.assertions) {
        if (std::find(a.param_indices.begin(), a.param_indices.end(), ti) !=
            a.param_indices.end()) {
            scan.mentioning.push_back(&a);
        }
    }
    // Assertions that do not mention the target impose no filter.
    if (scan.mentioning.empty()) {
        return ValidSet::whole_range(target_path, p.lo, p.hi);
    }

    uint128 domain_size =
        static_cast<uint128>(distance(p.lo, p.hi)) + 1;
    if (domain_size <= static_cast<uint128>(scan_cap)) {
        std::vector<int64_t> values;
        for (int64_t v = p.lo;; ++v) {
            if (scan.feasible_at(v)) {
                values.push_back(v);
            }
            if (v == p.hi) {
                break;
            }
        }
        return ValidSet::dense(target_path, std::move(values), true);
    }

    // Capped scan: probe the current value, exponentially spaced offsets from
    // it, and an even lattice across the domain. Every candidate is tested,
    // so the result is a subset of the true valid set.
    uint64_t span = distance(p.lo, p.hi);
    int64_t cur = std::clamp(current[ti], p.lo, p.hi);
    std::vector<int64_t> grid;
    grid.reserve(static_cast<size_t>(scan_cap) + 130);
    grid.push_back(cur);
    for (uint64_t off = 1; off <= span; off <<= 1) {
        if (distance(p.lo, cur) >= off) {
            grid.push_back(static_cast<int64_t>(static_cast<uint64_t>(cur) - off));
        }
        if (distance(cur, p.hi) >= off) {
            grid.push_back(static_cast<int64_t>(static_cast<uint64_t>(cur) + off));
        }
        if (off > (span >> 1)) {
            break;  // next shift would overflow
        }
    }
    uint64_t cells = static_cast<uint64_t>(scan_cap) - 1;
    for (uint64_t t = 0; t <= cells; ++t) {
        uint64_t offset = static_cast<uint64_t>(
            (static_cast<uint128>(span) * t) / cells);
        grid.push_back(static_cast<int64_t>(static_cast<uint64_t>(p.lo) + offset));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<int64_t> values;
    for (int64_t v : grid) {
        if (scan.feasible_at(v)) {
            values.push_back(v);
        }
    }
    return ValidSet::dense(target_path, std::move(values), false);
}

ValidSet reset_set(const std::string& target_path, const ProblemSpec& spec) {
    size_t ti = spec.space.find(target_path);
    if (ti == FlatSpace::npos) {
        fail(ErrorKind::usage, "unknown parameter path '" + target_path + "'");
    }
    const FlatParameter& p = spec.space.at(ti);
    return ValidSet::whole_range(target_path, p.lo, p.hi);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::vector<int64_t> closeness_order(const std::vector<int64_t>& ascending,
                                     int64_t current) {
    size_t right = static_cast<size_t>(
        std::lower_bound(ascending.begin(), ascending.end(), current) -
        ascending.begin());
    size_t left = right;
    std::vector<int64_t> out;
    out.reserve(ascending.size());
    while (out.size() < ascending.size()) {
        bool take_left;
        if (left == 0) {
            take_left = false;
        } else if (right == ascending.size()) {
            take_left = true;
        } else {
            // tie toward the smaller value
            take_left = distance(ascending[left - 1], current) <=
                        distance(current, ascending[right]);
        }
        out.push_back(take_left ? ascending[--left] : ascending[right++]);
    }
    return out;
}

uint128 rank_weight(Strategy strategy, uint128 rank, uint128 set_size) {
    switch (strategy) {
        case Strategy::uniform:
            return 1;
        case Strategy::linear:
            return set_size - rank;
        case Strategy::square: {
            uint128 w = set_size - rank;
            return w * w;
        }
    }
    return 1;
}

namespace {

// Maps a closeness rank back to a value of the interval [lo, hi]: rank 0 is
// `current`, then pairs at distance 1, 2, ... with the smaller value first,
// then the single-sided tail.
int64_t interval_value_at_rank(int64_t lo, int64_t hi, int64_t current, uint128 rank) {
    if (current < lo) {
        return static_cast<int64_t>(static_cast<uint64_t>(lo) +
                                    static_cast<uint64_t>(rank));
    }
    if (current > hi) {
        return static_cast<int64_t>(static_cast<uint64_t>(hi) -
                                    static_cast<uint64_t>(rank));
    }
    uint128 left_room = distance(lo, current);
    uint128 right_room = distance(current, hi);
    uint128 paired = left_room < right_room ? left_room : right_room;
    if (rank == 0) {
        return current;
    }
    if (rank <= 2 * paired) {
        uint64_t d = static_cast<uint64_t>((rank + 1) / 2);
        bool go_left = (rank % 2) == 1;  // smaller value first at equal distance
        uint64_t base = static_cast<uint64_t>(current);
        return static_cast<int64_t>(go_left ? base - d : base + d);
    }
    uint64_t d = static_cast<uint64_t>(paired + (rank - 2 * paired));
    uint64_t base = static_cast<uint64_t>(current);
    return static_cast<int64_t>(left_room > right_room ? base - d : base + d);
}

int64_t draw_interval(const ValidSet& vs, int64_t current, Strategy strategy, Rng& rng) {
    uint128 L = vs.size();
    for (;;) {
        uint128 rank = rng.below128(L);
        bool accept = true;
        if (strategy == Strategy::linear) {
            accept = rng.below128(L) < (L - rank);
        } else if (strategy == Strategy::square) {
            // (w/L)^2 as two independent accept tests
            accept = rng.below128(L) < (L - rank) && rng.below128(L) < (L - rank);
        }
        if (accept) {
            return interval_value_at_rank(vs.lo, vs.hi, current, rank);
        }
    }
}

}  // namespace

std::vector<int64_t> sample_neighbors(const ValidSet& vs, int64_t current_value,
                                      Strategy strategy, int64_t count, Rng& rng) {
    if (vs.empty()) {
        fail(ErrorKind::usage, "cannot sample from an empty valid set");
    }
    if (count < 1) {
        fail(ErrorKind::usage, "sample count must be >= 1");
    }
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(count));

    if (vs.is_interval) {
        for (int64_t i = 0; i < count; ++i) {
            out.push_back(draw_interval(vs, current_value, strategy, rng));
        }
        return out;
    }

    std::vector<int64_t> ordered = closeness_order(vs.values, current_value);
    uint128 L = ordered.size();
    std::vector<uint128> cumulative(ordered.size());
    uint128 total = 0;
    for (size_t r = 0; r < ordered.size(); ++r) {
        total += rank_weight(strategy, r, L);
        cumulative[r] = total;
    }
    for (int64_t i = 0; i < count; ++i) {
        uint128 u = rng.below128(total);
        size_t idx = static_cast<size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin());
        out.push_back(ordered[idx]);
    }
    return out;
}

}  // namespace hetsearch
