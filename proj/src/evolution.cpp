#include "evolution.hpp"

#include <algorithm>

namespace hetsearch {

namespace {

// Stream tags keeping initialization and evolution draws disjoint.
constexpr uint64_t kInitTag = 0x696e6974;    // "init"
constexpr uint64_t kEvolveTag = 0x65766f6c;  // "evol"

int64_t member_cost(const ProblemSpec& spec, const Assignment& a,
                    const char* phase, size_t member_index) {
    try {
        return spec.cost_compiled.eval(a);
    } catch (const Error& e) {
        fail(ErrorKind::eval, std::string("cost evaluation failed (") + phase +
                                  ", member " + std::to_string(member_index) +
                                  "): " + e.what());
    }
}

}  // namespace

void SearchConfig::validate() const {
    if (population < 2 || population % 2 != 0) {
        fail(ErrorKind::parse, "population must be an even integer >= 2");
    }
    if (iterations < 1) {
        fail(ErrorKind::parse, "iterations must be >= 1");
    }
    if (scan_cap < 2) {
        fail(ErrorKind::parse, "scan_cap must be >= 2");
    }
    if (init_attempts < 1) {
        fail(ErrorKind::parse, "init_attempts must be >= 1");
    }
    if (early_stop_window < 0) {
        fail(ErrorKind::parse, "early_stop_window must be >= 0");
    }
}

SearchConfig resolve_config(const ProblemSpec& spec) {
    SearchConfig cfg;
    const ConfigOverrides& o = spec.defaults;
    if (o.population) cfg.population = *o.population;
    if (o.iterations) cfg.iterations = *o.iterations;
    if (o.strategy) cfg.strategy = *o.strategy;
    if (o.seed) cfg.seed = *o.seed;
    if (o.scan_cap) cfg.scan_cap = *o.scan_cap;
    if (o.init_attempts) cfg.init_attempts = *o.init_attempts;
    return cfg;
}

Population initialize(const ProblemSpec& spec, const SearchConfig& config) {
    config.validate();
    const FlatSpace& space = spec.space;
    Population pop;
    pop.reserve(static_cast<size_t>(config.population));
    Rng master(config.seed);

    for (int64_t m = 0; m < config.population; ++m) {
        Rng stream = master.derived({kInitTag, static_cast<uint64_t>(m)});
        Assignment a(space.size());
        for (int64_t attempt = 0; attempt < config.init_attempts; ++attempt) {
            for (size_t i = 0; i < space.size(); ++i) {
                a[i] = stream.uniform_int(space.at(i).lo, space.at(i).hi);
            }
            if (validate_assignment(space, spec, a)) {
                break;
            }
        }
        Member member;
        member.cost = member_cost(spec, a, "initialize", static_cast<size_t>(m));
        member.values = std::move(a);
        pop.push_back(std::move(member));
    }
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Member& a, const Member& b) { return a.cost < b.cost; });
    return pop;
}

Population select_survivors(std::vector<Member> merged, size_t n) {
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Member& a, const Member& b) { return a.cost < b.cost; });
    merged.resize(n);
    return merged;
}

StepStats evolve_step(Population& pop, const ProblemSpec& spec,
                      const SearchConfig& config, int64_t iteration) {
    StepStats stats;
    const FlatSpace& space = spec.space;
    Rng master(config.seed);

    for (size_t pi = 0; pi < space.size(); ++pi) {
        const std::string& path = space.at(pi).path;
        std::vector<Member> merged;
        merged.reserve(pop.size() * 2);
        merged.insert(merged.end(), pop.begin(), pop.end());

        for (size_t mi = 0; mi < pop.size(); ++mi) {
            ValidSet vs = valid_set(path, pop[mi].values, spec, config.scan_cap);
            if (vs.empty()) {
                vs = reset_set(path, spec);
                ++stats.resets;
            }
            Rng stream = master.derived({kEvolveTag, static_cast<uint64_t>(iteration),
                                         static_cast<uint64_t>(pi),
                                         static_cast<uint64_t>(mi)});
            int64_t neighbor =
                sample_neighbors(vs, pop[mi].values[pi], config.strategy, 1, stream)[0];
            Member candidate;
            candidate.values = pop[mi].values;
            candidate.values[pi] = neighbor;
            candidate.cost = member_cost(spec, candidate.values, "evolve", mi);
            merged.push_back(std::move(candidate));
        }
        pop = select_survivors(std::move(merged), pop.size());
    }
    return stats;
}

namespace {

TraceEntry make_trace_entry(const Population& pop, int64_t iteration, int64_t resets) {
    __int128 sum = 0;
    for (const Member& m : pop) {
        sum += m.cost;
    }
    TraceEntry e;
    e.iteration = iteration;
    e.best_cost = pop.front().cost;
    e.mean_cost = static_cast<double>(sum) / static_cast<double>(pop.size());
    e.resets = resets;
    return e;
}

}  // namespace

SearchResult run(const ProblemSpec& spec, const SearchConfig& config) {
    config.validate();
    Population pop = initialize(spec, config);

    SearchResult result;
    result.seed = config.seed;
    result.strategy = config.strategy;
    result.trace.push_back(make_trace_entry(pop, 0, 0));

    int64_t stale = 0;
    int64_t last_best = pop.front().cost;
    int64_t t = 0;
    while (t < config.iterations) {
        ++t;
        StepStats stats = evolve_step(pop, spec, config, t);
        result.total_resets += stats.resets;
        result.trace.push_back(make_trace_entry(pop, t, stats.resets));

        if (config.early_stop_window > 0) {
            stale = (pop.front().cost == last_best) ? stale + 1 : 0;
            last_best = pop.front().cost;
            if (stale >= config.early_stop_window) {
                break;
            }
        }
    }
    result.iterations_run = t;
    result.best = pop.front().values;
    result.best_cost = pop.front().cost;
    return result;
}

std::pair<Assignment, int64_t> brute_force_oracle(const ProblemSpec& spec,
                                                  uint64_t max_points) {
    const FlatSpace& space = spec.space;
    uint128 total = 1;
    for (const auto& p : space.params()) {
        uint128 size =
            static_cast<uint128>(static_cast<uint64_t>(p.hi) - static_cast<uint64_t>(p.lo)) + 1;
        total *= size;
        if (total > max_points) {
            fail(ErrorKind::too_large,
                 "search space exceeds the enumeration limit of " +
                     std::to_string(max_points) + " points");
        }
    }

    Assignment current(space.size());
    for (size_t i = 0; i < space.size(); ++i) {
        current[i] = space.at(i).lo;
    }

    bool found = false;
    Assignment best;
    int64_t best_cost = 0;
    for (;;) {
        if (validate_assignment(space, spec, current)) {
            int64_t cost = spec.cost_compiled.eval(current);
            // Lexicographic enumeration order makes strict < pick the
            // lexicographically smallest among cost ties.
            if (!found || cost < best_cost) {
                found = true;
                best = current;
                best_cost = cost;
            }
        }
        // Odometer increment, last parameter fastest.
        size_t i = space.size();
        while (i > 0) {
            --i;
            if (current[i] < space.at(i).hi) {
                ++current[i];
                break;
            }
            current[i] = space.at(i).lo;
            if (i == 0) {
                if (!found) {
                    fail(ErrorKind::infeasible, "no feasible assignment exists");
                }
                return {best, best_cost};
            }
        }
    }
}

}  // namespace hetsearch
