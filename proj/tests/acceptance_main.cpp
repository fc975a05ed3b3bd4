// Acceptance suite: exercises the full engine contract on randomized
// problems, the shipped corpus and the command-line tool. Prints one
// PASS/FAIL line per criterion; exits nonzero if any fails.
//
// Usage: hetsearch_acceptance <cli-binary> <problems-dir> <data-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "expr.hpp"
#include "feasibility.hpp"
#include "json.hpp"
#include "problem.hpp"
#include "rng.hpp"

using namespace hetsearch;
using nlohmann::json;

namespace {

std::string g_cli;
std::string g_problems;
std::string g_data;

// ---------------------------------------------------------------------------
// Random problem generation
// ---------------------------------------------------------------------------

struct GeneratedProblem {
    ProblemSpec spec;
    Assignment anchor;  // feasible by construction
};

struct GenOptions {
    int max_params = 4;
    int64_t max_domain = 200;
    int max_assertions = 5;
    uint64_t lattice_cap = UINT64_MAX;
    int64_t slack_lo = 0;  // constraint slack around the anchor
    int64_t slack_hi = 120;
    bool allow_equality = true;
};

GeneratedProblem generate_problem(Rng& rng, const GenOptions& opt) {
    int n = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(opt.max_params)));
    json params = json::array();
    std::vector<int64_t> lo(n), hi(n);
    std::vector<bool> is_bool(n);
    uint64_t budget = opt.lattice_cap;
    for (int i = 0; i < n; ++i) {
        std::string name = "p" + std::to_string(i);
        if (rng.below(4) == 0) {
            is_bool[i] = true;
            lo[i] = 0;
            hi[i] = 1;
            params.push_back({{"name", name}, {"type", "bool"}});
            budget = std::max<uint64_t>(1, budget / 2);
        } else {
            uint64_t cap = std::min<uint64_t>(static_cast<uint64_t>(opt.max_domain),
                                              std::max<uint64_t>(1, budget));
            int64_t size = 1 + static_cast<int64_t>(rng.below(cap));
            lo[i] = -100 + static_cast<int64_t>(rng.below(201));
            hi[i] = lo[i] + size - 1;
            params.push_back({{"name", name},
                              {"type", "int"},
                              {"bounds", json::array({lo[i], hi[i]})}});
            budget = std::max<uint64_t>(1, budget / static_cast<uint64_t>(size));
        }
    }

    Assignment anchor(n);
    for (int i = 0; i < n; ++i) {
        anchor[i] = rng.uniform_int(lo[i], hi[i]);
    }

    json constraints = json::array();
    int m = static_cast<int>(rng.below(static_cast<uint64_t>(opt.max_assertions) + 1));
    std::vector<int> bools;
    for (int i = 0; i < n; ++i) {
        if (is_bool[i]) {
            bools.push_back(i);
        }
    }
    for (int a = 0; a < m; ++a) {
        if (bools.size() >= 2 && rng.below(4) == 0) {
            // cardinality over the booleans, satisfied at the anchor
            int64_t at_anchor = 0;
            std::string sum;
            for (int i : bools) {
                if (!sum.empty()) {
                    sum += " + ";
                }
                sum += "p" + std::to_string(i);
                at_anchor += anchor[i];
            }
            int64_t k = at_anchor + static_cast<int64_t>(rng.below(2));
            constraints.push_back(sum + " <= " + std::to_string(k));
            continue;
        }
        // affine over a random subset, anchored
        std::string lhs;
        int64_t at_anchor = 0;
        int forced = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        for (int i = 0; i < n; ++i) {
            if (i != forced && rng.below(2) == 0) {
                continue;
            }
            int64_t c = 0;
            while (c == 0) {
                c = -3 + static_cast<int64_t>(rng.below(7));
            }
            if (!lhs.empty()) {
                lhs += " + ";
            }
            lhs += std::to_string(c) + "*p" + std::to_string(i);
            at_anchor += c * anchor[i];
        }
        int64_t slack =
            opt.slack_lo +
            static_cast<int64_t>(
                rng.below(static_cast<uint64_t>(opt.slack_hi - opt.slack_lo) + 1));
        if (opt.allow_equality && rng.below(6) == 0) {
            constraints.push_back(lhs + " == " + std::to_string(at_anchor));
        } else if (rng.below(2) == 0) {
            constraints.push_back(lhs + " <= " + std::to_string(at_anchor + slack));
        } else {
            constraints.push_back(lhs + " >= " + std::to_string(at_anchor - slack));
        }
    }

    std::string cost;
    for (int i = 0; i < n; ++i) {
        if (!cost.empty()) {
            cost += " + ";
        }
        std::string p = "p" + std::to_string(i);
        if (rng.below(2) == 0) {
            cost += std::to_string(1 + rng.below(5)) + "*" + p;
        } else {
            int64_t t = rng.uniform_int(lo[i], hi[i]);
            cost += "(" + p + " - " + std::to_string(t) + ")*(" + p + " - " +
                    std::to_string(t) + ")";
        }
    }

    json doc;
    doc["parameters"] = std::move(params);
    doc["constraints"] = std::move(constraints);
    doc["cost"] = cost;
    GeneratedProblem out{parse_problem(doc.dump()), std::move(anchor)};
    return out;
}

// Independent reference for the valid set: walk the whole domain with the
// tree evaluator, substituting the other parameters.
std::vector<int64_t> reference_filter(const ProblemSpec& spec, size_t target,
                                      const Assignment& current) {
    std::vector<int64_t> out;
    const FlatParameter& p = spec.space.at(target);
    Bindings others;
    for (size_t i = 0; i < spec.space.size(); ++i) {
        if (i != target) {
            others[spec.space.at(i).path] = current[i];
        }
    }
    for (int64_t v = p.lo;; ++v) {
        bool ok = true;
        for (const auto& a : spec.assertions) {
            if (std::find(a.param_indices.begin(), a.param_indices.end(), target) ==
                a.param_indices.end()) {
                continue;
            }
            Bindings b = others;
            b[p.path] = v;
            if (eval(*a.expr, EvalContext{b}) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.push_back(v);
        }
        if (v == p.hi) {
            break;
        }
    }
    return out;
}

Assignment random_point(Rng& rng, const ProblemSpec& spec) {
    Assignment a(spec.space.size());
    for (size_t i = 0; i < spec.space.size(); ++i) {
        a[i] = rng.uniform_int(spec.space.at(i).lo, spec.space.at(i).hi);
    }
    return a;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

bool criterion_valid_set_equivalence(std::string& note) {
    auto started = std::chrono::steady_clock::now();
    Rng rng(9001);
    GenOptions opt;  // domains <= 200, <= 5 assertions
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        GeneratedProblem gen = generate_problem(rng, opt);
        Assignment current = random_point(rng, gen.spec);
        for (size_t t = 0; t < gen.spec.space.size(); ++t) {
            ValidSet vs = valid_set(gen.spec.space.at(t).path, current, gen.spec);
            if (!vs.exact) {
                note = "expected an exact scan";
                return false;
            }
            if (vs.materialized() != reference_filter(gen.spec, t, current)) {
                note = "mismatch on trial " + std::to_string(trial);
                return false;
            }
            ++checked;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    note = std::to_string(checked) + " valid sets over 200 specs in " +
           std::to_string(secs).substr(0, 5) + " s";
    return secs < 10.0;
}

bool criterion_correct_by_construction(std::string& note) {
    Rng rng(4242);
    GenOptions opt;
    int sampled = 0;
    while (sampled < 10000) {
        GeneratedProblem gen = generate_problem(rng, opt);
        Assignment current = random_point(rng, gen.spec);
        size_t t = rng.below(gen.spec.space.size());
        const std::string& path = gen.spec.space.at(t).path;
        ValidSet vs = valid_set(path, current, gen.spec);
        if (vs.empty()) {
            continue;
        }
        Bindings others;
        for (size_t i = 0; i < gen.spec.space.size(); ++i) {
            if (i != t) {
                others[gen.spec.space.at(i).path] = current[i];
            }
        }
        Strategy strategy = static_cast<Strategy>(rng.below(3));
        Rng draw(rng.next());
        auto neighbors = sample_neighbors(vs, current[t], strategy, 25, draw);
        for (int64_t v : neighbors) {
            for (const auto& a : gen.spec.assertions) {
                if (std::find(a.paths.begin(), a.paths.end(), path) == a.paths.end()) {
                    continue;
                }
                ExprPtr reduced = substitute(a.expr, others);
                if (eval(*reduced, EvalContext{{{path, v}}}) == 0) {
                    note = "sampled neighbor violates assertion " + a.id;
                    return false;
                }
            }
            ++sampled;
        }
    }
    note = std::to_string(sampled) + " sampled neighbors, all feasible";
    return true;
}

bool criterion_weight_law(std::string& note) {
    const int64_t draws = 1000000;
    for (size_t L : {4u, 64u}) {
        std::vector<int64_t> values(L);
        for (size_t i = 0; i < L; ++i) {
            values[i] = static_cast<int64_t>(i);
        }
        for (int64_t current : {static_cast<int64_t>(0), static_cast<int64_t>(L / 2)}) {
            std::vector<int64_t> order = closeness_order(values, current);
            for (Strategy s : {Strategy::uniform, Strategy::linear, Strategy::square}) {
                ValidSet vs = ValidSet::dense("x", values, true);
                Rng rng(1000 + static_cast<uint64_t>(L) + static_cast<uint64_t>(s));
                auto samples = sample_neighbors(vs, current, s, draws, rng);
                std::map<int64_t, int64_t> counts;
                for (int64_t v : samples) {
                    ++counts[v];
                }
                uint128 total = 0;
                for (size_t r = 0; r < L; ++r) {
                    total += rank_weight(s, r, L);
                }
                for (size_t r = 0; r < L; ++r) {
                    double expected = static_cast<double>(rank_weight(s, r, L)) /
                                      static_cast<double>(total);
                    double observed = static_cast<double>(counts[order[r]]) /
                                      static_cast<double>(draws);
                    if (std::abs(observed - expected) > 0.01) {
                        note = "frequency off at L=" + std::to_string(L) + " rank " +
                               std::to_string(r);
                        return false;
                    }
                }
            }
        }
    }
    note = "uniform/linear/square frequencies within 1% over 1e6 draws";
    return true;
}

bool criterion_monotone_best(std::string& note) {
    const char* files[] = {"quadratic.json", "cube.json", "fpga.json", "arch.json"};
    int runs = 0;
    for (const char* f : files) {
        ProblemSpec spec = parse_problem(read_file(g_problems + "/" + f));
        SearchConfig cfg = resolve_config(spec);
        for (uint64_t s = 0; s < 25; ++s) {
            cfg.seed = 1000 + s;
            SearchResult r = run(spec, cfg);
            for (size_t i = 1; i < r.trace.size(); ++i) {
                if (r.trace[i].best_cost > r.trace[i - 1].best_cost) {
                    note = std::string("best cost increased in ") + f;
                    return false;
                }
            }
            ++runs;
        }
    }
    note = std::to_string(runs) + " corpus runs, every trace non-increasing";
    return true;
}

bool criterion_oracle_optimality(std::string& note) {
    auto started = std::chrono::steady_clock::now();
    Rng rng(31337);
    GenOptions opt;
    opt.max_domain = 25;
    opt.lattice_cap = 10000;
    opt.slack_lo = 50;  // generous slack keeps initial rejection sampling easy
    opt.slack_hi = 300;
    opt.allow_equality = false;

    int optimal = 0;
    int feasible = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        GeneratedProblem gen = generate_problem(rng, opt);
        auto [best, best_cost] = brute_force_oracle(gen.spec);
        (void)best;
        SearchConfig cfg;
        cfg.population = 16;
        cfg.iterations = 100;
        cfg.strategy = Strategy::square;
        cfg.seed = 7000 + static_cast<uint64_t>(trial);
        SearchResult r = run(gen.spec, cfg);
        if (validate_assignment(gen.spec.space, gen.spec, r.best)) {
            ++feasible;
        }
        if (r.best_cost == best_cost) {
            ++optimal;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    note = std::to_string(optimal) + "/50 optimal, " + std::to_string(feasible) +
           "/50 feasible in " + std::to_string(secs).substr(0, 5) + " s";
    return optimal >= 45 && feasible == trials && secs < 60.0;
}

bool criterion_strategy_study(std::string& note) {
    ProblemSpec spec = parse_problem(read_file(g_problems + "/fpga.json"));
    SearchConfig base = resolve_config(spec);
    const int repeats = 30;

    std::map<Strategy, std::vector<double>> mean_best;
    for (Strategy s : {Strategy::uniform, Strategy::linear, Strategy::square}) {
        std::vector<double> sums;
        for (int rep = 0; rep < repeats; ++rep) {
            SearchConfig cfg = base;
            cfg.strategy = s;
            cfg.seed = base.seed + static_cast<uint64_t>(rep);
            SearchResult r = run(spec, cfg);
            if (sums.empty()) {
                sums.assign(r.trace.size(), 0.0);
            }
            for (size_t i = 0; i < r.trace.size(); ++i) {
                sums[i] += static_cast<double>(r.trace[i].best_cost);
            }
        }
        for (double& v : sums) {
            v /= repeats;
        }
        mean_best[s] = std::move(sums);
    }
    size_t last = mean_best[Strategy::uniform].size() - 1;
    double u5 = mean_best[Strategy::uniform][5];
    double s5 = mean_best[Strategy::square][5];
    double uf = mean_best[Strategy::uniform][last];
    double lf = mean_best[Strategy::linear][last];
    double sf = mean_best[Strategy::square][last];

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "iter5 uniform=%.1f square=%.1f | final uniform=%.1f linear=%.1f "
                  "square=%.1f",
                  u5, s5, uf, lf, sf);
    note = buf;
    return u5 <= s5 && sf <= uf && sf <= lf;
}

bool criterion_cli_determinism(std::string& note) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hetsearch_accept";
    fs::create_directories(dir);
    auto p = [&](const char* name) { return (dir / name).string(); };

    std::string quadratic = g_problems + "/quadratic.json";
    std::string fpga = g_problems + "/fpga.json";

    for (int i = 1; i <= 2; ++i) {
        std::string tag = std::to_string(i);
        if (run_cli("run '" + quadratic + "' --seed 5 --out " + p("run") + tag +
                    ".json --trace-out " + p("trace") + tag + ".csv") != 0) {
            note = "run invocation failed";
            return false;
        }
        if (run_cli("compare '" + fpga + "' --repeats 2 --iters 8 --out " + p("cmp") +
                    tag + ".csv") != 0) {
            note = "compare invocation failed";
            return false;
        }
    }
    if (read_file(p("run1.json")).empty()) {
        note = "empty run report";
        return false;
    }
    if (read_file(p("run1.json")) != read_file(p("run2.json")) ||
        read_file(p("trace1.csv")) != read_file(p("trace2.csv")) ||
        read_file(p("cmp1.csv")) != read_file(p("cmp2.csv"))) {
        note = "outputs differ between identical invocations";
        return false;
    }

    // error-path contract of the CLI
    if (run_cli("run '" + dir.string() + "/missing.json'") != 3) {
        note = "missing file should exit 3";
        return false;
    }
    {
        std::ofstream bad(p("bad.json"));
        bad << R"({"parameters":[{"name":"b","type":"bool","bounds":[0,1]}],"cost":"b"})";
    }
    if (run_cli("run '" + p("bad.json") + "'") != 1) {
        note = "schema error should exit 1";
        return false;
    }
    if (run_cli("oracle '" + g_problems + "/arch.json'") != 4) {
        note = "oversized oracle should exit 4";
        return false;
    }
    {
        std::ofstream evalerr(p("evalerr.json"));
        evalerr << R"({"parameters":[{"name":"x","type":"int","bounds":[0,3]}],)"
                << R"("cost":"10 / x","config":{"population":4,"iterations":3}})";
    }
    if (run_cli("run '" + p("evalerr.json") + "'") != 2) {
        note = "evaluation error should exit 2";
        return false;
    }
    {
        std::ofstream inf(p("infeasible.json"));
        inf << R"({"parameters":[{"name":"x","type":"int","bounds":[0,9]}],)"
            << R"("constraints":["x > 5","x < 3"],"cost":"x"})";
    }
    if (run_cli("oracle '" + p("infeasible.json") + "'") != 5) {
        note = "infeasible oracle should exit 5";
        return false;
    }
    note = "byte-identical run/compare outputs; exit codes 1-5 confirmed";
    return true;
}

bool criterion_reset_liveness(std::string& note) {
    ProblemSpec spec = parse_problem(read_file(g_data + "/gate_reset.json"));
    SearchConfig base = resolve_config(spec);
    int64_t min_resets = INT64_MAX;
    for (uint64_t s = 0; s < 20; ++s) {
        SearchConfig cfg = base;
        cfg.seed = s;
        SearchResult r = run(spec, cfg);
        if (!validate_assignment(spec.space, spec, r.best)) {
            note = "infeasible best at seed " + std::to_string(s);
            return false;
        }
        if (r.total_resets < 1) {
            note = "no reset at seed " + std::to_string(s);
            return false;
        }
        min_resets = std::min(min_resets, r.total_resets);
    }
    note = "20/20 seeds feasible, every run reset at least " +
           std::to_string(min_resets) + " times";
    return true;
}

bool criterion_capped_scan_soundness(std::string& note) {
    Rng rng(60601);
    int trials = 0;
    int64_t checked = 0;
    while (trials < 100) {
        int64_t lo = static_cast<int64_t>(rng.below(1000));
        int64_t hi = lo + 999999999;  // domain size 1e9
        int64_t c1 = 0;
        while (c1 == 0) {
            c1 = -3 + static_cast<int64_t>(rng.below(7));
        }
        int64_t c2 = -3 + static_cast<int64_t>(rng.below(7));
        int64_t y_lo = -50 + static_cast<int64_t>(rng.below(101));
        int64_t y_hi = y_lo + static_cast<int64_t>(rng.below(100));
        int64_t anchor_x = lo + static_cast<int64_t>(rng.below(1000000000));
        int64_t anchor_y = rng.uniform_int(y_lo, y_hi);
        int64_t k = c1 * anchor_x + c2 * anchor_y;
        std::string op = rng.below(2) == 0 ? " <= " : " >= ";

        json doc;
        doc["parameters"] = json::array(
            {json{{"name", "x"}, {"type", "int"}, {"bounds", json::array({lo, hi})}},
             json{{"name", "y"}, {"type", "int"}, {"bounds", json::array({y_lo, y_hi})}}});
        doc["constraints"] =
            json::array({std::to_string(c1) + "*x + " + std::to_string(c2) + "*y" + op +
                         std::to_string(k)});
        doc["cost"] = "x";
        ProblemSpec spec = parse_problem(doc.dump());

        Assignment current{rng.uniform_int(lo, hi), rng.uniform_int(y_lo, y_hi)};
        ValidSet vs = valid_set("x", current, spec);
        if (vs.exact) {
            note = "expected a capped scan";
            return false;
        }
        Bindings b{{"y", current[1]}};
        const AssertionDecl& a = spec.assertions[0];
        for (int64_t v : vs.values) {
            if (v < lo || v > hi) {
                note = "candidate out of domain";
                return false;
            }
            Bindings full = b;
            full["x"] = v;
            if (eval(*a.expr, EvalContext{full}) == 0) {
                note = "infeasible candidate in a capped scan";
                return false;
            }
            ++checked;
        }
        ++trials;
    }
    note = "100 trials, " + std::to_string(checked) + " returned candidates feasible";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: %s <cli-binary> <problems-dir> <data-dir>\n",
                     argv[0]);
        return 2;
    }
    g_cli = argv[1];
    g_problems = argv[2];
    g_data = argv[3];

    struct Entry {
        int id;
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const Entry criteria[] = {
        {1, "valid-set oracle equivalence", criterion_valid_set_equivalence},
        {2, "correct-by-construction sampling", criterion_correct_by_construction},
        {3, "sampling weight law", criterion_weight_law},
        {4, "monotone best cost on the corpus", criterion_monotone_best},
        {5, "oracle optimality at desk scale", criterion_oracle_optimality},
        {6, "strategy study on fpga.json", criterion_strategy_study},
        {7, "CLI determinism", criterion_cli_determinism},
        {8, "reset/backtrack liveness", criterion_reset_liveness},
        {9, "capped-scan soundness", criterion_capped_scan_soundness},
    };

    int failures = 0;
    for (const Entry& c : criteria) {
        std::string note;
        bool ok = false;
        auto started = std::chrono::steady_clock::now();
        try {
            ok = c.fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        std::printf("[%s] criterion %d: %s (%.1fs) - %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name, secs, note.c_str());
        std::fflush(stdout);
        if (!ok) {
            ++failures;
        }
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
