// hetsearch CLI: run problems, compare sampling strategies, query the
// brute-force oracle, validate problem files. Links the C API only.
//
// Exit codes: 0 ok, 1 parse/schema error, 2 runtime evaluation error,
// 3 I/O error, 4 search space too large, 5 infeasible problem.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetsearch/hetsearch.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitParse = 1;
constexpr int kExitEval = 2;
constexpr int kExitIo = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitInfeasible = 5;

int exit_code_of(hs_status status) {
    switch (status) {
        case HS_OK: return 0;
        case HS_ERR_PARSE: return kExitParse;
        case HS_ERR_EVAL: return kExitEval;
        case HS_ERR_IO: return kExitIo;
        case HS_ERR_TOO_LARGE: return kExitTooLarge;
        case HS_ERR_INFEASIBLE: return kExitInfeasible;
        case HS_ERR_ARG: return kExitParse;
    }
    return kExitParse;
}

struct ProblemDeleter {
    void operator()(hs_problem* p) const { hs_problem_free(p); }
};
struct ResultDeleter {
    void operator()(hs_result* r) const { hs_result_free(r); }
};
using ProblemHandle = std::unique_ptr<hs_problem, ProblemDeleter>;
using ResultHandle = std::unique_ptr<hs_result, ResultDeleter>;

std::string fnv1a64_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, h);
    return buf;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

// Writes to the given path, or stdout when the path is empty.
bool write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return false;
    }
    out << content;
    return out.good();
}

const char* strategy_name(int32_t s) {
    switch (s) {
        case HS_STRATEGY_UNIFORM: return "uniform";
        case HS_STRATEGY_LINEAR: return "linear";
        case HS_STRATEGY_SQUARE: return "square";
    }
    return "?";
}

struct CommonFlags {
    std::optional<uint64_t> seed;
    std::optional<int64_t> iters;
    std::optional<int64_t> pop;
    std::optional<std::string> strategy;
    std::optional<int64_t> scan_cap;
};

// Loads the file, parses the problem and resolves the effective config;
// on failure prints to stderr and returns a nonzero exit code.
int load_problem(const std::string& path, ProblemHandle& problem, hs_config& cfg,
                 std::string* raw_bytes) {
    std::string bytes;
    if (!read_file(path, bytes)) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitIo;
    }
    char err[512] = {0};
    hs_problem* p = nullptr;
    hs_status st = hs_problem_parse(bytes.c_str(), bytes.size(), &p, err, sizeof(err));
    if (st != HS_OK) {
        std::cerr << "error: " << err << "\n";
        return exit_code_of(st);
    }
    problem.reset(p);
    hs_problem_default_config(problem.get(), &cfg);
    if (raw_bytes != nullptr) {
        *raw_bytes = std::move(bytes);
    }
    return 0;
}

int apply_flags(const CommonFlags& flags, hs_config& cfg) {
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.iters) cfg.iterations = *flags.iters;
    if (flags.pop) cfg.population = *flags.pop;
    if (flags.scan_cap) cfg.scan_cap = *flags.scan_cap;
    if (flags.strategy) {
        if (*flags.strategy == "uniform") {
            cfg.strategy = HS_STRATEGY_UNIFORM;
        } else if (*flags.strategy == "linear") {
            cfg.strategy = HS_STRATEGY_LINEAR;
        } else if (*flags.strategy == "square") {
            cfg.strategy = HS_STRATEGY_SQUARE;
        } else {
            std::cerr << "error: unknown strategy '" << *flags.strategy << "'\n";
            return kExitParse;
        }
    }
    return 0;
}

std::string format_mean(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

json assignment_json(const hs_problem* problem, const hs_result* result) {
    json out = json::object();
    size_t n = hs_problem_param_count(problem);
    for (size_t i = 0; i < n; ++i) {
        const char* path = hs_problem_param_path(problem, i);
        int64_t v = 0;
        hs_result_value(result, path, &v);
        out[path] = v;
    }
    return out;
}

json config_json(const hs_config& cfg) {
    json out;
    out["population"] = cfg.population;
    out["iterations"] = cfg.iterations;
    out["strategy"] = strategy_name(cfg.strategy);
    out["seed"] = cfg.seed;
    out["scan_cap"] = cfg.scan_cap;
    out["init_attempts"] = cfg.init_attempts;
    return out;
}

std::string trace_csv(const hs_result* result) {
    std::string out = "iteration,best_cost,mean_cost,resets\n";
    size_t n = hs_result_trace_len(result);
    for (size_t i = 0; i < n; ++i) {
        int64_t iteration = 0, best = 0, resets = 0;
        double mean = 0;
        hs_result_trace_entry(result, i, &iteration, &best, &mean, &resets);
        out += std::to_string(iteration);
        out += ',';
        out += std::to_string(best);
        out += ',';
        out += format_mean(mean);
        out += ',';
        out += std::to_string(resets);
        out += '\n';
    }
    return out;
}

int cmd_run(const std::string& path, const CommonFlags& flags,
            const std::string& out_path, const std::string& trace_path) {
    ProblemHandle problem;
    hs_config cfg{};
    std::string bytes;
    if (int rc = load_problem(path, problem, cfg, &bytes); rc != 0) {
        return rc;
    }
    if (int rc = apply_flags(flags, cfg); rc != 0) {
        return rc;
    }

    auto started = std::chrono::steady_clock::now();
    char err[512] = {0};
    hs_result* raw = nullptr;
    hs_status st = hs_run(problem.get(), &cfg, &raw, err, sizeof(err));
    if (st != HS_OK) {
        std::cerr << "error: " << err << "\n";
        return exit_code_of(st);
    }
    ResultHandle result(raw);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();

    json report;
    report["tool"] = {{"name", "hetsearch"}, {"version", hs_version()}};
    report["input"] = {{"path", path}, {"digest", fnv1a64_hex(bytes)}};
    report["config"] = config_json(cfg);
    report["best"] = {{"cost", hs_result_best_cost(result.get())},
                      {"assignment", assignment_json(problem.get(), result.get())}};
    report["iterations_run"] = hs_result_iterations_run(result.get());
    report["resets"] = hs_result_total_resets(result.get());
    json trace = json::array();
    size_t n = hs_result_trace_len(result.get());
    for (size_t i = 0; i < n; ++i) {
        int64_t iteration = 0, best = 0, resets = 0;
        double mean = 0;
        hs_result_trace_entry(result.get(), i, &iteration, &best, &mean, &resets);
        trace.push_back({{"iteration", iteration},
                         {"best_cost", best},
                         {"mean_cost", mean},
                         {"resets", resets}});
    }
    report["trace"] = std::move(trace);

    // Timing stays on stderr so the report is identical run to run.
    std::cerr << "run completed in " << elapsed << " ms\n";

    if (!trace_path.empty() && !write_output(trace_path, trace_csv(result.get()))) {
        std::cerr << "error: cannot write '" << trace_path << "'\n";
        return kExitIo;
    }
    if (!write_output(out_path, report.dump(2) + "\n")) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    return 0;
}

int cmd_compare(const std::string& path, const CommonFlags& flags, int64_t repeats,
                const std::string& out_path) {
    if (repeats < 1) {
        std::cerr << "error: --repeats must be >= 1\n";
        return kExitParse;
    }
    ProblemHandle problem;
    hs_config base{};
    if (int rc = load_problem(path, problem, base, nullptr); rc != 0) {
        return rc;
    }
    if (int rc = apply_flags(flags, base); rc != 0) {
        return rc;
    }

    const int32_t strategies[] = {HS_STRATEGY_UNIFORM, HS_STRATEGY_LINEAR,
                                  HS_STRATEGY_SQUARE};
    std::string csv = "strategy,iteration,mean_best_cost\n";
    for (int32_t strategy : strategies) {
        // mean best cost per iteration, averaged over repeats
        std::vector<double> sums;
        for (int64_t r = 0; r < repeats; ++r) {
            hs_config cfg = base;
            cfg.strategy = strategy;
            cfg.seed = base.seed + static_cast<uint64_t>(r);
            char err[512] = {0};
            hs_result* raw = nullptr;
            hs_status st = hs_run(problem.get(), &cfg, &raw, err, sizeof(err));
            if (st != HS_OK) {
                std::cerr << "error: " << err << "\n";
                return exit_code_of(st);
            }
            ResultHandle result(raw);
            size_t n = hs_result_trace_len(result.get());
            if (sums.empty()) {
                sums.assign(n, 0.0);
            }
            for (size_t i = 0; i < n; ++i) {
                int64_t best = 0;
                hs_result_trace_entry(result.get(), i, nullptr, &best, nullptr, nullptr);
                sums[i] += static_cast<double>(best);
            }
        }
        for (size_t i = 0; i < sums.size(); ++i) {
            csv += strategy_name(strategy);
            csv += ',';
            csv += std::to_string(i);
            csv += ',';
            csv += format_mean(sums[i] / static_cast<double>(repeats));
            csv += '\n';
        }
    }
    if (!write_output(out_path, csv)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& out_path) {
    ProblemHandle problem;
    hs_config cfg{};
    if (int rc = load_problem(path, problem, cfg, nullptr); rc != 0) {
        return rc;
    }
    char err[512] = {0};
    hs_result* raw = nullptr;
    hs_status st = hs_oracle(problem.get(), &raw, err, sizeof(err));
    if (st != HS_OK) {
        std::cerr << "error: " << err << "\n";
        return exit_code_of(st);
    }
    ResultHandle result(raw);
    json report;
    report["best"] = {{"cost", hs_result_best_cost(result.get())},
                      {"assignment", assignment_json(problem.get(), result.get())}};
    if (!write_output(out_path, report.dump(2) + "\n")) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    ProblemHandle problem;
    hs_config cfg{};
    if (int rc = load_problem(path, problem, cfg, nullptr); rc != 0) {
        return rc;
    }
    json report;
    report["valid"] = true;
    report["parameters"] = hs_problem_param_count(problem.get());
    report["constraints"] = hs_problem_constraint_count(problem.get());
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete search over heterogeneous integer parameter spaces"};
    app.require_subcommand(1);

    std::string path;
    std::string out_path;
    std::string trace_path;
    int64_t repeats = 10;
    CommonFlags flags;

    auto add_common = [&](CLI::App* cmd, bool with_strategy) {
        cmd->add_option("problem", path, "problem file (JSON)")->required();
        cmd->add_option("--seed", flags.seed, "master seed");
        cmd->add_option("--iters", flags.iters, "iteration budget (sweeps)");
        cmd->add_option("--pop", flags.pop, "population size (even)");
        cmd->add_option("--scan-cap", flags.scan_cap, "exhaustive-scan threshold");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
        if (with_strategy) {
            cmd->add_option("--strategy", flags.strategy,
                            "sampling strategy: uniform, linear or square");
        }
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run the evolution search");
    add_common(run_cmd, true);
    run_cmd->add_option("--trace-out", trace_path, "write the per-iteration trace CSV");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "run all three strategies over repeated seeds");
    add_common(compare_cmd, false);
    compare_cmd->add_option("--repeats", repeats, "runs per strategy");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exhaustive optimum for small spaces");
    oracle_cmd->add_option("problem", path, "problem file (JSON)")->required();
    oracle_cmd->add_option("--out", out_path, "write output to a file instead of stdout");

    CLI::App* validate_cmd = app.add_subcommand("validate", "schema-check a problem file");
    validate_cmd->add_option("problem", path, "problem file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        return cmd_run(path, flags, out_path, trace_path);
    }
    if (compare_cmd->parsed()) {
        return cmd_compare(path, flags, repeats, out_path);
    }
    if (oracle_cmd->parsed()) {
        return cmd_oracle(path, out_path);
    }
    return cmd_validate(path);
}
