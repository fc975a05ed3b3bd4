#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expr.hpp"

namespace hetsearch {

enum class ParamKind { integer, boolean, composite };

enum class Strategy { uniform, linear, square };

Strategy strategy_from_string(std::string_view s);
const char* to_string(Strategy s);

// One node of the declaration tree. Integers carry inclusive bounds,
// booleans implicitly range over {0,1}, composites carry only children.
struct ParameterDecl {
    std::string name;
    ParamKind kind = ParamKind::integer;
    int64_t lo = 0;
    int64_t hi = 0;
    std::vector<ParameterDecl> children;

    bool operator==(const ParameterDecl&) const = default;
};

struct FlatParameter {
    std::string path;  // dotted, e.g. "cube.x"
    int64_t lo = 0;
    int64_t hi = 0;
    ParamKind kind = ParamKind::integer;  // integer or boolean
};

// Leaves of the declaration tree in depth-first declaration order. Paths are
// the only names expressions may reference.
class FlatSpace {
public:
    size_t size() const { return params_.size(); }
    const FlatParameter& at(size_t i) const { return params_[i]; }
    const std::vector<FlatParameter>& params() const { return params_; }

    // Index of a path, or npos.
    static constexpr size_t npos = static_cast<size_t>(-1);
    size_t find(std::string_view path) const;

    std::vector<std::string> paths() const;

    void add(FlatParameter p);  // rejects duplicate paths

private:
    std::vector<FlatParameter> params_;
    std::unordered_map<std::string, size_t> index_;
};

struct AssertionDecl {
    std::string id;                   // "c0", "c1", ... by position
    std::string source;
    ExprPtr expr;
    std::vector<std::string> paths;   // referenced paths, sorted unique
    std::vector<size_t> param_indices;
    CompiledExpr compiled;            // over FlatSpace slots
};

// Search configuration keys a problem file may pre-set; absent fields fall
// back to built-in defaults (see SearchConfig).
struct ConfigOverrides {
    std::optional<int64_t> population;
    std::optional<int64_t> iterations;
    std::optional<Strategy> strategy;
    std::optional<uint64_t> seed;
    std::optional<int64_t> scan_cap;
    std::optional<int64_t> init_attempts;

    bool operator==(const ConfigOverrides&) const = default;
};

struct ProblemSpec {
    std::vector<ParameterDecl> parameters;
    std::vector<AssertionDecl> assertions;
    std::string cost_source;
    ExprPtr cost;
    CompiledExpr cost_compiled;
    ConfigOverrides defaults;
    FlatSpace space;
};

// Complete assignment, one value per FlatParameter in FlatSpace order.
using Assignment = std::vector<int64_t>;

// Parses and validates a problem document. Top-level keys: "parameters"
// (required), "constraints" (optional array of expression strings), "cost"
// (required expression string), "config" (optional). Unknown keys are
// rejected. Errors name the offending parameter path or constraint id.
ProblemSpec parse_problem(std::string_view json_text);

// Depth-first over declaration order; composites contribute only leaves.
FlatSpace flatten(const std::vector<ParameterDecl>& parameters);

// True iff every value is in-domain and every assertion is truthy under a.
// An assertion that fails to evaluate counts as unsatisfied.
bool validate_assignment(const FlatSpace& space, const ProblemSpec& spec,
                         const Assignment& a);

// Canonical JSON rendering; parses back to a structurally equal spec.
std::string serialize_problem(const ProblemSpec& spec);

bool structurally_equal(const ProblemSpec& a, const ProblemSpec& b);

}  // namespace hetsearch
