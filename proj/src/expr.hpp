#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace hetsearch {

enum class UnaryOp { negate, logical_not };

enum class BinaryOp {
    add,
    subtract,
    multiply,
    divide,   // truncating toward zero
    modulo,
    power,    // exponent must be a non-negative literal
    less,
    less_equal,
    greater,
    greater_equal,
    equal,
    not_equal,
    logical_and,  // min
    logical_or,   // max
};

enum class Builtin { fn_min, fn_max, fn_abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable AST node. Boolean connectives use fuzzy semantics over integers:
// and = min, or = max, not x = (x == 0 ? 1 : 0); comparisons yield 1/0.
// An expression is "truthy" iff its value is nonzero.
struct Expr {
    enum class Kind { literal, variable, unary, binary, call };

    Kind kind;
    int64_t value = 0;     // literal
    std::string path;      // variable (dotted)
    UnaryOp unary_op{};
    BinaryOp binary_op{};
    Builtin builtin{};
    std::vector<ExprPtr> children;

    static ExprPtr make_literal(int64_t v);
    static ExprPtr make_variable(std::string path);
    static ExprPtr make_unary(UnaryOp op, ExprPtr a);
    static ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b);
    static ExprPtr make_call(Builtin fn, std::vector<ExprPtr> args);
};

using Bindings = std::unordered_map<std::string, int64_t>;

// Scalar evaluation context: every free variable must be bound.
struct EvalContext {
    Bindings bindings;
};

// Parses the expression micro-language. Precedence, low to high:
//   ||  &&  (== != < <= > >=, non-associative)  + -  * / %  unary - !  ^
// Atoms: integer literals, dotted identifiers, min(a,b), max(a,b), abs(a),
// parentheses. Chained comparisons (a == b == c) are rejected.
// Throws Error(parse) with a byte offset on failure.
ExprPtr parse_expression(std::string_view text);

// Canonical fully-parenthesized rendering; reparses to an equal tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Free variables, sorted, unique.
std::vector<std::string> free_variables(const Expr& e);

// Throws Error(eval) on unbound variable, division/modulo by zero, or a
// negative power exponent.
int64_t eval(const Expr& e, const EvalContext& ctx);

// Replaces bound variables with literals and folds constant subtrees.
// Subtrees whose folding would raise (e.g. 1/0) are left intact so the
// error surfaces at evaluation time. Never throws.
ExprPtr substitute(const ExprPtr& e, const Bindings& bindings);

// Batch evaluation: element i equals eval(e, bindings + {target: candidates[i]}).
// Evaluation failures are reported with the offending candidate value.
std::vector<int64_t> eval_over_candidates(const Expr& e,
                                          const std::string& target_path,
                                          std::span<const int64_t> candidates,
                                          const Bindings& bindings);

// Expression compiled to a postfix program over variable slots. This is the
// fast path used by the search loops; the tree walker above stays as the
// independent reference implementation.
class CompiledExpr {
public:
    CompiledExpr() = default;

    // slot_paths fixes the variable layout; a free variable outside it is an
    // eval error at compile time.
    static CompiledExpr compile(const Expr& e, std::span<const std::string> slot_paths);

    int64_t eval(std::span<const int64_t> slots) const;

    bool empty() const { return code_.empty(); }

private:
    enum class Op : uint8_t {
        push_const,
        push_slot,
        negate,
        logical_not,
        add,
        subtract,
        multiply,
        divide,
        modulo,
        power,
        less,
        less_equal,
        greater,
        greater_equal,
        equal,
        not_equal,
        logical_and,
        logical_or,
        fn_min,
        fn_max,
        fn_abs,
    };
    struct Instr {
        Op op;
        int64_t arg;
    };

    std::vector<Instr> code_;
    int max_stack_ = 0;
};

// Two's-complement arithmetic helpers (signed overflow wraps).
inline int64_t wrap_add(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
inline int64_t wrap_sub(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
inline int64_t wrap_mul(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}
inline int64_t wrap_neg(int64_t a) {
    return static_cast<int64_t>(0 - static_cast<uint64_t>(a));
}

}  // namespace hetsearch
