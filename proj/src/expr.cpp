#include "expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace hetsearch {

ExprPtr Expr::make_literal(int64_t v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::literal;
    e->value = v;
    return e;
}

ExprPtr Expr::make_variable(std::string path) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::variable;
    e->path = std::move(path);
    return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::unary;
    e->unary_op = op;
    e->children.push_back(std::move(a));
    return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::binary;
    e->binary_op = op;
    e->children.push_back(std::move(a));
    e->children.push_back(std::move(b));
    return e;
}

ExprPtr Expr::make_call(Builtin fn, std::vector<ExprPtr> args) {
    size_t arity = fn == Builtin::fn_abs ? 1 : 2;
    if (args.size() != arity) {
        fail(ErrorKind::usage, "builtin call arity mismatch");
    }
    auto e = std::make_shared<Expr>();
    e->kind = Kind::call;
    e->builtin = fn;
    e->children = std::move(args);
    return e;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
    integer,
    ident,
    plus,
    minus,
    star,
    slash,
    percent,
    caret,
    bang,
    lt,
    le,
    gt,
    ge,
    eq,
    ne,
    and_and,
    or_or,
    lparen,
    rparen,
    comma,
    end,
};

struct Token {
    Tok kind;
    size_t offset;
    int64_t value = 0;      // integer
    std::string text = {};  // ident (full dotted path)
};

bool is_ident_start(char c) {
    return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}

bool is_ident_char(char c) {
    return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            Token t = scan();
            out.push_back(t);
            if (t.kind == Tok::end) {
                break;
            }
        }
        return out;
    }

private:
    [[noreturn]] void error(size_t at, const std::string& what) {
        fail(ErrorKind::parse, what + " at offset " + std::to_string(at));
    }

    Token scan() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        size_t at = pos_;
        if (pos_ >= text_.size()) {
            return {Tok::end, at};
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint64_t v = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                uint64_t d = static_cast<uint64_t>(text_[pos_] - '0');
                if (v > (static_cast<uint64_t>(INT64_MAX) - d) / 10) {
                    error(at, "integer literal out of range");
                }
                v = v * 10 + d;
                ++pos_;
            }
            Token t{Tok::integer, at};
            t.value = static_cast<int64_t>(v);
            return t;
        }
        if (is_ident_start(c)) {
            std::string path;
            for (;;) {
                size_t seg = pos_;
                while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                    ++pos_;
                }
                path.append(text_.substr(seg, pos_ - seg));
                if (pos_ < text_.size() && text_[pos_] == '.') {
                    if (pos_ + 1 >= text_.size() || !is_ident_start(text_[pos_ + 1])) {
                        error(pos_, "expected identifier after '.'");
                    }
                    path.push_back('.');
                    ++pos_;
                    continue;
                }
                break;
            }
            Token t{Tok::ident, at};
            t.text = std::move(path);
            return t;
        }
        ++pos_;
        switch (c) {
            case '+': return {Tok::plus, at};
            case '-': return {Tok::minus, at};
            case '*': return {Tok::star, at};
            case '/': return {Tok::slash, at};
            case '%': return {Tok::percent, at};
            case '^': return {Tok::caret, at};
            case '(': return {Tok::lparen, at};
            case ')': return {Tok::rparen, at};
            case ',': return {Tok::comma, at};
            case '!':
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    ++pos_;
                    return {Tok::ne, at};
                }
                return {Tok::bang, at};
            case '<':
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    ++pos_;
                    return {Tok::le, at};
                }
                return {Tok::lt, at};
            case '>':
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    ++pos_;
                    return {Tok::ge, at};
                }
                return {Tok::gt, at};
            case '=':
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    ++pos_;
                    return {Tok::eq, at};
                }
                error(at, "single '=' is not an operator (use '==')");
            case '&':
                if (pos_ < text_.size() && text_[pos_] == '&') {
                    ++pos_;
                    return {Tok::and_and, at};
                }
                error(at, "single '&' is not an operator (use '&&')");
            case '|':
                if (pos_ < text_.size() && text_[pos_] == '|') {
                    ++pos_;
                    return {Tok::or_or, at};
                }
                error(at, "single '|' is not an operator (use '||')");
            default:
                error(at, std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr run() {
        ExprPtr e = parse_or();
        if (peek().kind != Tok::end) {
            error(peek().offset, "unexpected token");
        }
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(Tok k, const char* what) {
        if (!accept(k)) {
            error(peek().offset, std::string("expected ") + what);
        }
    }

    [[noreturn]] void error(size_t at, const std::string& what) {
        fail(ErrorKind::parse, what + " at offset " + std::to_string(at));
    }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (accept(Tok::or_or)) {
            lhs = Expr::make_binary(BinaryOp::logical_or, lhs, parse_and());
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_comparison();
        while (accept(Tok::and_and)) {
            lhs = Expr::make_binary(BinaryOp::logical_and, lhs, parse_comparison());
        }
        return lhs;
    }

    static bool is_comparison(Tok k) {
        return k == Tok::lt || k == Tok::le || k == Tok::gt || k == Tok::ge ||
               k == Tok::eq || k == Tok::ne;
    }

    ExprPtr parse_comparison() {
        ExprPtr lhs = parse_sum();
        if (!is_comparison(peek().kind)) {
            return lhs;
        }
        Token op = advance();
        ExprPtr rhs = parse_sum();
        if (is_comparison(peek().kind)) {
            error(peek().offset, "chained comparison (write 'a == b && b == c')");
        }
        BinaryOp b{};
        switch (op.kind) {
            case Tok::lt: b = BinaryOp::less; break;
            case Tok::le: b = BinaryOp::less_equal; break;
            case Tok::gt: b = BinaryOp::greater; break;
            case Tok::ge: b = BinaryOp::greater_equal; break;
            case Tok::eq: b = BinaryOp::equal; break;
            default: b = BinaryOp::not_equal; break;
        }
        return Expr::make_binary(b, lhs, rhs);
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept(Tok::plus)) {
                lhs = Expr::make_binary(BinaryOp::add, lhs, parse_term());
            } else if (accept(Tok::minus)) {
                lhs = Expr::make_binary(BinaryOp::subtract, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (accept(Tok::star)) {
                lhs = Expr::make_binary(BinaryOp::multiply, lhs, parse_unary());
            } else if (accept(Tok::slash)) {
                lhs = Expr::make_binary(BinaryOp::divide, lhs, parse_unary());
            } else if (accept(Tok::percent)) {
                lhs = Expr::make_binary(BinaryOp::modulo, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        if (accept(Tok::minus)) {
            return Expr::make_unary(UnaryOp::negate, parse_unary());
        }
        if (accept(Tok::bang)) {
            return Expr::make_unary(UnaryOp::logical_not, parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (!accept(Tok::caret)) {
            return base;
        }
        size_t at = peek().offset;
        ExprPtr exponent = parse_power();
        if (exponent->kind != Expr::Kind::literal || exponent->value < 0) {
            error(at, "power exponent must be a non-negative integer literal");
        }
        return Expr::make_binary(BinaryOp::power, base, exponent);
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::integer: {
                advance();
                return Expr::make_literal(t.value);
            }
            case Tok::lparen: {
                advance();
                ExprPtr e = parse_or();
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::ident: {
                advance();
                if (peek().kind == Tok::lparen) {
                    return parse_call(t);
                }
                return Expr::make_variable(t.text);
            }
            default:
                error(t.offset, "unexpected token");
        }
    }

    ExprPtr parse_call(const Token& name) {
        Builtin fn;
        size_t arity;
        if (name.text == "min") {
            fn = Builtin::fn_min;
            arity = 2;
        } else if (name.text == "max") {
            fn = Builtin::fn_max;
            arity = 2;
        } else if (name.text == "abs") {
            fn = Builtin::fn_abs;
            arity = 1;
        } else {
            error(name.offset, "unknown function '" + name.text + "'");
        }
        expect(Tok::lparen, "'('");
        std::vector<ExprPtr> args;
        args.push_back(parse_or());
        while (accept(Tok::comma)) {
            args.push_back(parse_or());
        }
        expect(Tok::rparen, "')'");
        if (args.size() != arity) {
            error(name.offset, "'" + name.text + "' expects " +
                                   std::to_string(arity) + " argument(s)");
        }
        return Expr::make_call(fn, std::move(args));
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Printing / structure
// ---------------------------------------------------------------------------

namespace {

const char* binary_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::add: return "+";
        case BinaryOp::subtract: return "-";
        case BinaryOp::multiply: return "*";
        case BinaryOp::divide: return "/";
        case BinaryOp::modulo: return "%";
        case BinaryOp::power: return "^";
        case BinaryOp::less: return "<";
        case BinaryOp::less_equal: return "<=";
        case BinaryOp::greater: return ">";
        case BinaryOp::greater_equal: return ">=";
        case BinaryOp::equal: return "==";
        case BinaryOp::not_equal: return "!=";
        case BinaryOp::logical_and: return "&&";
        case BinaryOp::logical_or: return "||";
    }
    return "?";
}

void print(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::literal:
            out += std::to_string(e.value);
            return;
        case Expr::Kind::variable:
            out += e.path;
            return;
        case Expr::Kind::unary:
            out += '(';
            out += (e.unary_op == UnaryOp::negate) ? '-' : '!';
            print(*e.children[0], out);
            out += ')';
            return;
        case Expr::Kind::binary:
            out += '(';
            print(*e.children[0], out);
            out += ' ';
            out += binary_token(e.binary_op);
            out += ' ';
            print(*e.children[1], out);
            out += ')';
            return;
        case Expr::Kind::call:
            switch (e.builtin) {
                case Builtin::fn_min: out += "min("; break;
                case Builtin::fn_max: out += "max("; break;
                case Builtin::fn_abs: out += "abs("; break;
            }
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                print(*e.children[i], out);
            }
            out += ')';
            return;
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) {
        return false;
    }
    switch (a.kind) {
        case Expr::Kind::literal:
            if (a.value != b.value) return false;
            break;
        case Expr::Kind::variable:
            if (a.path != b.path) return false;
            break;
        case Expr::Kind::unary:
            if (a.unary_op != b.unary_op) return false;
            break;
        case Expr::Kind::binary:
            if (a.binary_op != b.binary_op) return false;
            break;
        case Expr::Kind::call:
            if (a.builtin != b.builtin) return false;
            break;
    }
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!structurally_equal(*a.children[i], *b.children[i])) {
            return false;
        }
    }
    return true;
}

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::variable) {
        out.insert(e.path);
    }
    for (const auto& c : e.children) {
        collect_variables(*c, out);
    }
}

}  // namespace

std::vector<std::string> free_variables(const Expr& e) {
    std::set<std::string> vars;
    collect_variables(e, vars);
    return {vars.begin(), vars.end()};
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

int64_t apply_unary(UnaryOp op, int64_t a) {
    switch (op) {
        case UnaryOp::negate: return wrap_neg(a);
        case UnaryOp::logical_not: return a == 0 ? 1 : 0;
    }
    return 0;
}

int64_t power_of(int64_t base, int64_t exponent) {
    if (exponent < 0) {
        fail(ErrorKind::eval, "power with negative exponent");
    }
    int64_t result = 1;
    uint64_t e = static_cast<uint64_t>(exponent);
    int64_t b = base;
    while (e > 0) {
        if (e & 1) {
            result = wrap_mul(result, b);
        }
        b = wrap_mul(b, b);
        e >>= 1;
    }
    return result;
}

int64_t apply_binary(BinaryOp op, int64_t a, int64_t b) {
    switch (op) {
        case BinaryOp::add: return wrap_add(a, b);
        case BinaryOp::subtract: return wrap_sub(a, b);
        case BinaryOp::multiply: return wrap_mul(a, b);
        case BinaryOp::divide:
            if (b == 0) fail(ErrorKind::eval, "division by zero");
            if (b == -1 && a == INT64_MIN) return a;  // wrap, not UB
            return a / b;
        case BinaryOp::modulo:
            if (b == 0) fail(ErrorKind::eval, "modulo by zero");
            if (b == -1) return 0;
            return a % b;
        case BinaryOp::power: return power_of(a, b);
        case BinaryOp::less: return a < b ? 1 : 0;
        case BinaryOp::less_equal: return a <= b ? 1 : 0;
        case BinaryOp::greater: return a > b ? 1 : 0;
        case BinaryOp::greater_equal: return a >= b ? 1 : 0;
        case BinaryOp::equal: return a == b ? 1 : 0;
        case BinaryOp::not_equal: return a != b ? 1 : 0;
        case BinaryOp::logical_and: return std::min(a, b);
        case BinaryOp::logical_or: return std::max(a, b);
    }
    return 0;
}

int64_t apply_call(Builtin fn, std::span<const int64_t> args) {
    switch (fn) {
        case Builtin::fn_min: return std::min(args[0], args[1]);
        case Builtin::fn_max: return std::max(args[0], args[1]);
        case Builtin::fn_abs: return args[0] < 0 ? wrap_neg(args[0]) : args[0];
    }
    return 0;
}

}  // namespace

int64_t eval(const Expr& e, const EvalContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::literal:
            return e.value;
        case Expr::Kind::variable: {
            auto it = ctx.bindings.find(e.path);
            if (it == ctx.bindings.end()) {
                fail(ErrorKind::eval, "unbound variable '" + e.path + "'");
            }
            return it->second;
        }
        case Expr::Kind::unary:
            return apply_unary(e.unary_op, eval(*e.children[0], ctx));
        case Expr::Kind::binary:
            return apply_binary(e.binary_op, eval(*e.children[0], ctx),
                                eval(*e.children[1], ctx));
        case Expr::Kind::call: {
            int64_t args[2] = {0, 0};
            for (size_t i = 0; i < e.children.size(); ++i) {
                args[i] = eval(*e.children[i], ctx);
            }
            return apply_call(e.builtin, std::span<const int64_t>(args, e.children.size()));
        }
    }
    return 0;
}

ExprPtr substitute(const ExprPtr& e, const Bindings& bindings) {
    switch (e->kind) {
        case Expr::Kind::literal:
            return e;
        case Expr::Kind::variable: {
            auto it = bindings.find(e->path);
            return it == bindings.end() ? e : Expr::make_literal(it->second);
        }
        default:
            break;
    }
    std::vector<ExprPtr> kids;
    kids.reserve(e->children.size());
    bool changed = false;
    bool all_literal = true;
    for (const auto& c : e->children) {
        ExprPtr k = substitute(c, bindings);
        changed = changed || (k != c);
        all_literal = all_literal && k->kind == Expr::Kind::literal;
        kids.push_back(std::move(k));
    }
    ExprPtr out = e;
    if (changed) {
        auto n = std::make_shared<Expr>(*e);
        n->children = std::move(kids);
        out = n;
    }
    if (all_literal) {
        try {
            return Expr::make_literal(eval(*out, EvalContext{}));
        } catch (const Error&) {
            // e.g. a constant 1/0: leave unfolded, error surfaces at eval
        }
    }
    return out;
}

std::vector<int64_t> eval_over_candidates(const Expr& e,
                                          const std::string& target_path,
                                          std::span<const int64_t> candidates,
                                          const Bindings& bindings) {
    std::vector<std::string> slots;
    for (const auto& [path, _] : bindings) {
        if (path != target_path) {
            slots.push_back(path);
        }
    }
    std::sort(slots.begin(), slots.end());
    slots.push_back(target_path);
    CompiledExpr program = CompiledExpr::compile(e, slots);

    std::vector<int64_t> values(slots.size(), 0);
    for (size_t i = 0; i + 1 < slots.size(); ++i) {
        values[i] = bindings.at(slots[i]);
    }
    std::vector<int64_t> out;
    out.reserve(candidates.size());
    for (int64_t v : candidates) {
        values.back() = v;
        try {
            out.push_back(program.eval(values));
        } catch (const Error& err) {
            fail(ErrorKind::eval, std::string(err.what()) + " (at " + target_path +
                                      " = " + std::to_string(v) + ")");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Compiled form
// ---------------------------------------------------------------------------

CompiledExpr CompiledExpr::compile(const Expr& e, std::span<const std::string> slot_paths) {
    std::unordered_map<std::string_view, int64_t> index;
    for (size_t i = 0; i < slot_paths.size(); ++i) {
        index.emplace(slot_paths[i], static_cast<int64_t>(i));
    }

    CompiledExpr out;
    int depth = 0;
    auto emit = [&](Op op, int64_t arg, int delta) {
        out.code_.push_back({op, arg});
        depth += delta;
        out.max_stack_ = std::max(out.max_stack_, depth);
    };

    // Postfix emission via an explicit stack walk.
    struct Frame {
        const Expr* node;
        size_t next_child;
    };
    std::vector<Frame> stack{{&e, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        const Expr& n = *f.node;
        if (f.next_child < n.children.size()) {
            stack.push_back({n.children[f.next_child++].get(), 0});
            continue;
        }
        stack.pop_back();
        switch (n.kind) {
            case Expr::Kind::literal:
                emit(Op::push_const, n.value, +1);
                break;
            case Expr::Kind::variable: {
                auto it = index.find(n.path);
                if (it == index.end()) {
                    fail(ErrorKind::eval, "unbound variable '" + n.path + "'");
                }
                emit(Op::push_slot, it->second, +1);
                break;
            }
            case Expr::Kind::unary:
                emit(n.unary_op == UnaryOp::negate ? Op::negate : Op::logical_not, 0, 0);
                break;
            case Expr::Kind::binary: {
                Op op = Op::add;
                switch (n.binary_op) {
                    case BinaryOp::add: op = Op::add; break;
                    case BinaryOp::subtract: op = Op::subtract; break;
                    case BinaryOp::multiply: op = Op::multiply; break;
                    case BinaryOp::divide: op = Op::divide; break;
                    case BinaryOp::modulo: op = Op::modulo; break;
                    case BinaryOp::power: op = Op::power; break;
                    case BinaryOp::less: op = Op::less; break;
                    case BinaryOp::less_equal: op = Op::less_equal; break;
                    case BinaryOp::greater: op = Op::greater; break;
                    case BinaryOp::greater_equal: op = Op::greater_equal; break;
                    case BinaryOp::equal: op = Op::equal; break;
                    case BinaryOp::not_equal: op = Op::not_equal; break;
                    case BinaryOp::logical_and: op = Op::logical_and; break;
                    case BinaryOp::logical_or: op = Op::logical_or; break;
                }
                emit(op, 0, -1);
                break;
            }
            case Expr::Kind::call:
                switch (n.builtin) {
                    case Builtin::fn_min: emit(Op::fn_min, 0, -1); break;
                    case Builtin::fn_max: emit(Op::fn_max, 0, -1); break;
                    case Builtin::fn_abs: emit(Op::fn_abs, 0, 0); break;
                }
                break;
        }
    }
    return out;
}

int64_t CompiledExpr::eval(std::span<const int64_t> slots) const {
    int64_t local[32] = {0};
    std::vector<int64_t> heap;
    int64_t* sp = local;
    if (max_stack_ > 32) {
        heap.resize(static_cast<size_t>(max_stack_));
        sp = heap.data();
    }
    size_t top = 0;

    for (const Instr& ins : code_) {
        switch (ins.op) {
            case Op::push_const:
                sp[top++] = ins.arg;
                break;
            case Op::push_slot:
                sp[top++] = slots[static_cast<size_t>(ins.arg)];
                break;
            case Op::negate:
                sp[top - 1] = wrap_neg(sp[top - 1]);
                break;
            case Op::logical_not:
                sp[top - 1] = sp[top - 1] == 0 ? 1 : 0;
                break;
            case Op::fn_abs:
                if (sp[top - 1] < 0) {
                    sp[top - 1] = wrap_neg(sp[top - 1]);
                }
                break;
            default: {
                int64_t b = sp[--top];
                int64_t a = sp[top - 1];
                int64_t r;
                switch (ins.op) {
                    case Op::add: r = wrap_add(a, b); break;
                    case Op::subtract: r = wrap_sub(a, b); break;
                    case Op::multiply: r = wrap_mul(a, b); break;
                    case Op::divide:
                        if (b == 0) fail(ErrorKind::eval, "division by zero");
                        r = (b == -1 && a == INT64_MIN) ? a : a / b;
                        break;
                    case Op::modulo:
                        if (b == 0) fail(ErrorKind::eval, "modulo by zero");
                        r = (b == -1) ? 0 : a % b;
                        break;
                    case Op::power: r = power_of(a, b); break;
                    case Op::less: r = a < b ? 1 : 0; break;
                    case Op::less_equal: r = a <= b ? 1 : 0; break;
                    case Op::greater: r = a > b ? 1 : 0; break;
                    case Op::greater_equal: r = a >= b ? 1 : 0; break;
                    case Op::equal: r = a == b ? 1 : 0; break;
                    case Op::not_equal: r = a != b ? 1 : 0; break;
                    case Op::logical_and: r = std::min(a, b); break;
                    case Op::logical_or: r = std::max(a, b); break;
                    case Op::fn_min: r = std::min(a, b); break;
                    case Op::fn_max: r = std::max(a, b); break;
                    default: r = 0; break;
                }
                sp[top - 1] = r;
                break;
            }
        }
    }
    return sp[0];
}

}  // namespace hetsearch
