#include "problem.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace hetsearch {

using nlohmann::json;

Strategy strategy_from_string(std::string_view s) {
    if (s == "uniform") return Strategy::uniform;
    if (s == "linear") return Strategy::linear;
    if (s == "square") return Strategy::square;
    fail(ErrorKind::parse,
         "unknown strategy '" + std::string(s) + "' (expected uniform, linear or square)");
}

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::uniform: return "uniform";
        case Strategy::linear: return "linear";
        case Strategy::square: return "square";
    }
    return "?";
}

size_t FlatSpace::find(std::string_view path) const {
    auto it = index_.find(std::string(path));
    return it == index_.end() ? npos : it->second;
}

std::vector<std::string> FlatSpace::paths() const {
    std::vector<std::string> out;
    out.reserve(params_.size());
    for (const auto& p : params_) {
        out.push_back(p.path);
    }
    return out;
}

void FlatSpace::add(FlatParameter p) {
    auto [it, inserted] = index_.emplace(p.path, params_.size());
    if (!inserted) {
        fail(ErrorKind::parse, "duplicate parameter path '" + p.path + "'");
    }
    params_.push_back(std::move(p));
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) {
        return false;
    }
    auto head = [](char c) {
        return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    };
    if (!head(s[0])) {
        return false;
    }
    for (char c : s) {
        if (!head(c) && !(c >= '0' && c <= '9')) {
            return false;
        }
    }
    return true;
}

int64_t require_int64(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return j.get<int64_t>();
    }
    if (j.is_number_unsigned()) {
        uint64_t v = j.get<uint64_t>();
        if (v > static_cast<uint64_t>(INT64_MAX)) {
            fail(ErrorKind::parse, where + ": value does not fit in 64-bit signed");
        }
        return static_cast<int64_t>(v);
    }
    fail(ErrorKind::parse, where + ": expected an integer");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            fail(ErrorKind::parse, where + ": unknown key '" + key + "'");
        }
    }
}

ParameterDecl parse_decl(const json& j, const std::string& parent_path) {
    if (!j.is_object()) {
        fail(ErrorKind::parse, "parameter declaration under '" + parent_path +
                                   "' must be an object");
    }
    if (!j.contains("name") || !j.at("name").is_string()) {
        fail(ErrorKind::parse, "parameter under '" + parent_path + "' is missing a name");
    }
    ParameterDecl decl;
    decl.name = j.at("name").get<std::string>();
    std::string path = parent_path.empty() ? decl.name : parent_path + "." + decl.name;
    if (!valid_name(decl.name)) {
        fail(ErrorKind::parse, "invalid parameter name '" + decl.name + "'");
    }
    reject_unknown_keys(j, {"name", "type", "bounds", "children"}, "parameter '" + path + "'");
    if (!j.contains("type") || !j.at("type").is_string()) {
        fail(ErrorKind::parse, "parameter '" + path + "' is missing a type");
    }
    std::string type = j.at("type").get<std::string>();

    if (type == "int") {
        decl.kind = ParamKind::integer;
        if (!j.contains("bounds") || !j.at("bounds").is_array() || j.at("bounds").size() != 2) {
            fail(ErrorKind::parse,
                 "int parameter '" + path + "' requires bounds [lo, hi]");
        }
        if (j.contains("children")) {
            fail(ErrorKind::parse, "children not permitted on int '" + path + "'");
        }
        decl.lo = require_int64(j.at("bounds")[0], "bounds of '" + path + "'");
        decl.hi = require_int64(j.at("bounds")[1], "bounds of '" + path + "'");
        if (decl.lo > decl.hi) {
            fail(ErrorKind::parse, "parameter '" + path + "': lo > hi");
        }
    } else if (type == "bool") {
        decl.kind = ParamKind::boolean;
        if (j.contains("bounds")) {
            fail(ErrorKind::parse, "bounds not permitted on bool '" + path + "'");
        }
        if (j.contains("children")) {
            fail(ErrorKind::parse, "children not permitted on bool '" + path + "'");
        }
        decl.lo = 0;
        decl.hi = 1;
    } else if (type == "composite") {
        decl.kind = ParamKind::composite;
        if (j.contains("bounds")) {
            fail(ErrorKind::parse, "bounds not permitted on composite '" + path + "'");
        }
        if (!j.contains("children") || !j.at("children").is_array() ||
            j.at("children").empty()) {
            fail(ErrorKind::parse,
                 "composite '" + path + "' requires a non-empty children array");
        }
        std::set<std::string> names;
        for (const auto& c : j.at("children")) {
            ParameterDecl child = parse_decl(c, path);
            if (!names.insert(child.name).second) {
                fail(ErrorKind::parse, "duplicate name '" + child.name +
                                           "' in composite '" + path + "'");
            }
            decl.children.push_back(std::move(child));
        }
    } else {
        fail(ErrorKind::parse, "parameter '" + path + "': unknown type '" + type +
                                   "' (expected int, bool or composite)");
    }
    return decl;
}

void flatten_into(const ParameterDecl& decl, const std::string& parent_path,
                  FlatSpace& out) {
    std::string path = parent_path.empty() ? decl.name : parent_path + "." + decl.name;
    if (decl.kind == ParamKind::composite) {
        for (const auto& c : decl.children) {
            flatten_into(c, path, out);
        }
        return;
    }
    out.add(FlatParameter{path, decl.lo, decl.hi, decl.kind});
}

ConfigOverrides parse_config(const json& j) {
    if (!j.is_object()) {
        fail(ErrorKind::parse, "config must be an object");
    }
    reject_unknown_keys(
        j, {"population", "iterations", "strategy", "seed", "scan_cap", "init_attempts"},
        "config");
    ConfigOverrides out;
    if (j.contains("population")) {
        int64_t n = require_int64(j.at("population"), "config.population");
        if (n < 2 || n % 2 != 0) {
            fail(ErrorKind::parse, "config.population must be an even integer >= 2");
        }
        out.population = n;
    }
    if (j.contains("iterations")) {
        int64_t k = require_int64(j.at("iterations"), "config.iterations");
        if (k < 1) {
            fail(ErrorKind::parse, "config.iterations must be >= 1");
        }
        out.iterations = k;
    }
    if (j.contains("strategy")) {
        if (!j.at("strategy").is_string()) {
            fail(ErrorKind::parse, "config.strategy must be a string");
        }
        out.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    }
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (s.is_number_unsigned()) {
            out.seed = s.get<uint64_t>();
        } else if (s.is_number_integer() && s.get<int64_t>() >= 0) {
            out.seed = static_cast<uint64_t>(s.get<int64_t>());
        } else {
            fail(ErrorKind::parse, "config.seed must be a non-negative integer");
        }
    }
    if (j.contains("scan_cap")) {
        int64_t c = require_int64(j.at("scan_cap"), "config.scan_cap");
        if (c < 2) {
            fail(ErrorKind::parse, "config.scan_cap must be >= 2");
        }
        out.scan_cap = c;
    }
    if (j.contains("init_attempts")) {
        int64_t r = require_int64(j.at("init_attempts"), "config.init_attempts");
        if (r < 1) {
            fail(ErrorKind::parse, "config.init_attempts must be >= 1");
        }
        out.init_attempts = r;
    }
    return out;
}

// Parses one expression and pins its variables to the space.
void attach_expression(const std::string& source, const std::string& where,
                       const FlatSpace& space, const std::vector<std::string>& slot_paths,
                       ExprPtr& expr_out, std::vector<std::string>& paths_out,
                       CompiledExpr& compiled_out) {
    try {
        expr_out = parse_expression(source);
    } catch (const Error& e) {
        fail(ErrorKind::parse, where + ": " + e.what());
    }
    paths_out = free_variables(*expr_out);
    for (const auto& p : paths_out) {
        if (space.find(p) == FlatSpace::npos) {
            fail(ErrorKind::parse, "unknown variable path '" + p + "' in " + where);
        }
    }
    compiled_out = CompiledExpr::compile(*expr_out, slot_paths);
}

}  // namespace

FlatSpace flatten(const std::vector<ParameterDecl>& parameters) {
    FlatSpace out;
    for (const auto& p : parameters) {
        flatten_into(p, "", out);
    }
    return out;
}

ProblemSpec parse_problem(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorKind::parse, "top-level document must be an object");
    }
    reject_unknown_keys(doc, {"parameters", "constraints", "cost", "config"}, "document");

    if (!doc.contains("parameters") || !doc.at("parameters").is_array() ||
        doc.at("parameters").empty()) {
        fail(ErrorKind::parse, "'parameters' must be a non-empty array");
    }

    ProblemSpec spec;
    std::set<std::string> top_names;
    for (const auto& p : doc.at("parameters")) {
        ParameterDecl decl = parse_decl(p, "");
        if (!top_names.insert(decl.name).second) {
            fail(ErrorKind::parse, "duplicate name '" + decl.name + "' at top level");
        }
        spec.parameters.push_back(std::move(decl));
    }
    spec.space = flatten(spec.parameters);
    std::vector<std::string> slot_paths = spec.space.paths();

    if (doc.contains("constraints")) {
        if (!doc.at("constraints").is_array()) {
            fail(ErrorKind::parse, "'constraints' must be an array of strings");
        }
        size_t i = 0;
        for (const auto& c : doc.at("constraints")) {
            if (!c.is_string()) {
                fail(ErrorKind::parse, "constraint c" + std::to_string(i) +
                                           " must be a string");
            }
            AssertionDecl a;
            a.id = "c" + std::to_string(i);
            a.source = c.get<std::string>();
            attach_expression(a.source, "constraint " + a.id, spec.space, slot_paths,
                              a.expr, a.paths, a.compiled);
            for (const auto& p : a.paths) {
                a.param_indices.push_back(spec.space.find(p));
            }
            spec.assertions.push_back(std::move(a));
            ++i;
        }
    }

    if (!doc.contains("cost") || !doc.at("cost").is_string()) {
        fail(ErrorKind::parse, "'cost' must be an expression string");
    }
    spec.cost_source = doc.at("cost").get<std::string>();
    std::vector<std::string> cost_paths;
    attach_expression(spec.cost_source, "cost", spec.space, slot_paths, spec.cost,
                      cost_paths, spec.cost_compiled);

    if (doc.contains("config")) {
        spec.defaults = parse_config(doc.at("config"));
    }
    return spec;
}

bool validate_assignment(const FlatSpace& space, const ProblemSpec& spec,
                         const Assignment& a) {
    if (a.size() != space.size()) {
        return false;
    }
    for (size_t i = 0; i < space.size(); ++i) {
        if (a[i] < space.at(i).lo || a[i] > space.at(i).hi) {
            return false;
        }
    }
    for (const auto& assertion : spec.assertions) {
        try {
            if (assertion.compiled.eval(a) == 0) {
                return false;
            }
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

json decl_to_json(const ParameterDecl& d) {
    json j;
    j["name"] = d.name;
    switch (d.kind) {
        case ParamKind::integer:
            j["type"] = "int";
            j["bounds"] = json::array({d.lo, d.hi});
            break;
        case ParamKind::boolean:
            j["type"] = "bool";
            break;
        case ParamKind::composite: {
            j["type"] = "composite";
            json kids = json::array();
            for (const auto& c : d.children) {
                kids.push_back(decl_to_json(c));
            }
            j["children"] = std::move(kids);
            break;
        }
    }
    return j;
}

}  // namespace

std::string serialize_problem(const ProblemSpec& spec) {
    json doc;
    json params = json::array();
    for (const auto& p : spec.parameters) {
        params.push_back(decl_to_json(p));
    }
    doc["parameters"] = std::move(params);
    json constraints = json::array();
    for (const auto& a : spec.assertions) {
        constraints.push_back(a.source);
    }
    doc["constraints"] = std::move(constraints);
    doc["cost"] = spec.cost_source;

    const ConfigOverrides& c = spec.defaults;
    if (c != ConfigOverrides{}) {
        json cfg;
        if (c.population) cfg["population"] = *c.population;
        if (c.iterations) cfg["iterations"] = *c.iterations;
        if (c.strategy) cfg["strategy"] = to_string(*c.strategy);
        if (c.seed) cfg["seed"] = *c.seed;
        if (c.scan_cap) cfg["scan_cap"] = *c.scan_cap;
        if (c.init_attempts) cfg["init_attempts"] = *c.init_attempts;
        doc["config"] = std::move(cfg);
    }
    return doc.dump(2);
}

bool structurally_equal(const ProblemSpec& a, const ProblemSpec& b) {
    if (a.parameters != b.parameters || a.defaults != b.defaults ||
        a.cost_source != b.cost_source || a.assertions.size() != b.assertions.size()) {
        return false;
    }
    for (size_t i = 0; i < a.assertions.size(); ++i) {
        if (a.assertions[i].source != b.assertions[i].source) {
            return false;
        }
    }
    return true;
}

}  // namespace hetsearch
