#include "problem.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "rng.hpp"
#include "test_util.hpp"

using namespace hetsearch;

namespace {

const char* kCubeDoc = R"({
  "parameters": [
    {"name": "cube", "type": "composite", "children": [
      {"name": "x", "type": "int", "bounds": [0, 5]},
      {"name": "y", "type": "int", "bounds": [0, 5]},
      {"name": "z", "type": "int", "bounds": [0, 5]}
    ]}
  ],
  "constraints": ["cube.x == cube.y && cube.y == cube.z"],
  "cost": "cube.x"
})";

}  // namespace

TEST_CASE("minimal well-formed document") {
    ProblemSpec spec = parse_problem(
        R"({"parameters":[{"name":"x","type":"int","bounds":[0,10]}],)"
        R"("constraints":["x <= 7"],"cost":"x*x"})");
    CHECK(spec.space.size() == 1);
    CHECK(spec.space.at(0).path == "x");
    CHECK(spec.space.at(0).lo == 0);
    CHECK(spec.space.at(0).hi == 10);
    REQUIRE(spec.assertions.size() == 1);
    CHECK(spec.assertions[0].id == "c0");
    CHECK(spec.assertions[0].paths == std::vector<std::string>{"x"});
    CHECK(spec.cost_source == "x*x");
}

TEST_CASE("composite cube flattens to three leaves") {
    ProblemSpec spec = parse_problem(kCubeDoc);
    REQUIRE(spec.space.size() == 3);
    CHECK(spec.space.at(0).path == "cube.x");
    CHECK(spec.space.at(1).path == "cube.y");
    CHECK(spec.space.at(2).path == "cube.z");
    CHECK(spec.assertions.size() == 1);
}

TEST_CASE("schema violations name the offending path") {
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"b","type":"bool","bounds":[0,1]}],)"
                      R"("cost":"b"})"),
        doctest::Contains("bounds not permitted on bool 'b'"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"int","bounds":[5,2]}],)"
                      R"("cost":"x"})"),
        doctest::Contains("'x': lo > hi"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"int"}],"cost":"x"})"),
        doctest::Contains("requires bounds"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"int","bounds":[0,1]}],)"
                      R"("cost":"x + nope"})"),
        doctest::Contains("unknown variable path 'nope'"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(
            R"({"parameters":[{"name":"c","type":"composite","children":[)"
            R"({"name":"a","type":"bool"},{"name":"a","type":"bool"}]}],"cost":"c.a"})"),
        doctest::Contains("duplicate name 'a' in composite 'c'"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"int","bounds":[0,1]}],)"
                      R"("cost":"x","wat":1})"),
        doctest::Contains("unknown key 'wat'"), Error);
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"2x","type":"bool"}],"cost":"1"})"),
        doctest::Contains("invalid parameter name"), Error);
    CHECK_THROWS_AS(parse_problem(R"({"parameters":[],"cost":"1"})"), Error);
    CHECK_THROWS_AS(parse_problem("{"), Error);  // JSON syntax, position-reported
}

TEST_CASE("config block is validated") {
    ProblemSpec spec = parse_problem(
        R"({"parameters":[{"name":"x","type":"int","bounds":[0,3]}],"cost":"x",)"
        R"("config":{"population":4,"iterations":10,"strategy":"linear","seed":9}})");
    CHECK(spec.defaults.population == 4);
    CHECK(spec.defaults.iterations == 10);
    CHECK(spec.defaults.strategy == Strategy::linear);
    CHECK(spec.defaults.seed == 9);
    CHECK(!spec.defaults.scan_cap.has_value());

    CHECK_THROWS_WITH_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"bool"}],"cost":"x",)"
                      R"("config":{"population":3}})"),
        doctest::Contains("population"), Error);
    CHECK_THROWS_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"bool"}],"cost":"x",)"
                      R"("config":{"strategy":"cubic"}})"),
        Error);
    CHECK_THROWS_AS(
        parse_problem(R"({"parameters":[{"name":"x","type":"bool"}],"cost":"x",)"
                      R"("config":{"mystery":1}})"),
        Error);
}

TEST_CASE("flatten order is depth-first declaration order") {
    std::vector<ParameterDecl> decls;
    ParameterDecl a{"a", ParamKind::integer, 0, 1, {}};
    ParameterDecl b{"b", ParamKind::integer, 0, 1, {}};
    decls = {a, b};
    FlatSpace two = flatten(decls);
    REQUIRE(two.size() == 2);
    CHECK(two.at(0).path == "a");
    CHECK(two.at(1).path == "b");

    ParameterDecl r{"r", ParamKind::integer, 0, 9, {}};
    ParameterDecl q{"q", ParamKind::composite, 0, 0, {r}};
    ParameterDecl p{"p", ParamKind::composite, 0, 0, {q}};
    FlatSpace nested = flatten({p});
    REQUIRE(nested.size() == 1);
    CHECK(nested.at(0).path == "p.q.r");

    ProblemSpec cube = parse_problem(kCubeDoc);
    CHECK(cube.space.paths() ==
          std::vector<std::string>{"cube.x", "cube.y", "cube.z"});
}

TEST_CASE("flattening is a bijection over leaves") {
    ProblemSpec spec = parse_problem(
        R"({"parameters":[
              {"name":"a","type":"bool"},
              {"name":"c","type":"composite","children":[
                 {"name":"m","type":"int","bounds":[1,3]},
                 {"name":"n","type":"composite","children":[
                    {"name":"deep","type":"bool"}]}]},
              {"name":"z","type":"int","bounds":[-2,2]}],
            "cost":"a + c.m + c.n.deep + z"})");
    CHECK(spec.space.paths() ==
          std::vector<std::string>{"a", "c.m", "c.n.deep", "z"});
    // bool leaves always carry the {0,1} domain
    CHECK(spec.space.at(0).lo == 0);
    CHECK(spec.space.at(0).hi == 1);
    for (const auto& path : spec.space.paths()) {
        CHECK(spec.space.find(path) != FlatSpace::npos);
    }
}

TEST_CASE("assignment validation") {
    ProblemSpec cube = parse_problem(kCubeDoc);
    CHECK(validate_assignment(cube.space, cube,
                              testutil::assignment_of(cube, {{"cube.x", 3},
                                                             {"cube.y", 3},
                                                             {"cube.z", 3}})));
    CHECK_FALSE(validate_assignment(cube.space, cube,
                                    testutil::assignment_of(cube, {{"cube.x", 3},
                                                                   {"cube.y", 3},
                                                                   {"cube.z", 4}})));

    ProblemSpec small = testutil::make_problem(
        R"([{"name":"x","type":"int","bounds":[0,10]}])", {"x <= 7"}, "x");
    Assignment out_of_domain{11};
    CHECK_FALSE(validate_assignment(small.space, small, out_of_domain));
    Assignment wrong_arity{};
    CHECK_FALSE(validate_assignment(small.space, small, wrong_arity));
}

TEST_CASE("serialize/parse round trip") {
    ProblemSpec cube = parse_problem(kCubeDoc);
    ProblemSpec again = parse_problem(serialize_problem(cube));
    CHECK(structurally_equal(cube, again));

    ProblemSpec with_config = parse_problem(
        R"json({"parameters":[{"name":"x","type":"int","bounds":[-3,12]}],
        "constraints":["x % 2 == 0"],"cost":"abs(x - 5)",
        "config":{"population":8,"seed":42,"scan_cap":100}})json");
    ProblemSpec back = parse_problem(serialize_problem(with_config));
    CHECK(structurally_equal(with_config, back));
    CHECK(back.defaults.seed == 42);
    CHECK(back.defaults.scan_cap == 100);
}

// Property: referencing any path outside the flat space must fail to parse.
TEST_CASE("unknown path injection always fails") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::string ghost = "ghost_" + std::to_string(rng.below(100000));
        std::string doc =
            R"({"parameters":[{"name":"x","type":"int","bounds":[0,5]}],)"
            R"("constraints":["x + )" + ghost + R"( <= 3"],"cost":"x"})";
        CHECK_THROWS_WITH_AS(parse_problem(doc), doctest::Contains(ghost.c_str()), Error);
    }
}
