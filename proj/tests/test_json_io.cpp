#include <doctest.h>

#include "cubeterm/fixtures.hpp"
#include "cubeterm/json_io.hpp"

using namespace cubeterm;

TEST_CASE("algebra round trip") {
    for (const auto &name : {"lattice2", "semilattice2", "nand2", "zero2", "constant3", "no_ops2"}) {
        auto alg = fixture(name);
        auto back = algebra_from_json(to_json(alg));
        CHECK(back.name == alg.name);
        CHECK(back.size == alg.size);
        REQUIRE(back.operations.size() == alg.operations.size());
        for (std::size_t i = 0; i < alg.operations.size(); ++i) {
            CHECK(back.operations[i].name == alg.operations[i].name);
            CHECK(back.operations[i].arity == alg.operations[i].arity);
            CHECK(back.operations[i].table == alg.operations[i].table);
        }
    }
    CHECK(to_json(fixture("semilattice2")).dump() ==
          R"({"name":"semilattice2","size":2,"operations":[{"name":"meet","arity":2,"table":[0,0,0,1]}]})");
}

TEST_CASE("malformed algebras are rejected with violations") {
    auto violations_of = [](const std::string &text) {
        try {
            algebra_from_text(text);
        } catch (const InvalidAlgebra &e) {
            return e.violations();
        }
        return std::vector<Violation>{};
    };
    auto v = violations_of(R"({"size":2,"operations":[{"name":"f","arity":2,"table":[0,2,0,1]}]})");
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "entry-out-of-range");
    CHECK(v[0].location == "operations[0].table[1]");

    v = violations_of(R"({"size":2,"operations":[{"name":"f","arity":2,"table":[0,0,1]}]})");
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "table-length");

    v = violations_of(R"({"size":2,"operations":[{"name":"f","arity":1,"table":[0,-1]}]})");
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "entry-out-of-range");

    CHECK(violations_of(R"({"operations":[]})").at(0).location == "size");
    CHECK(violations_of(R"({"size":2})").at(0).location == "operations");
    CHECK(violations_of("not json").at(0).kind == "syntax");
    CHECK(violations_of("[1,2]").at(0).kind == "schema");
}

TEST_CASE("relations, chipped cubes, blockers and decisions") {
    Relation r(2, 2, std::vector<Tuple>{{0, 0}, {1, 1}});
    CHECK(to_json(r).dump() == R"({"arity":2,"tuples":[[0,0],[1,1]]})");
    CHECK(relation_from_json(to_json(r), 2) == r);
    CHECK_THROWS_AS(relation_from_json(Json::parse(R"({"arity":2,"tuples":[[0,3]]})"), 2), std::invalid_argument);

    ChippedCubeSpec spec{{{ElementSet(3, {0}), ElementSet(3, {0, 2}), 2}}};
    CHECK(to_json(spec).dump() == R"({"blocks":[{"C":[0],"D":[0,2],"mult":2}]})");
    auto back = chipped_cube_spec_from_json(to_json(spec), 3);
    REQUIRE(back.blocks.size() == 1);
    CHECK(back.blocks[0].D == ElementSet(3, {0, 2}));
    CHECK(back.blocks[0].multiplicity == 2);

    Blocker b{ElementSet(2, {0}), ElementSet::full(2)};
    CHECK(to_json(b).dump() == R"({"C":[0],"D":[0,1]})");

    CubeDecision d;
    d.verdict = Verdict::no_cube_term;
    d.dimension_bound = 8;
    d.failing_pair = std::pair<Element, Element>{1, 0};
    CHECK(to_json(d).dump() == R"({"verdict":"no_cube_term","dimension_bound":8,"failing_pair":[1,0]})");
}
