#include <doctest.h>

#include "cubeterm/algebra.hpp"
#include "cubeterm/fixtures.hpp"
#include "support.hpp"

using namespace cubeterm;

namespace {

FiniteAlgebra meet2() { return fixture("semilattice2"); }

FiniteAlgebra truncated_sum3() {
    OperationTable op{"sum", 2, {}};
    for (Element x = 0; x < 3; ++x)
        for (Element y = 0; y < 3; ++y) op.table.push_back(std::min<Element>(x + y, 2));
    return {"sum3", 3, {op}};
}

/// Independent reference: S is a subuniverse iff every operation maps S^m into S.
bool closed(const FiniteAlgebra &alg, const ElementSet &s) {
    for (const auto &op : alg.operations) {
        std::vector<Element> args(op.arity, 0);
        for (std::size_t index = 0; index < op.table.size(); ++index) {
            std::size_t rest = index;
            bool inside = true;
            for (std::size_t q = op.arity; q-- > 0;) {
                args[q] = static_cast<Element>(rest % alg.size);
                rest /= alg.size;
                inside = inside && s.contains(args[q]);
            }
            if (inside && !s.contains(op.table[index])) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("element sets") {
    ElementSet s(5, {0, 3});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(1));
    CHECK(s.size() == 2);
    CHECK(s.mask() == 0b1001);
    CHECK(s.members() == std::vector<Element>{0, 3});
    CHECK((s | ElementSet(5, {1})) == ElementSet(5, {0, 1, 3}));
    CHECK((s & ElementSet(5, {3, 4})) == ElementSet(5, {3}));
    CHECK((ElementSet::full(5) - s) == ElementSet(5, {1, 2, 4}));
    CHECK(ElementSet(5, {0}) < ElementSet(5, {1}));
    CHECK(ElementSet::from_mask(5, 0b10110) == ElementSet(5, {1, 2, 4}));
    CHECK_THROWS(s.insert(5));
}

TEST_CASE("validate reports each violation with its location") {
    CHECK(validate(meet2()).empty());

    FiniteAlgebra short_table{"bad", 2, {{"f", 2, {0, 0, 1}}}};
    auto v = validate(short_table);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "table-length");
    CHECK(v[0].location == "operations[0].table");

    FiniteAlgebra wide{"bad", 2, {{"f", 2, {0, 2, 0, 1}}}};
    v = validate(wide);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "entry-out-of-range");
    CHECK(v[0].location == "operations[0].table[1]");

    FiniteAlgebra nullary{"bad", 2, {{"c", 0, {1}}}};
    v = validate(nullary);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].kind == "arity");

    FiniteAlgebra empty{"bad", 0, {}};
    CHECK_FALSE(validate(empty).empty());
    CHECK_THROWS_AS(ensure_valid(wide), InvalidAlgebra);
}

TEST_CASE("apply uses the big-endian table index") {
    const auto meet = meet2().operations[0];
    CHECK(apply(meet, std::vector<Element>{1, 1}, 2) == 1);
    CHECK(apply(meet, std::vector<Element>{1, 0}, 2) == 0);
    CHECK(apply(fixture("constant3").operations[0], std::vector<Element>{0}, 3) == 2);

    OperationTable left{"p", 2, {0, 0, 1, 1}};
    CHECK(apply(left, std::vector<Element>{1, 0}, 2) == 1);
    CHECK_THROWS_AS(apply(meet, std::vector<Element>{1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(apply(meet, std::vector<Element>{1, 2}, 2), std::invalid_argument);
}

TEST_CASE("idempotence") {
    CHECK(is_idempotent(meet2()));
    CHECK_FALSE(is_idempotent(fixture("constant3")));
    CHECK(is_idempotent(no_ops(3)));
    CHECK_THROWS_AS(ensure_idempotent(fixture("constant3")), NotIdempotent);
}

TEST_CASE("sg") {
    CHECK(sg(meet2(), ElementSet(2, {0})) == ElementSet(2, {0}));
    CHECK(sg(truncated_sum3(), ElementSet(3, {1})) == ElementSet(3, {1, 2}));
    CHECK(sg(no_ops(4), ElementSet(4)) == ElementSet(4));
    CHECK(sg(fixture("constant3"), ElementSet(3, {0})) == ElementSet(3, {0, 2}));
}

TEST_CASE("sg is a closure operator on random algebras") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 2 + rng() % 4;
        auto alg = support::random_algebra(rng, n, {1 + rng() % 3, 1 + rng() % 2}, round % 2 == 0);
        const auto s1 = ElementSet::from_mask(n, rng() % (1U << n));
        const auto s2 = s1 | ElementSet::from_mask(n, rng() % (1U << n));
        const auto g1 = sg(alg, s1), g2 = sg(alg, s2);
        CHECK(s1.is_subset_of(g1));
        CHECK(g1.is_subset_of(g2));
        CHECK(sg(alg, g1) == g1);
        CHECK(closed(alg, g1));
        // Least: no closed proper subset of g1 contains s1.
        for (std::uint64_t mask = 0; mask < (1U << n); ++mask) {
            const auto t = ElementSet::from_mask(n, mask);
            if (s1.is_subset_of(t) && closed(alg, t)) CHECK(g1.is_subset_of(t));
        }
    }
}

TEST_CASE("enumerate_subuniverses") {
    auto subs = enumerate_subuniverses(meet2());
    CHECK(subs == std::vector<ElementSet>{ElementSet(2, {0}), ElementSet(2, {1}), ElementSet(2, {0, 1})});
    subs = enumerate_subuniverses(fixture("constant3"));
    CHECK(subs == std::vector<ElementSet>{ElementSet(3, {2}), ElementSet(3, {0, 2}), ElementSet(3, {1, 2}),
                                          ElementSet(3, {0, 1, 2})});
    CHECK(enumerate_subuniverses(no_ops(2)).size() == 3);
    CHECK_THROWS_AS(enumerate_subuniverses(no_ops(21)), BudgetExceeded);

    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 2 + rng() % 4;
        auto alg = support::random_algebra(rng, n, {2}, false);
        std::vector<ElementSet> expected;
        for (std::uint64_t mask = 1; mask < (1U << n); ++mask)
            if (closed(alg, ElementSet::from_mask(n, mask))) expected.push_back(ElementSet::from_mask(n, mask));
        CHECK(enumerate_subuniverses(alg) == expected);
    }
}

TEST_CASE("idempotent algebras have singleton subuniverses") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        auto alg = support::random_algebra(rng, 4, {2, 3}, true);
        for (Element a = 0; a < 4; ++a) CHECK(sg(alg, ElementSet(4, {a})) == ElementSet(4, {a}));
    }
}
