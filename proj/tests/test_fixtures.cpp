#include <doctest.h>

#include "cubeterm/decide.hpp"
#include "cubeterm/fixtures.hpp"
#include "support.hpp"

using namespace cubeterm;

namespace {

bool is_latin_and_idempotent(const FiniteAlgebra &q) {
    const std::size_t n = q.size;
    const auto &t = q.operations.at(0).table;
    for (std::size_t x = 0; x < n; ++x) {
        if (t[x * n + x] != x) return false;
        std::set<Element> row, col;
        for (std::size_t y = 0; y < n; ++y) {
            row.insert(t[x * n + y]);
            col.insert(t[y * n + x]);
        }
        if (row.size() != n || col.size() != n) return false;
    }
    return true;
}

/// All 16 binary operations on {0,1}.
std::vector<FiniteAlgebra> binary_two_element() {
    std::vector<FiniteAlgebra> out;
    for (unsigned bits = 0; bits < 16; ++bits)
        out.push_back({"b", 2, {{"f", 2, {bits & 1U, (bits >> 1) & 1U, (bits >> 2) & 1U, (bits >> 3) & 1U}}}});
    return out;
}

}  // namespace

TEST_CASE("named fixtures") {
    CHECK(fixture("lattice2").operations[0].table == std::vector<Element>{0, 0, 0, 1});
    CHECK(fixture("lattice2").operations[1].table == std::vector<Element>{0, 1, 1, 1});
    CHECK(fixture("nand2").operations[0].table == std::vector<Element>{1, 1, 1, 0});
    CHECK(fixture("constant3").operations[0].table == std::vector<Element>{2, 2, 2});
    CHECK(fixture("zero2").operations[0].table == std::vector<Element>{0, 0});
    CHECK(fixture("no_ops3").operations.empty());
    CHECK(fixture("no_ops3").size == 3);
    CHECK_THROWS_AS(fixture("lattice7"), std::invalid_argument);
    CHECK_THROWS_AS(fixture("no_opsx"), std::invalid_argument);
    for (const auto &name : {"lattice2", "semilattice2", "nand2", "zero2", "constant3"})
        CHECK(validate(fixture(name)).empty());
}

TEST_CASE("idempotent quasigroups") {
    auto q3 = idempotent_quasigroup(3);
    for (Element x = 0; x < 3; ++x)
        for (Element y = 0; y < 3; ++y) CHECK(q3.operations[0].table[x * 3 + y] == (2 * x + 2 * y) % 3);
    auto q5 = idempotent_quasigroup(5);
    CHECK(q5.operations[0].table[1 * 5 + 3] == (3 * 4) % 5);
    for (std::size_t n = 3; n <= 10; ++n) CHECK(is_latin_and_idempotent(idempotent_quasigroup(n)));
    CHECK_THROWS_AS(idempotent_quasigroup(2), std::invalid_argument);
}

TEST_CASE("tight example parameters") {
    TightExampleParams p{4, {2, 2, 2}};
    CHECK(p.r() == 3);
    CHECK(p.N() == 4);
    auto classes = p.partition();
    REQUIRE(classes.size() == 3);
    CHECK(classes[0] == std::vector<std::pair<Element, Element>>{{0, 1}, {1, 2}});
    CHECK(classes[1] == std::vector<std::pair<Element, Element>>{{0, 2}, {1, 3}});
    CHECK(classes[2] == std::vector<std::pair<Element, Element>>{{0, 3}, {2, 3}});

    TightExampleParams q{2, {3, 3}};
    CHECK(q.r() == 1);
    CHECK(q.N() == 3);
    CHECK_THROWS_AS(tight_example({2, {2}}), std::invalid_argument);
}

TEST_CASE("tight examples are idempotent and conservative") {
    for (auto p : std::vector<TightExampleParams>{{3, {3}}, {3, {2, 2}}, {2, {3, 3}}, {4, {3, 2}}, {3, {2, 1}}}) {
        auto alg = tight_example(p);
        CHECK(validate(alg).empty());
        CHECK(is_idempotent(alg));
        for (std::size_t i = 0; i < p.r() && p.N() > 2; ++i) {
            const auto &op = alg.operations[i];
            std::vector<Element> args(op.arity);
            for (std::size_t index = 0; index < op.table.size(); ++index) {
                std::size_t rest = index;
                for (std::size_t q = op.arity; q-- > 0;) args[q] = static_cast<Element>(rest % p.n), rest /= p.n;
                CHECK(std::find(args.begin(), args.end(), op.table[index]) != args.end());
            }
        }
    }
    auto two = tight_example({2, {3, 3}});
    REQUIRE(two.operations.size() == 2);
    CHECK(two.operations[1].table == std::vector<Element>{0, 0, 0, 0, 1, 1, 1, 1});
    CHECK(two.operations[0].table == std::vector<Element>{0, 0, 0, 1, 0, 1, 1, 1});

    auto quasi = tight_example({3, {2}});
    CHECK(is_latin_and_idempotent(quasi));
}

TEST_CASE("tight examples attain their bound") {
    for (auto p : std::vector<TightExampleParams>{{3, {3}}, {3, {2, 2}}, {2, {3, 3}}, {2, {4}}}) {
        auto alg = tight_example(p);
        CHECK(check_cube_dim(alg, p.N()));
        CHECK_FALSE(check_cube_dim(alg, p.N() - 1));
    }
}

TEST_CASE("elusive relation") {
    auto r2 = elusive_relation(2);
    CHECK(r2.tuples() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 1}, {2, 2}});
    CHECK(elusive_relation(3).size() == 8);
    for (std::size_t k = 2; k <= 6; ++k) {
        auto r = elusive_relation(k);
        CHECK(r.size() == (1U << k));
        CHECK(is_compatible(fixture("constant3"), r));
        Tuple a(k, 0), b(k, 1);
        a[0] = 1;
        b[0] = 0;
        CHECK(is_elusive_witness(r, a, b));
    }
    CHECK_THROWS_AS(elusive_relation(1), std::invalid_argument);
}

TEST_CASE("clone parts") {
    auto meet = clone_part(fixture("semilattice2"), 2);
    CHECK(meet.tuples() == std::vector<Tuple>{{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}});

    auto nand = clone_part(fixture("nand2"), 3);
    CHECK(nand.size() == 256);
    CHECK(nand.contains(std::vector<Element>{0, 0, 0, 1, 0, 1, 1, 1}));  // majority

    CHECK(scan_clone_for(CloneCondition::nu(), clone_part(fixture("lattice2"), 3), 2, 3));
    CHECK_FALSE(scan_clone_for(CloneCondition::nu(), clone_part(fixture("semilattice2"), 3), 2, 3));
    CHECK_FALSE(scan_clone_for(CloneCondition::maltsev(), clone_part(fixture("lattice2"), 3), 2, 3));
    CHECK(scan_clone_for(CloneCondition::maltsev(), clone_part(idempotent_quasigroup(3), 3), 3, 3));
    CHECK_THROWS_AS(scan_clone_for(CloneCondition::cube(3), nand, 2, 3), std::invalid_argument);

    Budget tiny;
    tiny.max_elements = 10;
    CHECK_THROWS_AS(clone_part(fixture("nand2"), 3, tiny), BudgetExceeded);
}

TEST_CASE("clone scans agree with the stacked checks on two elements") {
    for (const auto &alg : binary_two_element()) {
        auto clone = clone_part(alg, 3);
        CHECK(scan_clone_for(CloneCondition::nu(), clone, 2, 3) == check_nu(alg, 3));
        CHECK(scan_clone_for(CloneCondition::maltsev(), clone, 2, 3) == check_cube_dim(alg, 2));
    }
    for (const auto &name : {"lattice2", "semilattice2", "nand2", "zero2"}) {
        auto alg = fixture(name);
        CHECK(scan_clone_for(CloneCondition::nu(), clone_part(alg, 3), 2, 3) == check_nu(alg, 3));
    }
}

TEST_CASE("chipped cube search") {
    auto meet = exhaustive_chipped_cube_search(fixture("semilattice2"), 2);
    REQUIRE(meet.has_value());
    REQUIRE(meet->blocks.size() == 2);
    for (const auto &b : meet->blocks) {
        CHECK(b.C == ElementSet(2, {0}));
        CHECK(b.D == ElementSet::full(2));
        CHECK(b.multiplicity == 1);
    }
    CHECK_FALSE(exhaustive_chipped_cube_search(fixture("lattice2"), 3).has_value());
    CHECK_FALSE(exhaustive_chipped_cube_search(idempotent_quasigroup(3), 2).has_value());
    CHECK_THROWS_AS(exhaustive_chipped_cube_search(fixture("zero2"), 2), NotIdempotent);
}

TEST_CASE("chipped cubes obstruct exactly the missing cube terms") {
    std::mt19937_64 rng(53);
    std::vector<FiniteAlgebra> algebras{fixture("lattice2"), fixture("semilattice2"), idempotent_quasigroup(3)};
    for (int i = 0; i < 20; ++i) algebras.push_back(support::random_algebra(rng, 2 + rng() % 2, {2}, true));
    for (const auto &alg : algebras)
        for (std::size_t d = 2; d <= 3; ++d)
            CHECK(exhaustive_chipped_cube_search(alg, d).has_value() == !check_cube_dim(alg, d));
}
