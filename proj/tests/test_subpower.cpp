#include <doctest.h>

#include "cubeterm/fixtures.hpp"
#include "cubeterm/subpower.hpp"
#include "support.hpp"

using namespace cubeterm;

namespace {

std::vector<Tuple> random_tuples(std::mt19937_64 &rng, std::size_t count, std::size_t k, std::size_t n) {
    std::vector<Tuple> out(count, Tuple(k));
    for (auto &t : out)
        for (auto &e : t) e = static_cast<Element>(rng() % n);
    return out;
}

}  // namespace

TEST_CASE("generate matches a naive fixpoint") {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 80; ++round) {
        const std::size_t n = 2 + rng() % 3;
        const std::size_t k = 1 + rng() % (n == 2 ? 7 : 4);
        std::vector<std::size_t> arities{1 + rng() % 3};
        if (round % 2) arities.push_back(2);
        auto alg = support::random_algebra(rng, n, arities, round % 3 == 0);
        auto gens = random_tuples(rng, 1 + rng() % 3, k, n);
        auto expected = support::naive_closure(alg, gens);

        auto result = generate(alg, GeneratorSource::explicit_list(k, gens), std::nullopt);
        CHECK_FALSE(result.answer.truncated);
        CHECK(result.answer.closure_size == expected.size());
        auto got = result.closure.tuples();
        CHECK(std::set<Tuple>(got.begin(), got.end()) == expected);
    }
}

TEST_CASE("membership agrees with the closure") {
    std::mt19937_64 rng(2);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 2 + rng() % 2, k = 2 + rng() % 4;
        auto alg = support::random_algebra(rng, n, {2}, round % 2 == 0);
        auto gens = random_tuples(rng, 2, k, n);
        auto expected = support::naive_closure(alg, gens);
        auto target = random_tuples(rng, 1, k, n).front();
        auto answer = membership(alg, GeneratorSource::explicit_list(k, gens), target);
        CHECK(answer.found == (expected.count(target) == 1));
        if (answer.found) {
            REQUIRE(answer.witness_depth.has_value());
            if (std::find(gens.begin(), gens.end(), target) != gens.end()) CHECK(*answer.witness_depth == 0);
        }
    }
}

TEST_CASE("wide powers use the hashed store") {
    // g generators over {0,1} generate at most 2^(2^g) tuples, whatever the width.
    std::mt19937_64 rng(12);
    for (int round = 0; round < 20; ++round) {
        const std::size_t k = 27 + rng() % 8;
        auto alg = support::random_algebra(rng, 2, round % 2 ? std::vector<std::size_t>{2} : std::vector<std::size_t>{2, 3},
                                           round % 3 == 0);
        auto gens = random_tuples(rng, round % 2 ? 3 : 2, k, 2);
        auto expected = support::naive_closure(alg, gens);
        auto result = generate(alg, GeneratorSource::explicit_list(k, gens), std::nullopt);
        CHECK_FALSE(result.closure.is_dense());
        auto got = result.closure.tuples();
        CHECK(std::set<Tuple>(got.begin(), got.end()) == expected);
        const auto &probe = *std::next(expected.begin(), static_cast<long>(rng() % expected.size()));
        CHECK(membership(alg, GeneratorSource::explicit_list(k, gens), probe).found);
    }
}

TEST_CASE("symmetric runs produce the same closure") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 2 + rng() % 2, d = 2 + rng() % 3;
        auto alg = support::random_algebra(rng, n, {1, 2}, false);
        Tuple a(d, static_cast<Element>(rng() % n)), b(d, static_cast<Element>(rng() % n));
        Tuple prefix{0, 1};
        Symmetry sym;
        sym.classes.emplace_back();
        for (std::size_t i = 0; i < d; ++i) sym.classes.back().push_back(prefix.size() + i);
        auto plain = generate(alg, GeneratorSource::streamed(ChiFamily(a, b, prefix)), std::nullopt);
        auto symmetric = generate(alg, GeneratorSource::streamed(ChiFamily(a, b, prefix)), std::nullopt, {}, sym);
        CHECK(plain.closure == symmetric.closure);
    }
}

TEST_CASE("streamed and explicit generators agree") {
    const auto lattice = fixture("lattice2");
    ChiFamily family({1, 1, 1}, {0, 0, 0});
    std::vector<Tuple> listed;
    Tuple t;
    while (family.next(t)) listed.push_back(t);
    family.reset();
    auto a = generate(lattice, GeneratorSource::streamed(family), std::nullopt);
    auto b = generate(lattice, GeneratorSource::explicit_list(3, listed), std::nullopt);
    CHECK(a.closure == b.closure);
    CHECK(a.closure.size() == 8);  // the join of two generators is (1,1,1)
}

TEST_CASE("budgets truncate instead of answering") {
    const auto nand = fixture("nand2");
    auto gens = std::vector<Tuple>{{0, 0, 1, 1, 0, 1, 0, 1, 1, 0}, {0, 1, 0, 1, 1, 1, 0, 0, 1, 0}};
    Budget tiny;
    tiny.max_elements = 5;
    auto answer = membership(nand, GeneratorSource::explicit_list(10, gens), Tuple(10, 1), tiny);
    CHECK(answer.truncated);
    CHECK_FALSE(answer.found);
    CHECK(answer.truncation_reason == "element cap reached");

    // The four projections of {0,1}^4 generate all 2^16 Boolean functions.
    std::vector<Tuple> projections(4, Tuple(16));
    for (std::size_t row = 0; row < 16; ++row)
        for (std::size_t j = 0; j < 4; ++j) projections[j][row] = (row >> (3 - j)) & 1U;
    Budget quick;
    quick.time_limit = std::chrono::milliseconds(20);
    auto timed = generate(nand, GeneratorSource::explicit_list(16, projections), std::nullopt, quick);
    CHECK(timed.answer.truncated);
    CHECK(timed.answer.truncation_reason == "time limit reached");
}

TEST_CASE("argument errors") {
    const auto meet = fixture("semilattice2");
    CHECK_THROWS_AS(membership(meet, GeneratorSource::explicit_list(2, {{0, 1}}), Tuple{0}), std::invalid_argument);
    CHECK_THROWS_AS(membership(meet, GeneratorSource::explicit_list(2, {{0, 1, 1}}), Tuple{0, 1}),
                    std::invalid_argument);
    Symmetry bad{{{0, 5}}};
    CHECK_THROWS_AS(membership(meet, GeneratorSource::explicit_list(2, {{0, 1}}), Tuple{0, 1}, {}, bad),
                    std::invalid_argument);
}
