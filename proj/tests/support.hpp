#pragma once

#include <random>
#include <set>
#include <vector>

#include "cubeterm/algebra.hpp"
#include "cubeterm/relation.hpp"

namespace support {

using cubeterm::Element;
using cubeterm::FiniteAlgebra;
using cubeterm::OperationTable;
using cubeterm::Tuple;

/// Random algebra with the given arities; idempotent tables keep f(a,...,a) = a.
inline FiniteAlgebra random_algebra(std::mt19937_64 &rng, std::size_t n, const std::vector<std::size_t> &arities,
                                    bool idempotent) {
    FiniteAlgebra alg{"random", n, {}};
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t i = 0; i < arities.size(); ++i) {
        const std::size_t m = arities[i];
        OperationTable op{"f" + std::to_string(i), m, {}};
        std::size_t rows = 1;
        for (std::size_t q = 0; q < m; ++q) rows *= n;
        std::size_t diag_step = 0;
        for (std::size_t q = 0; q < m; ++q) diag_step = diag_step * n + 1;
        for (std::size_t r = 0; r < rows; ++r)
            op.table.push_back(idempotent && r % diag_step == 0 ? static_cast<Element>(r / diag_step) : pick(rng));
        alg.operations.push_back(std::move(op));
    }
    return alg;
}

/// 2-element idempotent sample: 1 to 2 operations of arity 2 or 3.
inline std::vector<FiniteAlgebra> two_element_sample(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FiniteAlgebra> out;
    while (out.size() < count) {
        std::vector<std::size_t> arities(1 + rng() % 2);
        for (auto &m : arities) m = 2 + rng() % 2;
        out.push_back(random_algebra(rng, 2, arities, true));
    }
    return out;
}

/// Plain fixpoint closure of a set of tuples: re-applies every operation to
/// every argument choice until nothing new appears.
inline std::set<Tuple> naive_closure(const FiniteAlgebra &alg, std::vector<Tuple> gens) {
    std::set<Tuple> seen(gens.begin(), gens.end());
    std::vector<Tuple> members(seen.begin(), seen.end());
    if (members.empty()) return seen;
    const std::size_t k = members.front().size();
    bool changed = true;
    while (changed) {
        changed = false;
        const std::vector<Tuple> snapshot = members;
        for (const auto &op : alg.operations) {
            std::vector<std::size_t> pick(op.arity, 0);
            std::vector<Element> args(op.arity);
            while (true) {
                Tuple t(k);
                for (std::size_t row = 0; row < k; ++row) {
                    for (std::size_t q = 0; q < op.arity; ++q) args[q] = snapshot[pick[q]][row];
                    t[row] = cubeterm::apply(op, args, alg.size);
                }
                if (seen.insert(t).second) {
                    members.push_back(t);
                    changed = true;
                }
                std::size_t q = op.arity;
                while (q > 0 && ++pick[q - 1] == snapshot.size()) pick[--q] = 0;
                if (q == 0) break;
            }
        }
    }
    return seen;
}

}  // namespace support
