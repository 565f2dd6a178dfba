#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubeterm/algebra.hpp"
#include "cubeterm/relation.hpp"
#include "cubeterm/subpower.hpp"

namespace cubeterm {

/// Named example algebras:
///   lattice2      ({0,1}, meet, join)
///   semilattice2  ({0,1}, meet)
///   nand2         ({0,1}, nand)
///   zero2         ({0,1}, constant 0)
///   constant3     ({0,1,2}, constant 2)
///   no_opsN       N elements, no operations (e.g. no_ops3)
/// Throws std::invalid_argument for unknown names.
FiniteAlgebra fixture(std::string_view name);
FiniteAlgebra no_ops(std::size_t n);
std::vector<std::string> fixture_names();

/// An idempotent binary Latin square on n >= 3 elements. Odd n uses
/// ((n+1)/2)(x+y) mod n, even n a deterministic backtracking search (n <= 10).
FiniteAlgebra idempotent_quasigroup(std::size_t n);

struct TightExampleParams {
    std::size_t n = 0;
    std::vector<std::size_t> arities;  // any order; sorted decreasingly on use

    /// Number of operations that get a pair class: min(#arities >= 2, C(n, 2)).
    std::size_t r() const;
    /// 1 + sum of (m_i - 1) over the r largest arities.
    std::uint64_t N() const;
    /// Pairs (a, b), a < b, in lexicographic order dealt round-robin into r classes.
    std::vector<std::vector<std::pair<Element, Element>>> partition() const;
};

/// Idempotent algebra with a cube term of dimension N and none of dimension
/// N - 1. Operation i <= r returns a on argument tuples consisting of one b
/// and m_i - 1 copies of a for (a, b) in class i, and the maximum otherwise;
/// the remaining operations are first projections. For N = 2 and n > 2 the
/// binary operation is an idempotent quasigroup. Requires n > 2 or N > 2.
FiniteAlgebra tight_example(const TightExampleParams &params);

/// {(2, ..., 2)} together with {0,1}^k minus (1, 0, ..., 0), over {0,1,2}.
/// Compatible with the constant 2 operation, has exactly 2^k tuples, and
/// a = (1,0,...,0) is elusive for b = (0,1,...,1).
Relation elusive_relation(std::size_t k);

/// The k-ary term operations as value tables: the subuniverse of A^(n^k)
/// generated by the k projections, computed by a plain fixpoint iteration.
/// Row r of a table is the argument tuple with big-endian code r.
Relation clone_part(const FiniteAlgebra &algebra, std::size_t k, const Budget &budget = default_budget());

struct CloneCondition {
    enum class Kind { nu, maltsev, cube };
    Kind kind;
    std::size_t dimension = 0;  // cube only

    static CloneCondition nu() { return {Kind::nu, 0}; }
    static CloneCondition maltsev() { return {Kind::cube, 2}; }
    static CloneCondition cube(std::size_t d) { return {Kind::cube, d}; }
};

/// Whether some member of clone_part(algebra, k) satisfies the identities.
/// NU needs k >= 3; cube(d) needs k = 2^d - 1, with variable j standing for
/// the index set with bitmask j.
bool scan_clone_for(const CloneCondition &condition, const Relation &clone, std::size_t universe, std::size_t k);

/// First compatible d-ary chipped cube with d blocks of multiplicity one, over
/// multisets of subuniverse pairs C < D in (D, C) bitmask order.
std::optional<ChippedCubeSpec> exhaustive_chipped_cube_search(const FiniteAlgebra &algebra, std::size_t d,
                                                              std::size_t max_universe_size = 8);

}  // namespace cubeterm
