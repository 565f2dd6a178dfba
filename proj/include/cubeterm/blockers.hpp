#pragma once

#include <optional>

#include "cubeterm/algebra.hpp"

namespace cubeterm {

/// A cube term blocker (C, D): nonempty subuniverses with C strictly inside D
/// such that D^k minus (D - C)^k is compatible for every k.
struct Blocker {
    ElementSet C;
    ElementSet D;

    bool operator==(const Blocker &) const = default;
};

/// Checks (C, D) with one pass over each operation table: an operation is
/// fine if some argument position j has f(D, .., D, C, D, .., D) inside C
/// (C at position j). Throws NotIdempotent for non-idempotent input.
bool verify_blocker(const FiniteAlgebra &algebra, const ElementSet &C, const ElementSet &D);

/// Polynomial-time blocker search. For each c in increasing order, grows
/// S = {c} by inclusion-minimal Sg(c, d), d outside S (ties go to the
/// smallest d), and tests (S & Sg(c, d), Sg(c, d)) at every step. Returns
/// the first verified blocker, or nullopt exactly when none exists.
std::optional<Blocker> find_blocker(const FiniteAlgebra &algebra);

/// Reference search over all pairs of subuniverses C < D, scanning D and
/// then C in increasing bitmask order.
std::optional<Blocker> exhaustive_blocker_search(const FiniteAlgebra &algebra, std::size_t max_universe_size = 16);

}  // namespace cubeterm
