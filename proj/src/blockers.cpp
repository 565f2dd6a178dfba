#include "cubeterm/blockers.hpp"

#include <vector>

namespace cubeterm {

namespace {

bool valid_pair_shape(const ElementSet &C, const ElementSet &D) {
    return !C.empty() && C.is_subset_of(D) && !(C == D);
}

/// Coordinate test on one table. ruled_out[j] is set once some tuple over D
/// with a C-entry at j maps outside C.
bool has_absorbing_position(const OperationTable &op, std::size_t n, const ElementSet &C, const ElementSet &D) {
    const std::size_t m = op.arity;
    std::vector<bool> ruled_out(m, false);
    std::vector<Element> args(m, 0);
    for (std::size_t index = 0; index < op.table.size(); ++index) {
        // args holds the digits of index (first argument most significant).
        bool inside_d = true;
        for (Element a : args) inside_d = inside_d && D.contains(a);
        if (inside_d && !C.contains(op.table[index])) {
            for (std::size_t j = 0; j < m; ++j)
                if (C.contains(args[j])) ruled_out[j] = true;
        }
        for (std::size_t q = m; q-- > 0;) {
            if (++args[q] < n) break;
            args[q] = 0;
        }
    }
    for (bool r : ruled_out)
        if (!r) return true;
    return false;
}

}  // namespace

bool verify_blocker(const FiniteAlgebra &algebra, const ElementSet &C, const ElementSet &D) {
    ensure_valid(algebra);
    ensure_idempotent(algebra);
    if (C.universe() != algebra.size || D.universe() != algebra.size)
        throw std::invalid_argument("blocker sets over a different universe");
    if (!valid_pair_shape(C, D)) return false;
    if (!(sg(algebra, C) == C) || !(sg(algebra, D) == D)) return false;
    for (const auto &op : algebra.operations)
        if (!has_absorbing_position(op, algebra.size, C, D)) return false;
    return true;
}

std::optional<Blocker> find_blocker(const FiniteAlgebra &algebra) {
    ensure_valid(algebra);
    ensure_idempotent(algebra);
    const std::size_t n = algebra.size;
    const ElementSet universe = ElementSet::full(n);

    for (Element c = 0; c < n; ++c) {
        std::vector<ElementSet> generated(n);
        for (Element d = 0; d < n; ++d) generated[d] = sg(algebra, ElementSet(n, {c, d}));

        ElementSet S(n, {c});
        while (!(S == universe)) {
            // Inclusion-minimal Sg(c, d) over d outside S; smallest d wins ties.
            std::optional<Element> chosen;
            for (Element d = 0; d < n; ++d) {
                if (S.contains(d)) continue;
                bool minimal = true;
                for (Element e = 0; e < n && minimal; ++e) {
                    if (e == d || S.contains(e)) continue;
                    const auto &other = generated[e];
                    if (other.is_subset_of(generated[d]) && !(other == generated[d])) minimal = false;
                }
                if (minimal) {
                    chosen = d;
                    break;
                }
            }
            const ElementSet &D = generated[*chosen];
            const ElementSet C = S & D;
            if (verify_blocker(algebra, C, D)) return Blocker{C, D};
            S = S | D;
        }
    }
    return std::nullopt;
}

std::optional<Blocker> exhaustive_blocker_search(const FiniteAlgebra &algebra, std::size_t max_universe_size) {
    ensure_valid(algebra);
    ensure_idempotent(algebra);
    const auto subuniverses = enumerate_subuniverses(algebra, max_universe_size);
    for (const auto &D : subuniverses) {
        for (const auto &C : subuniverses) {
            if (!(C < D)) break;
            if (!C.is_subset_of(D)) continue;
            if (verify_blocker(algebra, C, D)) return Blocker{C, D};
        }
    }
    return std::nullopt;
}

}  // namespace cubeterm
