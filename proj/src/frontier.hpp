#pragma once

#include <cstddef>
#include <vector>

namespace cubeterm::detail {

/// Calls visit(idx) for every index tuple idx in [0, cur_end)^arity that has
/// at least one entry in [old_end, cur_end), each exactly once.
///
/// Tuples are grouped by the first position p holding a "new" index: entries
/// before p range over [0, old_end), entry p over [old_end, cur_end), entries
/// after p over [0, cur_end). `visit` returns false to stop early; the
/// function then returns false as well.
template <typename Visit>
bool for_each_frontier_tuple(std::size_t arity, std::size_t old_end, std::size_t cur_end, Visit &&visit) {
    if (old_end >= cur_end || arity == 0) return true;
    std::vector<std::size_t> idx(arity);
    for (std::size_t p = 0; p < arity; ++p) {
        if (p > 0 && old_end == 0) break;
        auto lo = [&](std::size_t q) { return q == p ? old_end : std::size_t{0}; };
        auto hi = [&](std::size_t q) { return q < p ? old_end : cur_end; };
        for (std::size_t q = 0; q < arity; ++q) idx[q] = lo(q);
        bool more = true;
        while (more) {
            if (!visit(static_cast<const std::vector<std::size_t> &>(idx))) return false;
            more = false;
            for (std::size_t q = arity; q-- > 0;) {
                if (++idx[q] < hi(q)) {
                    more = true;
                    break;
                }
                idx[q] = lo(q);
            }
        }
    }
    return true;
}

}  // namespace cubeterm::detail
