#include "cubeterm/algebra.hpp"

#include "frontier.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace cubeterm {

namespace {

std::string join_violations(const std::vector<Violation> &violations) {
    std::string out = "invalid algebra:";
    for (const auto &v : violations) out += " [" + v.location + ": " + v.message + "]";
    return out;
}

void check_universe(std::size_t universe) {
    if (universe > max_universe)
        throw std::invalid_argument("universe size " + std::to_string(universe) + " exceeds " +
                                    std::to_string(max_universe));
}

}  // namespace

InvalidAlgebra::InvalidAlgebra(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

// ElementSet

ElementSet::ElementSet(std::size_t universe) : universe_(universe) { check_universe(universe); }

ElementSet::ElementSet(std::size_t universe, std::initializer_list<Element> members)
    : ElementSet(universe, std::span<const Element>(members.begin(), members.size())) {}

ElementSet::ElementSet(std::size_t universe, std::span<const Element> members) : ElementSet(universe) {
    for (Element e : members) insert(e);
}

ElementSet ElementSet::full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t e = 0; e < universe; ++e) s.bits_.set(e);
    return s;
}

ElementSet ElementSet::from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64) throw std::invalid_argument("from_mask needs a universe of at most 64 elements");
    if (universe < 64 && (mask >> universe) != 0) throw std::invalid_argument("mask has bits outside the universe");
    ElementSet s(universe);
    while (mask) {
        s.bits_.set(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

void ElementSet::insert(Element e) {
    if (e >= universe_) throw std::out_of_range("element " + std::to_string(e) + " outside the universe");
    bits_.set(e);
}

void ElementSet::erase(Element e) {
    if (e < universe_) bits_.reset(e);
}

std::vector<Element> ElementSet::members() const {
    std::vector<Element> out;
    out.reserve(size());
    for (std::size_t e = 0; e < universe_; ++e)
        if (bits_.test(e)) out.push_back(static_cast<Element>(e));
    return out;
}

std::uint64_t ElementSet::mask() const {
    if (universe_ > 64) throw std::logic_error("mask() needs a universe of at most 64 elements");
    std::uint64_t m = 0;
    for (std::size_t e = 0; e < universe_; ++e)
        if (bits_.test(e)) m |= std::uint64_t{1} << e;
    return m;
}

ElementSet ElementSet::operator&(const ElementSet &other) const {
    ElementSet r = *this;
    r.bits_ &= other.bits_;
    return r;
}

ElementSet ElementSet::operator|(const ElementSet &other) const {
    ElementSet r = *this;
    r.bits_ |= other.bits_;
    r.universe_ = std::max(universe_, other.universe_);
    return r;
}

ElementSet ElementSet::operator-(const ElementSet &other) const {
    ElementSet r = *this;
    r.bits_ &= ~other.bits_;
    return r;
}

std::strong_ordering ElementSet::operator<=>(const ElementSet &other) const noexcept {
    if (auto c = universe_ <=> other.universe_; c != 0) return c;
    for (std::size_t i = max_universe; i-- > 0;) {
        bool a = bits_.test(i), b = other.bits_.test(i);
        if (a != b) return a ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

// FiniteAlgebra

std::size_t FiniteAlgebra::max_arity() const noexcept {
    std::size_t m = 0;
    for (const auto &op : operations) m = std::max(m, op.arity);
    return m;
}

std::size_t FiniteAlgebra::description_size() const noexcept {
    std::size_t total = size;
    for (const auto &op : operations) total += op.table.size();
    return total;
}

std::optional<std::uint64_t> checked_power(std::uint64_t n, std::size_t exponent) noexcept {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (n != 0 && r > UINT64_MAX / n) return std::nullopt;
        r *= n;
    }
    return r;
}

std::vector<Violation> validate(const FiniteAlgebra &algebra) {
    std::vector<Violation> out;
    const std::size_t n = algebra.size;
    if (n < 1) out.push_back({"universe-size", "size", "universe must have at least one element"});
    if (n > max_universe)
        out.push_back({"universe-size", "size", "universe larger than " + std::to_string(max_universe)});
    for (std::size_t i = 0; i < algebra.operations.size(); ++i) {
        const auto &op = algebra.operations[i];
        const std::string where = "operations[" + std::to_string(i) + "]";
        if (op.arity < 1) {
            out.push_back({"arity", where, "arity must be at least 1 (got " + std::to_string(op.arity) + ")"});
            continue;
        }
        auto expected = checked_power(n, op.arity);
        if (!expected || *expected != op.table.size()) {
            out.push_back({"table-length", where + ".table",
                           "expected " + (expected ? std::to_string(*expected) : std::string("n^arity")) +
                               " entries, got " + std::to_string(op.table.size())});
        }
        for (std::size_t j = 0; j < op.table.size(); ++j) {
            if (op.table[j] >= n) {
                out.push_back({"entry-out-of-range", where + ".table[" + std::to_string(j) + "]",
                               "value " + std::to_string(op.table[j]) + " not below " + std::to_string(n)});
            }
        }
    }
    return out;
}

void ensure_valid(const FiniteAlgebra &algebra) {
    auto violations = validate(algebra);
    if (!violations.empty()) throw InvalidAlgebra(std::move(violations));
}

Element apply(const OperationTable &op, std::span<const Element> args, std::size_t n) {
    if (args.size() != op.arity)
        throw std::invalid_argument("operation '" + op.name + "' expects " + std::to_string(op.arity) +
                                    " arguments, got " + std::to_string(args.size()));
    std::size_t index = 0;
    for (Element a : args) {
        if (a >= n) throw std::invalid_argument("argument " + std::to_string(a) + " outside the universe");
        index = index * n + a;
    }
    if (index >= op.table.size()) throw std::invalid_argument("operation table too short");
    return op.table[index];
}

bool is_idempotent(const FiniteAlgebra &algebra) {
    const std::size_t n = algebra.size;
    for (const auto &op : algebra.operations) {
        // Index of (a, ..., a) is a * (n^(m-1) + ... + 1).
        std::size_t stride = 0;
        for (std::size_t i = 0; i < op.arity; ++i) stride = stride * n + 1;
        for (std::size_t a = 0; a < n; ++a)
            if (op.table[a * stride] != a) return false;
    }
    return true;
}

void ensure_idempotent(const FiniteAlgebra &algebra) {
    if (!is_idempotent(algebra)) throw NotIdempotent("algebra is not idempotent");
}

ElementSet sg(const FiniteAlgebra &algebra, const ElementSet &seed) {
    const std::size_t n = algebra.size;
    ElementSet result(n);
    std::vector<Element> list;
    for (Element e : seed.members()) {
        if (e >= n) throw std::out_of_range("seed element outside the universe");
        result.insert(e);
        list.push_back(e);
    }

    std::size_t old_end = 0;
    while (old_end < list.size()) {
        const std::size_t cur_end = list.size();
        for (const auto &op : algebra.operations) {
            detail::for_each_frontier_tuple(op.arity, old_end, cur_end, [&](const std::vector<std::size_t> &idx) {
                std::size_t index = 0;
                for (std::size_t q : idx) index = index * n + list[q];
                Element v = op.table[index];
                if (!result.contains(v)) {
                    result.insert(v);
                    list.push_back(v);
                }
                return true;
            });
        }
        old_end = cur_end;
    }
    return result;
}

std::vector<ElementSet> enumerate_subuniverses(const FiniteAlgebra &algebra, std::size_t max_universe_size) {
    const std::size_t n = algebra.size;
    if (n > max_universe_size || n > 63)
        throw BudgetExceeded("subuniverse enumeration refused: 2^" + std::to_string(n) + " subsets");
    std::vector<ElementSet> out;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        ElementSet s = ElementSet::from_mask(n, mask);
        if (sg(algebra, s) == s) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cubeterm
