#pragma once

#include <bitset>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubeterm/errors.hpp"

namespace cubeterm {

/// Universe elements are 0 .. n-1.
using Element = std::uint32_t;

/// Largest universe the library accepts (ElementSet capacity).
inline constexpr std::size_t max_universe = 256;

/// Subset of the universe {0, ..., n-1}, stored as a bitmask.
class ElementSet {
  public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe);
    ElementSet(std::size_t universe, std::initializer_list<Element> members);
    ElementSet(std::size_t universe, std::span<const Element> members);

    static ElementSet full(std::size_t universe);
    /// Members are the set bits of `mask`; requires universe <= 64.
    static ElementSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const noexcept { return universe_; }
    bool contains(Element e) const noexcept { return e < universe_ && bits_.test(e); }
    void insert(Element e);
    void erase(Element e);
    std::size_t size() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    std::vector<Element> members() const;
    std::uint64_t mask() const;  // requires universe <= 64

    bool is_subset_of(const ElementSet &other) const noexcept { return (bits_ & ~other.bits_).none(); }
    ElementSet operator&(const ElementSet &other) const;
    ElementSet operator|(const ElementSet &other) const;
    ElementSet operator-(const ElementSet &other) const;

    bool operator==(const ElementSet &other) const noexcept {
        return universe_ == other.universe_ && bits_ == other.bits_;
    }

    /// Orders by bitmask value (element 0 is the least significant bit).
    std::strong_ordering operator<=>(const ElementSet &other) const noexcept;

  private:
    std::size_t universe_ = 0;
    std::bitset<max_universe> bits_;
};

/// A basic operation of arity m >= 1 given by its value table.
///
/// The value at (a_1, ..., a_m) is table[a_1 n^(m-1) + ... + a_m]: the first
/// argument is the most significant digit. This is the only encoding used,
/// both in memory and in files.
struct OperationTable {
    std::string name;
    std::size_t arity = 0;
    std::vector<Element> table;
};

struct FiniteAlgebra {
    std::optional<std::string> name;
    std::size_t size = 0;
    std::vector<OperationTable> operations;

    std::size_t max_arity() const noexcept;
    /// Total description size: n plus the lengths of all tables.
    std::size_t description_size() const noexcept;
};

/// All invariant violations of `algebra`; empty means valid.
std::vector<Violation> validate(const FiniteAlgebra &algebra);

/// Throws InvalidAlgebra carrying the violations if there are any.
void ensure_valid(const FiniteAlgebra &algebra);

/// n^exponent, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> checked_power(std::uint64_t n, std::size_t exponent) noexcept;

/// Table lookup. Throws std::invalid_argument on arity mismatch or an
/// argument outside [0, n).
Element apply(const OperationTable &op, std::span<const Element> args, std::size_t n);

bool is_idempotent(const FiniteAlgebra &algebra);

/// Throws NotIdempotent unless every basic operation is idempotent.
void ensure_idempotent(const FiniteAlgebra &algebra);

/// Subuniverse generated by `seed`.
///
/// Works in rounds S_0 = seed, S_1, ...: round i only evaluates argument
/// tuples that contain an element first added in round i-1, so every table
/// entry is read at most once per operation.
ElementSet sg(const FiniteAlgebra &algebra, const ElementSet &seed);

/// All nonempty subuniverses, ordered by bitmask. Refuses (BudgetExceeded)
/// when the universe is larger than `max_universe_size`.
std::vector<ElementSet> enumerate_subuniverses(const FiniteAlgebra &algebra,
                                               std::size_t max_universe_size = 20);

}  // namespace cubeterm
