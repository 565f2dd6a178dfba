#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cubeterm/algebra.hpp"

namespace cubeterm {

using Tuple = std::vector<Element>;

/// Relations with at most this many codes (n^k) use the dense bitset.
inline constexpr std::uint64_t dense_code_limit = std::uint64_t{1} << 26;

/// Big-endian code sum_i t_i n^(k-i); nullopt when n^k does not fit in 64 bits.
std::optional<std::uint64_t> encode(std::span<const Element> t, std::size_t n);
Tuple decode(std::uint64_t code, std::size_t n, std::size_t arity);

/// A finite set of k-tuples over {0, ..., n-1}. Immutable once built.
///
/// Small relations (n^k <= dense_code_limit) are a bitset over tuple codes;
/// larger ones are a lexicographically sorted flat array of tuples.
class Relation {
  public:
    Relation(std::size_t universe, std::size_t arity);
    Relation(std::size_t universe, std::size_t arity, std::span<const Tuple> tuples);
    /// Full power A^k.
    static Relation full(std::size_t universe, std::size_t arity);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return size_; }
    bool is_dense() const noexcept { return std::holds_alternative<Dense>(rep_); }

    bool contains(std::span<const Element> t) const;
    /// All members in lexicographic (= code) order.
    std::vector<Tuple> tuples() const;

    template <typename Fn>
    void for_each(Fn &&fn) const {
        Tuple t(arity_);
        if (const auto *d = std::get_if<Dense>(&rep_)) {
            for (std::size_t w = 0; w < d->words.size(); ++w) {
                std::uint64_t bits = d->words[w];
                while (bits) {
                    std::uint64_t code = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    decode_into(code, t);
                    fn(static_cast<const Tuple &>(t));
                }
            }
        } else {
            const auto &flat = std::get<Sparse>(rep_).flat;
            for (std::size_t i = 0; i < size_; ++i) {
                t.assign(flat.begin() + static_cast<std::ptrdiff_t>(i * arity_),
                         flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * arity_));
                fn(static_cast<const Tuple &>(t));
            }
        }
    }

    bool operator==(const Relation &other) const;

  private:
    struct Dense {
        std::vector<std::uint64_t> words;
    };
    struct Sparse {
        std::vector<Element> flat;  // size_ * arity_ entries, sorted, unique
    };

    void decode_into(std::uint64_t code, Tuple &t) const;

    std::size_t universe_;
    std::size_t arity_;
    std::size_t size_ = 0;
    std::variant<Dense, Sparse> rep_;
};

/// chi_I(a, b): b on the coordinates in I, a elsewhere. Bit i of `subset`
/// stands for coordinate i+1.
Tuple chi(std::span<const Element> a, std::span<const Element> b, std::uint64_t subset);

/// Restartable stream of prefix . chi_J(a, b) over nonempty index sets.
///
/// Without blocks, J ranges over the nonempty subsets I of the coordinates.
/// With blocks, coordinates are grouped (block_of[i] in [0, blocks)) and J is
/// the union of the blocks in a nonempty I subset of [blocks]; this is the
/// generator family of a stacked term condition. Values that coincide are
/// emitted once, at the position of their first occurrence in binary-counter
/// order of I.
class ChiFamily {
  public:
    ChiFamily(Tuple a, Tuple b, Tuple prefix = {});
    ChiFamily(Tuple a, Tuple b, std::vector<std::size_t> block_of, std::size_t blocks, Tuple prefix = {});

    std::size_t arity() const noexcept { return prefix_.size() + a_.size(); }
    /// Number of distinct tuples the stream yields.
    std::uint64_t distinct_count() const noexcept;

    /// Writes the next tuple into `out`; false when exhausted.
    bool next(Tuple &out);
    void reset() noexcept;

  private:
    void emit(std::uint64_t block_subset, Tuple &out) const;

    Tuple a_, b_, prefix_;
    std::vector<std::size_t> block_of_;
    std::size_t blocks_;
    std::uint64_t active_mask_ = 0;   // blocks where a and b differ somewhere
    std::uint64_t inactive_low_ = 0;  // lowest block bit outside active_mask_, 0 if none
    std::uint64_t cursor_ = 0;        // current submask of active_mask_
    bool started_ = false;
    bool emitted_a_ = false;
    bool done_ = false;
};

/// One block of a chipped cube: (C | D^multiplicity).
struct ChippedBlock {
    ElementSet C;
    ElementSet D;
    std::size_t multiplicity = 1;
};

struct ChippedCubeSpec {
    std::vector<ChippedBlock> blocks;

    std::size_t arity() const noexcept;
};

struct CompatibilityOptions {
    /// Direct scans evaluate at most this many argument tuples in total;
    /// beyond it the check is a bounded closure computation.
    std::uint64_t direct_scan_limit = 50'000'000;
};

/// Whether R is a subuniverse of A^k.
bool is_compatible(const FiniteAlgebra &algebra, const Relation &relation, CompatibilityOptions options = {});

/// All chi_I(a, b) with I nonempty lie in R while a does not.
bool is_elusive_witness(const Relation &relation, std::span<const Element> a, std::span<const Element> b,
                        std::size_t max_arity = 30);

/// Product of the D_i^{n_i} minus the product of the (D_i - C_i)^{n_i}.
Relation chipped_cube(const ChippedCubeSpec &spec, std::size_t universe,
                      std::uint64_t max_tuples = dense_code_limit);

}  // namespace cubeterm
