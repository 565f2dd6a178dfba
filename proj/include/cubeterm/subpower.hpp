#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubeterm/algebra.hpp"
#include "cubeterm/relation.hpp"

namespace cubeterm {

/// Caps for closure computations. Hitting any of them yields a truncated
/// answer, never a wrong one.
struct Budget {
    std::uint64_t max_elements = 100'000'000;
    std::uint64_t max_bytes = std::uint64_t{2} << 30;
    std::optional<std::chrono::milliseconds> time_limit;
};

/// Default budget; CUBETERM_BUDGET_BYTES overrides the memory cap.
Budget default_budget();

/// Generators of a subpower: an explicit list or a streamed chi family.
class GeneratorSource {
  public:
    static GeneratorSource explicit_list(std::size_t arity, std::vector<Tuple> tuples);
    static GeneratorSource streamed(ChiFamily family);

    std::size_t arity() const noexcept { return arity_; }
    bool next(Tuple &out);
    void reset();

  private:
    struct Explicit {
        std::vector<Tuple> tuples;
        std::size_t pos = 0;
    };
    GeneratorSource(std::size_t arity, std::variant<Explicit, ChiFamily> source)
        : arity_(arity), source_(std::move(source)) {}

    std::size_t arity_;
    std::variant<Explicit, ChiFamily> source_;
};

/// Coordinate classes whose entries may be permuted freely. When the
/// generator set is invariant under these permutations, so is its closure,
/// and the engine only combines one representative per orbit in the first
/// "new" argument position. Coordinates not listed are fixed.
struct Symmetry {
    std::vector<std::vector<std::size_t>> classes;

    bool trivial() const noexcept;
};

struct MembershipAnswer {
    bool found = false;
    std::uint64_t closure_size = 0;
    std::optional<std::size_t> witness_depth;  // round in which the target appeared
    bool truncated = false;
    std::string truncation_reason;
};

struct GenerateResult {
    Relation closure;
    MembershipAnswer answer;
};

/// Closure of the generators under the basic operations applied row-wise,
/// with an early exit once `target` is generated. The set computed is the
/// same for every run; a truncated run reports the partial closure.
GenerateResult generate(const FiniteAlgebra &algebra, GeneratorSource generators, std::optional<Tuple> target,
                        const Budget &budget = default_budget(), const Symmetry &symmetry = {});

/// Same as generate with a mandatory target, without materializing the closure.
MembershipAnswer membership(const FiniteAlgebra &algebra, GeneratorSource generators, const Tuple &target,
                            const Budget &budget = default_budget(), const Symmetry &symmetry = {});

}  // namespace cubeterm
