#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubeterm/algebra.hpp"
#include "cubeterm/blockers.hpp"
#include "cubeterm/subpower.hpp"

namespace cubeterm {

// Dimension bounds

/// 1 + sum of (m_i - 1) over the r largest arities, r = min(#ops, C(n, 2)).
std::uint64_t bound_idempotent_N(const FiniteAlgebra &algebra);
/// 1 + (m - 1) C(n, 2) for the maximum arity m.
std::uint64_t bound_quadratic_linear(const FiniteAlgebra &algebra);
/// n^3 m; 1 for a one-element algebra, 0 when there are no operations.
std::uint64_t bound_general(const FiniteAlgebra &algebra);
/// The idempotent bound N is only valid when N > 2 or n > 2.
bool idempotent_bound_applies(const FiniteAlgebra &algebra);

// Fixed-dimension term conditions

/// One row of a stacked term condition: the identity at `coordinate` for the
/// value pair (a, b). Diagonal rows (a == a) force idempotence and are only
/// present for non-idempotent algebras.
struct StackedRow {
    std::size_t coordinate;
    Element a;
    Element b;
};

/// All two-variable identities of a cube, edge or near-unanimity condition
/// stacked into a single membership problem: a term with the identities
/// exists iff `target()` lies in the subpower generated by the columns.
struct StackedInstance {
    enum class Kind { cube, edge, nu };

    Kind kind;
    std::size_t dimension;
    std::vector<StackedRow> rows;

    std::size_t power_arity() const noexcept { return rows.size(); }
    Tuple target() const;
    /// Column for an index set of coordinates (bit i = coordinate i+1).
    Tuple column(std::uint64_t index_set) const;
    /// Explicit column index sets; for cubes these are all nonempty subsets.
    std::vector<std::uint64_t> column_sets() const;
    GeneratorSource generators() const;
};

StackedInstance stacked_instance(StackedInstance::Kind kind, const FiniteAlgebra &algebra, std::size_t dimension);

enum class CubeRoute {
    automatic,  // stacked when its power is tiny, local otherwise
    stacked,    // one closure over the stacked instance
    local,      // one closure per pair (a, b) of d-tuples, up to symmetry
};

struct CheckOptions {
    Budget budget = default_budget();
    CubeRoute route = CubeRoute::automatic;
};

struct CubeCheckReport {
    bool result = false;
    CubeRoute route = CubeRoute::stacked;
    std::uint64_t closures = 0;         // membership queries run
    std::uint64_t largest_closure = 0;  // elements in the biggest one
};

/// Whether the algebra has a d-dimensional cube term. Throws BudgetExceeded
/// instead of guessing when a closure is truncated.
bool check_cube_dim(const FiniteAlgebra &algebra, std::size_t d, const CheckOptions &options = {});
CubeCheckReport check_cube_dim_report(const FiniteAlgebra &algebra, std::size_t d, const CheckOptions &options = {});

/// Whether the algebra has a d-dimensional edge term (d >= 2).
bool check_edge_dim(const FiniteAlgebra &algebra, std::size_t d, const Budget &budget = default_budget());

/// Whether the algebra has a k-ary near-unanimity term (k >= 3).
bool check_nu(const FiniteAlgebra &algebra, std::size_t k, const Budget &budget = default_budget());

// Decisions

enum class Verdict { has_cube_term, no_cube_term, undecided };

struct CubeDecision {
    Verdict verdict = Verdict::undecided;
    std::uint64_t dimension_bound = 0;
    std::optional<Blocker> blocker;
    std::optional<std::pair<Element, Element>> failing_pair;
    std::optional<std::uint64_t> witness_dimension;
    std::string note;
};

/// Idempotent algebras: a blocker settles "no", its absence "yes" with the
/// proven dimension bound. Throws NotIdempotent otherwise.
CubeDecision decide_cube_idempotent(const FiniteAlgebra &algebra);

struct GeneralOptions {
    std::optional<std::uint64_t> cap;  // largest dimension to try
    bool delegate_idempotent = true;
    Budget budget = default_budget();  // per closure
};

/// Any finite algebra. For each tried d in 1, 2, 4, ... up to the cap (at
/// most n^3 m) and every pair a != b, asks whether <A> a^d is generated by
/// the tuples <A> chi_I(a^d, b^d), I nonempty. All pairs passing proves a
/// cube term; a failing pair at d = n^3 m proves there is none; a failure
/// below that bound leaves the question open.
CubeDecision decide_cube_general(const FiniteAlgebra &algebra, const GeneralOptions &options = {});

/// Smallest d in [2, cap] with a d-dimensional cube term.
std::optional<std::size_t> minimal_cube_dimension(const FiniteAlgebra &algebra, std::size_t cap,
                                                  const CheckOptions &options = {});

enum class NuVerdict { has_nu, no_nu, undecided };

struct NuDecision {
    NuVerdict verdict = NuVerdict::undecided;
    std::optional<std::size_t> arity;
    std::optional<std::size_t> minimal_cube_dimension;
    CubeDecision cube;
    std::string note;
};

/// A near-unanimity term exists iff there is a cube term and check_nu holds
/// at max(3, minimal cube dimension).
NuDecision decide_nu(const FiniteAlgebra &algebra, std::size_t cap, const CheckOptions &options = {});

const char *to_string(Verdict v) noexcept;
const char *to_string(NuVerdict v) noexcept;
const char *to_string(CubeRoute r) noexcept;

}  // namespace cubeterm
