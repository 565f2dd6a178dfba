#include "cubeterm/decide.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace cubeterm {

namespace {

constexpr std::uint64_t stacked_code_limit = 4096;

std::uint64_t pairs_count(std::size_t n) { return static_cast<std::uint64_t>(n) * (n - 1) / 2; }

Tuple enumeration_prefix(std::size_t n) {
    Tuple t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Element>(i);
    return t;
}

void require_answer(const MembershipAnswer &answer, const char *what) {
    if (answer.truncated)
        throw BudgetExceeded(std::string(what) + ": closure truncated (" + answer.truncation_reason + ")");
}

std::vector<std::pair<Element, Element>> off_diagonal_pairs(std::size_t n) {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (a != b) out.emplace_back(a, b);
    return out;
}

bool trivial_no_ops(const FiniteAlgebra &algebra) { return algebra.operations.empty() && algebra.size >= 2; }

/// One representative per orbit of prefix.chi_I(a, b), I nonempty, under
/// permutations inside each class of consecutive suffix coordinates on which
/// (a_i, b_i) is constant: b on the first j_c coordinates of class c.
std::vector<Tuple> orbit_generators(const Tuple &a, const Tuple &b, const Tuple &prefix,
                                    const std::vector<std::size_t> &class_sizes) {
    std::vector<Tuple> out;
    std::vector<std::size_t> count(class_sizes.size(), 0);
    while (true) {
        std::size_t q = class_sizes.size();
        while (q > 0 && count[q - 1] == class_sizes[q - 1]) count[--q] = 0;
        if (q == 0) break;
        ++count[q - 1];
        Tuple t = prefix;
        std::size_t offset = 0;
        for (std::size_t c = 0; c < class_sizes.size(); ++c) {
            for (std::size_t i = 0; i < class_sizes[c]; ++i)
                t.push_back(i < count[c] ? b[offset + i] : a[offset + i]);
            offset += class_sizes[c];
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

// Bounds

std::uint64_t bound_idempotent_N(const FiniteAlgebra &algebra) {
    std::vector<std::size_t> arities;
    for (const auto &op : algebra.operations) arities.push_back(op.arity);
    std::sort(arities.begin(), arities.end(), std::greater<>());
    const std::uint64_t r = std::min<std::uint64_t>(arities.size(), pairs_count(algebra.size));
    std::uint64_t N = 1;
    for (std::uint64_t i = 0; i < r; ++i) N += arities[i] - 1;
    return N;
}

std::uint64_t bound_quadratic_linear(const FiniteAlgebra &algebra) {
    const std::uint64_t m = std::max<std::size_t>(1, algebra.max_arity());
    return 1 + (m - 1) * pairs_count(algebra.size);
}

std::uint64_t bound_general(const FiniteAlgebra &algebra) {
    const std::uint64_t n = algebra.size;
    if (n == 1) return 1;
    return n * n * n * algebra.max_arity();
}

bool idempotent_bound_applies(const FiniteAlgebra &algebra) {
    return bound_idempotent_N(algebra) > 2 || algebra.size > 2;
}

// Stacked instances

Tuple StackedInstance::target() const {
    Tuple t(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) t[r] = rows[r].a;
    return t;
}

Tuple StackedInstance::column(std::uint64_t index_set) const {
    Tuple t(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        t[r] = ((index_set >> rows[r].coordinate) & 1U) ? rows[r].b : rows[r].a;
    return t;
}

std::vector<std::uint64_t> StackedInstance::column_sets() const {
    std::vector<std::uint64_t> sets;
    switch (kind) {
    case Kind::cube:
        for (std::uint64_t s = 1; s < (std::uint64_t{1} << dimension); ++s) sets.push_back(s);
        break;
    case Kind::edge:
        sets.push_back(0b11);
        for (std::size_t i = 0; i < dimension; ++i) sets.push_back(std::uint64_t{1} << i);
        break;
    case Kind::nu:
        for (std::size_t i = 0; i < dimension; ++i) sets.push_back(std::uint64_t{1} << i);
        break;
    }
    return sets;
}

GeneratorSource StackedInstance::generators() const {
    if (kind == Kind::cube) {
        Tuple a = target(), b(rows.size());
        std::vector<std::size_t> block_of(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            b[r] = rows[r].b;
            block_of[r] = rows[r].coordinate;
        }
        return GeneratorSource::streamed(ChiFamily(std::move(a), std::move(b), std::move(block_of), dimension));
    }
    std::vector<Tuple> cols;
    for (std::uint64_t s : column_sets()) cols.push_back(column(s));
    return GeneratorSource::explicit_list(rows.size(), std::move(cols));
}

StackedInstance stacked_instance(StackedInstance::Kind kind, const FiniteAlgebra &algebra, std::size_t dimension) {
    ensure_valid(algebra);
    if (dimension < 1 || dimension > 62) throw std::invalid_argument("term dimension out of range");
    StackedInstance inst{kind, dimension, {}};
    const std::size_t n = algebra.size;
    if (!is_idempotent(algebra))
        for (Element a = 0; a < n; ++a) inst.rows.push_back({0, a, a});
    for (std::size_t i = 0; i < dimension; ++i)
        for (auto [a, b] : off_diagonal_pairs(n)) inst.rows.push_back({i, a, b});
    return inst;
}

// Fixed-dimension checks

namespace {

CubeCheckReport check_cube_stacked(const FiniteAlgebra &algebra, std::size_t d, const Budget &budget) {
    auto inst = stacked_instance(StackedInstance::Kind::cube, algebra, d);
    auto answer = membership(algebra, inst.generators(), inst.target(), budget);
    require_answer(answer, "cube term check");
    return {answer.found, CubeRoute::stacked, 1, answer.closure_size};
}

/// Per-pair route: the algebra has a d-cube term iff for all a, b in A^d the
/// tuple <A>a is generated by the <A>chi_I(a, b), I nonempty (the prefix is
/// dropped for idempotent algebras). Coordinates with a_i = b_i make a itself
/// a generator, and permuting coordinates permutes the generators, so only
/// multisets of off-diagonal pairs need checking.
CubeCheckReport check_cube_local(const FiniteAlgebra &algebra, std::size_t d, const Budget &budget) {
    const std::size_t n = algebra.size;
    const auto pairs = off_diagonal_pairs(n);
    const Tuple prefix = is_idempotent(algebra) ? Tuple{} : enumeration_prefix(n);
    CubeCheckReport report{true, CubeRoute::local, 0, 0};

    std::vector<std::size_t> pick(d, 0);  // nondecreasing indices into pairs
    while (true) {
        Tuple a(d), b(d), target = prefix;
        Symmetry symmetry;
        std::vector<std::size_t> class_sizes;
        for (std::size_t i = 0; i < d; ++i) {
            a[i] = pairs[pick[i]].first;
            b[i] = pairs[pick[i]].second;
            if (i == 0 || pick[i] != pick[i - 1]) {
                symmetry.classes.emplace_back();
                class_sizes.push_back(0);
            }
            symmetry.classes.back().push_back(prefix.size() + i);
            ++class_sizes.back();
        }
        target.insert(target.end(), a.begin(), a.end());
        auto gens = GeneratorSource::explicit_list(target.size(), orbit_generators(a, b, prefix, class_sizes));
        auto answer = membership(algebra, std::move(gens), target, budget, symmetry);
        require_answer(answer, "cube term check");
        ++report.closures;
        report.largest_closure = std::max(report.largest_closure, answer.closure_size);
        if (!answer.found) {
            report.result = false;
            return report;
        }
        // Next nondecreasing sequence.
        std::size_t q = d;
        while (q > 0 && pick[q - 1] + 1 == pairs.size()) --q;
        if (q == 0) break;
        ++pick[q - 1];
        for (std::size_t i = q; i < d; ++i) pick[i] = pick[q - 1];
    }
    return report;
}

}  // namespace

CubeCheckReport check_cube_dim_report(const FiniteAlgebra &algebra, std::size_t d, const CheckOptions &options) {
    ensure_valid(algebra);
    if (d < 1) throw std::invalid_argument("cube dimension must be at least 1");
    if (d > 62) throw BudgetExceeded("cube dimension beyond 62");
    if (algebra.size == 1) return {true, options.route, 0, 0};

    CubeRoute route = options.route;
    if (route == CubeRoute::automatic) {
        const std::size_t k = stacked_instance(StackedInstance::Kind::cube, algebra, d).power_arity();
        auto codes = checked_power(algebra.size, k);
        route = codes && *codes <= stacked_code_limit ? CubeRoute::stacked : CubeRoute::local;
    }
    return route == CubeRoute::stacked ? check_cube_stacked(algebra, d, options.budget)
                                       : check_cube_local(algebra, d, options.budget);
}

bool check_cube_dim(const FiniteAlgebra &algebra, std::size_t d, const CheckOptions &options) {
    return check_cube_dim_report(algebra, d, options).result;
}

bool check_edge_dim(const FiniteAlgebra &algebra, std::size_t d, const Budget &budget) {
    ensure_valid(algebra);
    if (d < 2) throw std::invalid_argument("edge dimension must be at least 2");
    if (algebra.size == 1) return true;
    auto inst = stacked_instance(StackedInstance::Kind::edge, algebra, d);
    auto answer = membership(algebra, inst.generators(), inst.target(), budget);
    require_answer(answer, "edge term check");
    return answer.found;
}

bool check_nu(const FiniteAlgebra &algebra, std::size_t k, const Budget &budget) {
    ensure_valid(algebra);
    if (k < 3) throw std::invalid_argument("near-unanimity arity must be at least 3");
    if (algebra.size == 1) return true;
    auto inst = stacked_instance(StackedInstance::Kind::nu, algebra, k);
    auto answer = membership(algebra, inst.generators(), inst.target(), budget);
    require_answer(answer, "near-unanimity check");
    return answer.found;
}

// Decisions

CubeDecision decide_cube_idempotent(const FiniteAlgebra &algebra) {
    ensure_valid(algebra);
    ensure_idempotent(algebra);
    const std::size_t n = algebra.size;
    if (n == 1) return {Verdict::has_cube_term, 1, std::nullopt, std::nullopt, 1, "one-element algebra"};

    const std::uint64_t bound = idempotent_bound_applies(algebra)
                                    ? std::min(bound_idempotent_N(algebra), bound_quadratic_linear(algebra))
                                    : bound_general(algebra);
    if (trivial_no_ops(algebra))
        return {Verdict::no_cube_term, bound, Blocker{ElementSet(n, {0}), ElementSet::full(n)}, std::nullopt,
                std::nullopt, "no basic operations"};
    if (auto blocker = find_blocker(algebra))
        return {Verdict::no_cube_term, bound, std::move(blocker), std::nullopt, std::nullopt, {}};
    return {Verdict::has_cube_term, bound, std::nullopt, std::nullopt, std::nullopt, {}};
}

CubeDecision decide_cube_general(const FiniteAlgebra &algebra, const GeneralOptions &options) {
    ensure_valid(algebra);
    const std::size_t n = algebra.size;
    if (n == 1) return {Verdict::has_cube_term, 1, std::nullopt, std::nullopt, 1, "one-element algebra"};
    if (trivial_no_ops(algebra))
        return {Verdict::no_cube_term, 0, Blocker{ElementSet(n, {0}), ElementSet::full(n)}, std::nullopt,
                std::nullopt, "no basic operations"};
    if (options.delegate_idempotent && is_idempotent(algebra)) return decide_cube_idempotent(algebra);

    const std::uint64_t bound = bound_general(algebra);
    const std::uint64_t limit = std::min(bound, options.cap.value_or(bound));
    if (limit < 1) throw std::invalid_argument("dimension cap must be at least 1");
    const Tuple prefix = enumeration_prefix(n);

    std::uint64_t d = 1;
    while (true) {
        if (d > 62) {
            return {Verdict::undecided, d, std::nullopt, std::nullopt, std::nullopt,
                    "dimension " + std::to_string(d) + " beyond the supported range"};
        }
        std::optional<std::pair<Element, Element>> failing;
        Symmetry symmetry;
        symmetry.classes.emplace_back();
        for (std::size_t i = 0; i < d; ++i) symmetry.classes.back().push_back(n + i);
        for (auto [a, b] : off_diagonal_pairs(n)) {
            Tuple as(d, a), bs(d, b), target = prefix;
            target.insert(target.end(), as.begin(), as.end());
            auto gens = GeneratorSource::explicit_list(target.size(), orbit_generators(as, bs, prefix, {d}));
            auto answer = membership(algebra, std::move(gens), target, options.budget, symmetry);
            if (answer.truncated) {
                return {Verdict::undecided, d, std::nullopt, std::nullopt, std::nullopt,
                        "closure truncated at dimension " + std::to_string(d) + " (" + answer.truncation_reason +
                            ")"};
            }
            if (!answer.found) {
                failing = std::make_pair(a, b);
                break;
            }
        }
        if (!failing) return {Verdict::has_cube_term, bound, std::nullopt, std::nullopt, std::nullopt,
                              "all pairs generated at depth " + std::to_string(d)};
        if (d == bound)
            return {Verdict::no_cube_term, bound, std::nullopt, failing, std::nullopt, {}};
        if (d == limit)
            return {Verdict::undecided, d, std::nullopt, failing, std::nullopt,
                    "no cube term of dimension <= " + std::to_string(d) + "; proven bound is " +
                        std::to_string(bound)};
        d = std::min(d * 2, limit);
    }
}

std::optional<std::size_t> minimal_cube_dimension(const FiniteAlgebra &algebra, std::size_t cap,
                                                  const CheckOptions &options) {
    if (cap < 2) throw std::invalid_argument("cap must be at least 2");
    for (std::size_t d = 2; d <= cap; ++d)
        if (check_cube_dim(algebra, d, options)) return d;
    return std::nullopt;
}

NuDecision decide_nu(const FiniteAlgebra &algebra, std::size_t cap, const CheckOptions &options) {
    ensure_valid(algebra);
    NuDecision out;
    if (is_idempotent(algebra)) {
        out.cube = decide_cube_idempotent(algebra);
    } else {
        GeneralOptions general;
        general.cap = cap;
        general.budget = options.budget;
        out.cube = decide_cube_general(algebra, general);
    }
    if (out.cube.verdict == Verdict::no_cube_term) {
        out.verdict = NuVerdict::no_nu;
        return out;
    }
    if (out.cube.verdict == Verdict::undecided) {
        out.note = "cube term existence undecided: " + out.cube.note;
        return out;
    }
    try {
        out.minimal_cube_dimension = minimal_cube_dimension(algebra, std::max<std::size_t>(cap, 2), options);
        if (!out.minimal_cube_dimension) {
            out.note = "no cube term of dimension <= " + std::to_string(cap);
            return out;
        }
        const std::size_t k = std::max<std::size_t>(3, *out.minimal_cube_dimension);
        if (check_nu(algebra, k, options.budget)) {
            out.verdict = NuVerdict::has_nu;
            out.arity = k;
        } else {
            out.verdict = NuVerdict::no_nu;
        }
    } catch (const BudgetExceeded &e) {
        out.verdict = NuVerdict::undecided;
        out.note = e.what();
    }
    return out;
}

const char *to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::has_cube_term: return "has_cube_term";
    case Verdict::no_cube_term: return "no_cube_term";
    case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

const char *to_string(NuVerdict v) noexcept {
    switch (v) {
    case NuVerdict::has_nu: return "has_nu";
    case NuVerdict::no_nu: return "no_nu";
    case NuVerdict::undecided: return "undecided";
    }
    return "undecided";
}

const char *to_string(CubeRoute r) noexcept {
    switch (r) {
    case CubeRoute::automatic: return "automatic";
    case CubeRoute::stacked: return "stacked";
    case CubeRoute::local: return "local";
    }
    return "automatic";
}

}  // namespace cubeterm
