#include "cubeterm/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace cubeterm {

namespace {

OperationTable binary_table(std::string name, std::size_t n, const std::function<Element(Element, Element)> &f) {
    OperationTable op{std::move(name), 2, {}};
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) op.table.push_back(f(x, y));
    return op;
}

OperationTable constant_table(std::string name, std::size_t n, Element value) {
    return {std::move(name), 1, std::vector<Element>(n, value)};
}

OperationTable first_projection(std::string name, std::size_t n, std::size_t arity) {
    OperationTable op{std::move(name), arity, {}};
    const std::uint64_t rows = *checked_power(n, arity);
    const std::uint64_t lead = rows / n;
    for (std::uint64_t i = 0; i < rows; ++i) op.table.push_back(static_cast<Element>(i / lead));
    return op;
}

bool fill_latin(std::vector<Element> &cells, std::size_t n, std::size_t pos, std::vector<std::vector<bool>> &in_row,
                std::vector<std::vector<bool>> &in_col) {
    if (pos == n * n) return true;
    const std::size_t x = pos / n, y = pos % n;
    if (x == y) return fill_latin(cells, n, pos + 1, in_row, in_col);
    for (Element v = 0; v < n; ++v) {
        if (in_row[x][v] || in_col[y][v]) continue;
        in_row[x][v] = in_col[y][v] = true;
        cells[pos] = v;
        if (fill_latin(cells, n, pos + 1, in_row, in_col)) return true;
        in_row[x][v] = in_col[y][v] = false;
    }
    return false;
}

}  // namespace

FiniteAlgebra no_ops(std::size_t n) {
    if (n < 1 || n > max_universe) throw std::invalid_argument("universe size out of range");
    return {"no_ops" + std::to_string(n), n, {}};
}

std::vector<std::string> fixture_names() {
    return {"lattice2", "semilattice2", "nand2", "zero2", "constant3", "no_opsN"};
}

FiniteAlgebra fixture(std::string_view name) {
    if (name == "lattice2")
        return {"lattice2",
                2,
                {binary_table("meet", 2, [](Element x, Element y) { return std::min(x, y); }),
                 binary_table("join", 2, [](Element x, Element y) { return std::max(x, y); })}};
    if (name == "semilattice2")
        return {"semilattice2", 2, {binary_table("meet", 2, [](Element x, Element y) { return std::min(x, y); })}};
    if (name == "nand2")
        return {"nand2", 2, {binary_table("nand", 2, [](Element x, Element y) { return Element(!(x && y)); })}};
    if (name == "zero2") return {"zero2", 2, {constant_table("c0", 2, 0)}};
    if (name == "constant3") return {"constant3", 3, {constant_table("c2", 3, 2)}};
    if (name.substr(0, 6) == "no_ops" && name.size() > 6) {
        std::size_t n = 0;
        for (char ch : name.substr(6)) {
            if (ch < '0' || ch > '9' || n > max_universe) throw std::invalid_argument("unknown fixture");
            n = n * 10 + static_cast<std::size_t>(ch - '0');
        }
        return no_ops(n);
    }
    throw std::invalid_argument("unknown fixture: " + std::string(name));
}

FiniteAlgebra idempotent_quasigroup(std::size_t n) {
    if (n < 3) throw std::invalid_argument("no idempotent quasigroup of order < 3");
    const std::string name = "quasigroup" + std::to_string(n);
    if (n % 2 == 1) {
        const std::size_t h = (n + 1) / 2;
        return {name, n, {binary_table("mul", n, [&](Element x, Element y) {
                    return static_cast<Element>(h * (x + y) % n);
                })}};
    }
    if (n > 10) throw std::invalid_argument("even order above 10 not supported");
    std::vector<Element> cells(n * n, 0);
    std::vector<std::vector<bool>> in_row(n, std::vector<bool>(n)), in_col(n, std::vector<bool>(n));
    for (Element i = 0; i < n; ++i) {
        cells[i * n + i] = i;
        in_row[i][i] = in_col[i][i] = true;
    }
    if (!fill_latin(cells, n, 0, in_row, in_col)) throw std::logic_error("latin square search failed");
    return {name, n, {OperationTable{"mul", 2, cells}}};
}

// Tight examples

std::size_t TightExampleParams::r() const {
    const auto nonunary = static_cast<std::size_t>(std::count_if(arities.begin(), arities.end(),
                                                                 [](std::size_t m) { return m >= 2; }));
    return std::min(nonunary, n * (n - (n > 0 ? 1 : 0)) / 2);
}

std::uint64_t TightExampleParams::N() const {
    auto sorted = arities;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::uint64_t N = 1;
    for (std::size_t i = 0; i < r(); ++i) N += sorted[i] - 1;
    return N;
}

std::vector<std::vector<std::pair<Element, Element>>> TightExampleParams::partition() const {
    std::vector<std::vector<std::pair<Element, Element>>> classes(r());
    if (classes.empty()) return classes;
    std::size_t next = 0;
    for (Element a = 0; a < n; ++a)
        for (Element b = a + 1; b < n; ++b) classes[next++ % classes.size()].emplace_back(a, b);
    return classes;
}

FiniteAlgebra tight_example(const TightExampleParams &params) {
    const std::size_t n = params.n;
    if (n < 1 || n > max_universe) throw std::invalid_argument("universe size out of range");
    for (std::size_t m : params.arities)
        if (m < 1) throw std::invalid_argument("arities must be positive");
    const std::uint64_t N = params.N();
    if (!(n > 2 || N > 2)) throw std::invalid_argument("tight example needs n > 2 or N > 2");

    auto sorted = params.arities;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t r = params.r();
    FiniteAlgebra alg{"tight" + std::to_string(n), n, {}};

    if (N == 2) {
        alg.operations = idempotent_quasigroup(n).operations;
        alg.operations[0].name = "f1";
    } else {
        const auto classes = params.partition();
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t m = sorted[i];
            // value[a][b] = a when (a, b) is in the class, else unset.
            std::vector<std::vector<bool>> pattern(n, std::vector<bool>(n, false));
            for (auto [a, b] : classes[i]) pattern[a][b] = true;
            OperationTable op{"f" + std::to_string(i + 1), m, {}};
            const std::uint64_t rows = *checked_power(n, m);
            std::vector<Element> args(m, 0);
            for (std::uint64_t index = 0; index < rows; ++index) {
                Element hi = *std::max_element(args.begin(), args.end());
                Element lo = *std::min_element(args.begin(), args.end());
                const auto lo_count = static_cast<std::size_t>(std::count(args.begin(), args.end(), lo));
                const bool one_b = lo != hi && lo_count == m - 1;
                op.table.push_back(one_b && pattern[lo][hi] ? lo : hi);
                for (std::size_t q = m; q-- > 0;) {
                    if (++args[q] < n) break;
                    args[q] = 0;
                }
            }
            alg.operations.push_back(std::move(op));
        }
    }
    for (std::size_t i = (N == 2 ? 1 : r); i < sorted.size(); ++i)
        alg.operations.push_back(first_projection("p" + std::to_string(i + 1), n, sorted[i]));
    return alg;
}

// Relations and oracles

Relation elusive_relation(std::size_t k) {
    if (k < 2 || k > 20) throw std::invalid_argument("relation arity out of range");
    std::vector<Tuple> tuples{Tuple(k, 2)};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Tuple t(k);
        for (std::size_t i = 0; i < k; ++i) t[i] = (mask >> (k - 1 - i)) & 1U;
        if (t[0] == 1 && std::count(t.begin(), t.end(), 1U) == 1) continue;
        tuples.push_back(std::move(t));
    }
    return Relation(3, k, tuples);
}

Relation clone_part(const FiniteAlgebra &algebra, std::size_t k, const Budget &budget) {
    ensure_valid(algebra);
    const std::size_t n = algebra.size;
    if (k < 1) throw std::invalid_argument("clone arity must be positive");
    const auto rows = checked_power(n, k);
    if (!rows || *rows > 64 || !checked_power(n, static_cast<std::size_t>(*rows)))
        throw BudgetExceeded("clone part too large to enumerate");
    const std::size_t L = static_cast<std::size_t>(*rows);
    const auto started = std::chrono::steady_clock::now();

    auto code_of = [&](const Tuple &t) {
        std::uint64_t c = 0;
        for (Element v : t) c = c * n + v;
        return c;
    };
    std::vector<Tuple> members;
    std::unordered_set<std::uint64_t> seen;
    auto add = [&](Tuple t) {
        if (seen.insert(code_of(t)).second) members.push_back(std::move(t));
    };
    for (std::size_t j = 0; j < k; ++j) {
        Tuple proj(L);
        for (std::size_t row = 0; row < L; ++row) proj[row] = decode(row, n, k)[j];
        add(std::move(proj));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t snapshot = members.size();
        for (const auto &op : algebra.operations) {
            std::vector<std::size_t> pick(op.arity, 0);
            std::vector<Element> args(op.arity);
            while (true) {
                Tuple value(L);
                for (std::size_t row = 0; row < L; ++row) {
                    for (std::size_t q = 0; q < op.arity; ++q) args[q] = members[pick[q]][row];
                    value[row] = apply(op, args, n);
                }
                const std::size_t before = members.size();
                add(std::move(value));
                if (members.size() != before) {
                    changed = true;
                    if (members.size() > budget.max_elements) throw BudgetExceeded("clone part exceeds element budget");
                    if (budget.time_limit && std::chrono::steady_clock::now() - started > *budget.time_limit)
                        throw BudgetExceeded("clone part exceeds time budget");
                }
                std::size_t q = op.arity;
                while (q > 0 && ++pick[q - 1] == snapshot) pick[--q] = 0;
                if (q == 0) break;
            }
        }
    }
    return Relation(n, L, members);
}

bool scan_clone_for(const CloneCondition &condition, const Relation &clone, std::size_t universe, std::size_t k) {
    const std::size_t n = universe;
    auto row_code = [&](const std::vector<Element> &args) {
        std::size_t c = 0;
        for (Element v : args) c = c * n + v;
        return c;
    };
    // Each identity says t(args(x, y)) = x for all x, y.
    std::vector<std::vector<bool>> schemas;  // schemas[s][j]: variable j gets y
    if (condition.kind == CloneCondition::Kind::nu) {
        if (k < 3) throw std::invalid_argument("near-unanimity needs arity >= 3");
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<bool> schema(k, false);
            schema[s] = true;
            schemas.push_back(std::move(schema));
        }
    } else {
        const std::size_t d = condition.kind == CloneCondition::Kind::maltsev ? 2 : condition.dimension;
        if (d < 1 || d > 6 || k != (std::size_t{1} << d) - 1)
            throw std::invalid_argument("cube condition needs arity 2^d - 1");
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<bool> schema(k);
            for (std::size_t j = 1; j <= k; ++j) schema[j - 1] = (j >> i) & 1U;
            schemas.push_back(std::move(schema));
        }
    }
    if (clone.arity() != *checked_power(n, k)) throw std::invalid_argument("clone arity does not match n^k");

    bool found = false;
    std::vector<Element> args(k);
    clone.for_each([&](const Tuple &table) {
        if (found) return;
        for (const auto &schema : schemas)
            for (Element x = 0; x < n; ++x)
                for (Element y = 0; y < n; ++y) {
                    for (std::size_t j = 0; j < k; ++j) args[j] = schema[j] ? y : x;
                    if (table[row_code(args)] != x) return;
                }
        found = true;
    });
    return found;
}

std::optional<ChippedCubeSpec> exhaustive_chipped_cube_search(const FiniteAlgebra &algebra, std::size_t d,
                                                              std::size_t max_universe_size) {
    ensure_valid(algebra);
    ensure_idempotent(algebra);
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    const auto subuniverses = enumerate_subuniverses(algebra, max_universe_size);
    std::vector<std::pair<ElementSet, ElementSet>> pairs;
    for (const auto &D : subuniverses)
        for (const auto &C : subuniverses) {
            if (!(C < D)) break;
            if (C.is_subset_of(D)) pairs.emplace_back(C, D);
        }
    if (pairs.empty()) return std::nullopt;

    std::vector<std::size_t> pick(d, 0);
    while (true) {
        ChippedCubeSpec spec;
        for (std::size_t i : pick) spec.blocks.push_back({pairs[i].first, pairs[i].second, 1});
        if (is_compatible(algebra, chipped_cube(spec, algebra.size))) return spec;
        std::size_t q = d;
        while (q > 0 && pick[q - 1] + 1 == pairs.size()) --q;
        if (q == 0) break;
        ++pick[q - 1];
        for (std::size_t i = q; i < d; ++i) pick[i] = pick[q - 1];
    }
    return std::nullopt;
}

}  // namespace cubeterm
