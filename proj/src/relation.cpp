#include "cubeterm/relation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "cubeterm/subpower.hpp"

namespace cubeterm {

std::optional<std::uint64_t> encode(std::span<const Element> t, std::size_t n) {
    if (!checked_power(n, t.size())) return std::nullopt;
    std::uint64_t code = 0;
    for (Element e : t) {
        if (e >= n) throw std::invalid_argument("tuple entry " + std::to_string(e) + " outside the universe");
        code = code * n + e;
    }
    return code;
}

Tuple decode(std::uint64_t code, std::size_t n, std::size_t arity) {
    Tuple t(arity);
    for (std::size_t i = arity; i-- > 0;) {
        t[i] = static_cast<Element>(code % n);
        code /= n;
    }
    return t;
}

// Relation

Relation::Relation(std::size_t universe, std::size_t arity) : universe_(universe), arity_(arity) {
    if (universe < 1) throw std::invalid_argument("relation over an empty universe");
    if (arity < 1) throw std::invalid_argument("relation arity must be at least 1");
    auto codes = checked_power(universe, arity);
    if (codes && *codes <= dense_code_limit)
        rep_ = Dense{std::vector<std::uint64_t>((*codes + 63) / 64, 0)};
    else
        rep_ = Sparse{};
}

Relation::Relation(std::size_t universe, std::size_t arity, std::span<const Tuple> tuples)
    : Relation(universe, arity) {
    for (const auto &t : tuples) {
        if (t.size() != arity) throw std::invalid_argument("tuple arity does not match relation arity");
        for (Element e : t)
            if (e >= universe) throw std::invalid_argument("tuple entry outside the universe");
    }
    if (auto *d = std::get_if<Dense>(&rep_)) {
        for (const auto &t : tuples) {
            std::uint64_t code = *encode(t, universe);
            std::uint64_t bit = std::uint64_t{1} << (code % 64);
            if (!(d->words[code / 64] & bit)) {
                d->words[code / 64] |= bit;
                ++size_;
            }
        }
    } else {
        std::vector<const Tuple *> order;
        order.reserve(tuples.size());
        for (const auto &t : tuples) order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const Tuple *x, const Tuple *y) { return *x < *y; });
        order.erase(std::unique(order.begin(), order.end(), [](const Tuple *x, const Tuple *y) { return *x == *y; }),
                    order.end());
        auto &flat = std::get<Sparse>(rep_).flat;
        flat.reserve(order.size() * arity);
        for (const Tuple *t : order) flat.insert(flat.end(), t->begin(), t->end());
        size_ = order.size();
    }
}

Relation Relation::full(std::size_t universe, std::size_t arity) {
    Relation r(universe, arity);
    auto *d = std::get_if<Dense>(&r.rep_);
    if (!d) throw BudgetExceeded("full power too large to materialize");
    std::uint64_t codes = *checked_power(universe, arity);
    for (std::uint64_t c = 0; c < codes; ++c) d->words[c / 64] |= std::uint64_t{1} << (c % 64);
    r.size_ = codes;
    return r;
}

bool Relation::contains(std::span<const Element> t) const {
    if (t.size() != arity_) return false;
    for (Element e : t)
        if (e >= universe_) return false;
    if (const auto *d = std::get_if<Dense>(&rep_)) {
        std::uint64_t code = *encode(t, universe_);
        return (d->words[code / 64] >> (code % 64)) & 1U;
    }
    const auto &flat = std::get<Sparse>(rep_).flat;
    std::size_t lo = 0, hi = size_;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto row = flat.begin() + static_cast<std::ptrdiff_t>(mid * arity_);
        if (std::lexicographical_compare(row, row + static_cast<std::ptrdiff_t>(arity_), t.begin(), t.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == size_) return false;
    auto row = flat.begin() + static_cast<std::ptrdiff_t>(lo * arity_);
    return std::equal(row, row + static_cast<std::ptrdiff_t>(arity_), t.begin(), t.end());
}

std::vector<Tuple> Relation::tuples() const {
    std::vector<Tuple> out;
    out.reserve(size_);
    for_each([&](const Tuple &t) { out.push_back(t); });
    return out;
}

bool Relation::operator==(const Relation &other) const {
    if (universe_ != other.universe_ || arity_ != other.arity_ || size_ != other.size_) return false;
    if (rep_.index() == other.rep_.index()) {
        if (const auto *d = std::get_if<Dense>(&rep_)) return d->words == std::get<Dense>(other.rep_).words;
        return std::get<Sparse>(rep_).flat == std::get<Sparse>(other.rep_).flat;
    }
    bool same = true;
    for_each([&](const Tuple &t) { same = same && other.contains(t); });
    return same;
}

void Relation::decode_into(std::uint64_t code, Tuple &t) const {
    for (std::size_t i = arity_; i-- > 0;) {
        t[i] = static_cast<Element>(code % universe_);
        code /= universe_;
    }
}

// chi and chi families

Tuple chi(std::span<const Element> a, std::span<const Element> b, std::uint64_t subset) {
    if (a.size() != b.size()) throw std::invalid_argument("chi: tuples of different arity");
    if (a.size() < 64 && (subset >> a.size()) != 0) throw std::invalid_argument("chi: index set outside [k]");
    Tuple out(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size() && i < 64; ++i)
        if ((subset >> i) & 1U) out[i] = b[i];
    return out;
}

ChiFamily::ChiFamily(Tuple a, Tuple b, Tuple prefix)
    : ChiFamily(a, b, {}, a.size(), std::move(prefix)) {}

ChiFamily::ChiFamily(Tuple a, Tuple b, std::vector<std::size_t> block_of, std::size_t blocks, Tuple prefix)
    : a_(std::move(a)), b_(std::move(b)), prefix_(std::move(prefix)), block_of_(std::move(block_of)),
      blocks_(blocks) {
    if (a_.size() != b_.size()) throw std::invalid_argument("chi family: tuples of different arity");
    if (block_of_.empty()) {
        block_of_.resize(a_.size());
        for (std::size_t i = 0; i < a_.size(); ++i) block_of_[i] = i;
    }
    if (block_of_.size() != a_.size()) throw std::invalid_argument("chi family: block map has wrong length");
    if (blocks_ > 63) throw BudgetExceeded("chi family over more than 63 blocks");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (block_of_[i] >= blocks_) throw std::invalid_argument("chi family: block index out of range");
        if (a_[i] != b_[i]) active_mask_ |= std::uint64_t{1} << block_of_[i];
    }
    std::uint64_t all = blocks_ == 0 ? 0 : (std::uint64_t{1} << blocks_) - 1;
    std::uint64_t inactive = all & ~active_mask_;
    inactive_low_ = inactive & (~inactive + 1);
}

std::uint64_t ChiFamily::distinct_count() const noexcept {
    return ((std::uint64_t{1} << std::popcount(active_mask_)) - 1) + (inactive_low_ != 0 ? 1 : 0);
}

void ChiFamily::reset() noexcept {
    cursor_ = 0;
    started_ = false;
    emitted_a_ = false;
    done_ = false;
}

void ChiFamily::emit(std::uint64_t block_subset, Tuple &out) const {
    out.resize(arity());
    std::copy(prefix_.begin(), prefix_.end(), out.begin());
    for (std::size_t i = 0; i < a_.size(); ++i)
        out[prefix_.size() + i] = ((block_subset >> block_of_[i]) & 1U) ? b_[i] : a_[i];
}

bool ChiFamily::next(Tuple &out) {
    if (done_) return false;
    // Ascending enumeration of nonempty submasks of active_mask_.
    std::uint64_t next_subset = 0;
    if (active_mask_ != 0) {
        next_subset = ((cursor_ | ~active_mask_) + 1) & active_mask_;
        if (started_ && cursor_ == active_mask_) next_subset = 0;
    }
    if (inactive_low_ != 0 && !emitted_a_ && (next_subset == 0 || next_subset > inactive_low_)) {
        emitted_a_ = true;
        emit(0, out);
        return true;
    }
    if (next_subset == 0) {
        done_ = true;
        return false;
    }
    started_ = true;
    cursor_ = next_subset;
    emit(next_subset, out);
    return true;
}

// chipped cubes and relation checks

std::size_t ChippedCubeSpec::arity() const noexcept {
    std::size_t k = 0;
    for (const auto &b : blocks) k += b.multiplicity;
    return k;
}

bool is_compatible(const FiniteAlgebra &algebra, const Relation &relation, CompatibilityOptions options) {
    ensure_valid(algebra);
    if (relation.universe() != algebra.size) throw std::invalid_argument("relation over a different universe");
    if (relation.size() == 0) return true;

    const std::vector<Tuple> members = relation.tuples();
    const std::size_t k = relation.arity();
    const std::size_t n = algebra.size;

    std::uint64_t scan_cost = 0;
    bool direct = true;
    for (const auto &op : algebra.operations) {
        auto c = checked_power(members.size(), op.arity);
        if (!c || *c > options.direct_scan_limit || scan_cost + *c > options.direct_scan_limit) {
            direct = false;
            break;
        }
        scan_cost += *c;
    }

    if (!direct) {
        // A closure capped at |R| elements stops the moment anything new appears.
        Budget budget;
        budget.max_elements = members.size();
        auto answer = generate(algebra, GeneratorSource::explicit_list(k, members), std::nullopt, budget);
        return !answer.answer.truncated && answer.answer.closure_size == members.size();
    }

    Tuple image(k);
    std::vector<std::size_t> pick;
    for (const auto &op : algebra.operations) {
        const std::size_t m = op.arity;
        pick.assign(m, 0);
        while (true) {
            for (std::size_t row = 0; row < k; ++row) {
                std::size_t index = 0;
                for (std::size_t col = 0; col < m; ++col) index = index * n + members[pick[col]][row];
                image[row] = op.table[index];
            }
            if (!relation.contains(image)) return false;
            std::size_t q = m;
            while (q > 0 && ++pick[q - 1] == members.size()) pick[--q] = 0;
            if (q == 0) break;
        }
    }
    return true;
}

bool is_elusive_witness(const Relation &relation, std::span<const Element> a, std::span<const Element> b,
                        std::size_t max_arity) {
    const std::size_t k = relation.arity();
    if (a.size() != k || b.size() != k) throw std::invalid_argument("elusive witness: arity mismatch");
    if (k > max_arity) throw BudgetExceeded("elusive witness check over 2^" + std::to_string(k) + " subsets");
    if (relation.contains(a)) return false;
    ChiFamily family(Tuple(a.begin(), a.end()), Tuple(b.begin(), b.end()));
    Tuple t;
    while (family.next(t))
        if (!relation.contains(t)) return false;
    return true;
}

Relation chipped_cube(const ChippedCubeSpec &spec, std::size_t universe, std::uint64_t max_tuples) {
    std::vector<std::vector<Element>> domain;  // D_i per coordinate
    std::vector<ElementSet> chip;               // C_i per coordinate
    std::uint64_t product = 1;
    for (const auto &block : spec.blocks) {
        if (block.multiplicity < 1) throw std::invalid_argument("chipped cube block with multiplicity 0");
        if (block.C.empty() || !block.C.is_subset_of(block.D) || block.C == block.D)
            throw std::invalid_argument("chipped cube block needs nonempty C strictly inside D");
        for (Element e : block.D.members())
            if (e >= universe) throw std::invalid_argument("chipped cube block outside the universe");
        for (std::size_t j = 0; j < block.multiplicity; ++j) {
            domain.push_back(block.D.members());
            chip.push_back(block.C);
            product *= domain.back().size();
            if (product > max_tuples) throw BudgetExceeded("chipped cube too large to materialize");
        }
    }
    const std::size_t k = domain.size();
    if (k == 0) throw std::invalid_argument("chipped cube without blocks");

    std::vector<Tuple> tuples;
    std::vector<std::size_t> pos(k, 0);
    Tuple t(k);
    while (true) {
        bool hits_chip = false;
        for (std::size_t i = 0; i < k; ++i) {
            t[i] = domain[i][pos[i]];
            hits_chip = hits_chip || chip[i].contains(t[i]);
        }
        if (hits_chip) tuples.push_back(t);
        std::size_t q = k;
        while (q > 0 && ++pos[q - 1] == domain[q - 1].size()) pos[--q] = 0;
        if (q == 0) break;
    }
    return Relation(universe, k, tuples);
}

}  // namespace cubeterm
