#include "cubeterm/subpower.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cubeterm {

Budget default_budget() {
    Budget b;
    if (const char *env = std::getenv("CUBETERM_BUDGET_BYTES")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) b.max_bytes = v;
    }
    return b;
}

GeneratorSource GeneratorSource::explicit_list(std::size_t arity, std::vector<Tuple> tuples) {
    for (const auto &t : tuples)
        if (t.size() != arity) throw std::invalid_argument("generator arity mismatch");
    return GeneratorSource(arity, Explicit{std::move(tuples), 0});
}

GeneratorSource GeneratorSource::streamed(ChiFamily family) {
    std::size_t arity = family.arity();
    return GeneratorSource(arity, std::move(family));
}

bool GeneratorSource::next(Tuple &out) {
    if (auto *e = std::get_if<Explicit>(&source_)) {
        if (e->pos == e->tuples.size()) return false;
        out = e->tuples[e->pos++];
        return true;
    }
    return std::get<ChiFamily>(source_).next(out);
}

void GeneratorSource::reset() {
    if (auto *e = std::get_if<Explicit>(&source_))
        e->pos = 0;
    else
        std::get<ChiFamily>(source_).reset();
}

bool Symmetry::trivial() const noexcept {
    return std::all_of(classes.begin(), classes.end(), [](const auto &c) { return c.size() < 2; });
}

namespace {

constexpr std::uint64_t chunk_table_limit = std::uint64_t{1} << 20;
constexpr std::size_t generator_batch = 4096;

struct Truncated {
    std::string reason;
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Closure engine over A^K.
///
/// A tuple is stored as ceil(K / c) "chunk codes": chunk j holds the base-n
/// code of c consecutive coordinates, chunk 0 being the least significant
/// (last) ones, so sum_j chunk_j S^j with S = n^c is the big-endian tuple
/// code. Each operation is precomputed as a table acting on whole chunks,
/// which turns a row-wise application into one lookup per chunk.
class ClosureEngine {
  public:
    ClosureEngine(const FiniteAlgebra &algebra, std::size_t arity, const Budget &budget, const Symmetry &symmetry)
        : n_(algebra.size), arity_(arity), budget_(budget), symmetric_(!symmetry.trivial()) {
        if (arity_ == 0) throw std::invalid_argument("subpower arity must be positive");
        for (const auto &cls : symmetry.classes) {
            for (std::size_t c : cls)
                if (c >= arity_) throw std::invalid_argument("symmetry class coordinate out of range");
            if (cls.size() >= 2) classes_.push_back(cls);
        }
        choose_layout(algebra);
        build_tables(algebra);
        auto codes = checked_power(n_, arity_);
        dense_ = codes && *codes <= dense_code_limit && *codes / 8 <= budget_.max_bytes;
        if (dense_)
            bits_.assign((*codes + 63) / 64, 0);
        else
            slots_.assign(1024, 0);
        if (budget_.time_limit) deadline_ = std::chrono::steady_clock::now() + *budget_.time_limit;
        scratch_.resize(chunks_);
    }

    MembershipAnswer run(GeneratorSource &gens, const std::optional<Tuple> &target) {
        MembershipAnswer answer;
        if (target) {
            if (target->size() != arity_) throw std::invalid_argument("target arity mismatch");
            for (Element e : *target)
                if (e >= n_) throw std::invalid_argument("target entry outside the universe");
            target_chunks_ = to_chunks(*target);
        }
        try {
            bool more_gens = feed_generators(gens);
            std::size_t round = 0;
            std::size_t old_elems = 0, old_reps = 0;
            if (found_) answer.witness_depth = 0;
            while (!found_) {
                const std::size_t cur_elems = size(), cur_reps = rep_count();
                if (cur_reps == old_reps && !more_gens) break;
                ++round;
                for (const auto &op : ops_) {
                    if (expand(op, old_elems, cur_elems, old_reps, cur_reps)) break;
                }
                old_elems = cur_elems;
                old_reps = cur_reps;
                if (found_) {
                    answer.witness_depth = round;
                    break;
                }
                if (more_gens) {
                    more_gens = feed_generators(gens);
                    if (found_) answer.witness_depth = 0;  // the target is itself a generator
                }
            }
            answer.found = found_;
        } catch (const Truncated &t) {
            answer.truncated = true;
            answer.truncation_reason = t.reason;
        }
        answer.closure_size = size();
        return answer;
    }

    Relation to_relation() const {
        std::vector<Tuple> tuples;
        tuples.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) tuples.push_back(from_chunks(&store_[i * chunks_]));
        return Relation(n_, arity_, tuples);
    }

  private:
    struct ChunkOp {
        std::size_t arity;
        std::vector<std::uint32_t> table;
    };

    void choose_layout(const FiniteAlgebra &algebra) {
        const std::size_t m = std::max<std::size_t>(1, algebra.max_arity());
        width_ = 1;
        while (width_ < arity_) {
            auto s = checked_power(n_, width_ + 1);
            auto t = s ? checked_power(*s, m) : std::nullopt;
            if (!s || *s > (std::uint64_t{1} << 31) || !t || *t > chunk_table_limit) break;
            ++width_;
        }
        radix_ = static_cast<std::uint32_t>(*checked_power(n_, width_));
        chunks_ = (arity_ + width_ - 1) / width_;
        std::size_t top_width = arity_ - (chunks_ - 1) * width_;
        top_mod_ = static_cast<std::uint32_t>(*checked_power(n_, top_width));
    }

    void build_tables(const FiniteAlgebra &algebra) {
        for (const auto &op : algebra.operations) {
            ChunkOp chunk_op{op.arity, {}};
            if (width_ == 1) {
                chunk_op.table = op.table;
            } else {
                const std::uint64_t entries = *checked_power(radix_, op.arity);
                chunk_op.table.resize(entries);
                std::vector<std::uint32_t> digits(op.arity * width_);
                for (std::uint64_t idx = 0; idx < entries; ++idx) {
                    // Split idx into arity chunk codes and each chunk into width digits.
                    std::uint64_t rest = idx;
                    for (std::size_t arg = op.arity; arg-- > 0;) {
                        std::uint64_t code = rest % radix_;
                        rest /= radix_;
                        for (std::size_t d = 0; d < width_; ++d) {
                            digits[arg * width_ + d] = static_cast<std::uint32_t>(code % n_);
                            code /= n_;
                        }
                    }
                    std::uint64_t value = 0, place = 1;
                    for (std::size_t d = 0; d < width_; ++d) {
                        std::size_t index = 0;
                        for (std::size_t arg = 0; arg < op.arity; ++arg) index = index * n_ + digits[arg * width_ + d];
                        value += op.table[index] * place;
                        place *= n_;
                    }
                    chunk_op.table[idx] = static_cast<std::uint32_t>(value);
                }
            }
            ops_.push_back(std::move(chunk_op));
        }
    }

    std::vector<std::uint32_t> to_chunks(const Tuple &t) const {
        std::vector<std::uint32_t> out(chunks_, 0);
        for (std::size_t i = 0; i < arity_; ++i) {
            std::size_t from_end = arity_ - 1 - i;
            out[from_end / width_] += static_cast<std::uint32_t>(t[i] * pow_n(from_end % width_));
        }
        return out;
    }

    Tuple from_chunks(const std::uint32_t *c) const {
        Tuple t(arity_);
        for (std::size_t j = 0; j < chunks_; ++j) {
            std::uint32_t code = c[j];
            for (std::size_t d = 0; d < width_; ++d) {
                std::size_t from_end = j * width_ + d;
                if (from_end >= arity_) break;
                t[arity_ - 1 - from_end] = code % n_;
                code /= static_cast<std::uint32_t>(n_);
            }
        }
        return t;
    }

    std::uint64_t pow_n(std::size_t e) const {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= n_;
        return r;
    }

    std::size_t size() const noexcept { return store_.size() / chunks_; }
    std::size_t rep_count() const noexcept { return symmetric_ ? reps_.size() : size(); }
    std::size_t rep(std::size_t i) const noexcept { return symmetric_ ? reps_[i] : i; }

    std::uint64_t full_code(const std::uint32_t *c) const {
        std::uint64_t code = 0;
        for (std::size_t j = chunks_; j-- > 0;) code = code * radix_ + c[j];
        return code;
    }

    std::uint64_t hash(const std::uint32_t *c) const {
        std::uint64_t h = 0x51ed27;
        for (std::size_t j = 0; j < chunks_; ++j) h = mix(h ^ c[j]);
        return h;
    }

    bool contains(const std::uint32_t *c) const {
        if (dense_) {
            std::uint64_t code = full_code(c);
            return (bits_[code >> 6] >> (code & 63)) & 1U;
        }
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t s = hash(c) & mask;; s = (s + 1) & mask) {
            std::uint32_t slot = slots_[s];
            if (slot == 0) return false;
            if (std::equal(c, c + chunks_, &store_[(slot - 1) * chunks_])) return true;
        }
    }

    /// Appends c unless present; returns whether it was new.
    bool insert_raw(const std::uint32_t *c) {
        if (dense_) {
            std::uint64_t code = full_code(c);
            std::uint64_t bit = std::uint64_t{1} << (code & 63);
            if (bits_[code >> 6] & bit) return false;
            check_growth();
            bits_[code >> 6] |= bit;
            store_.insert(store_.end(), c, c + chunks_);
            return true;
        }
        std::size_t mask = slots_.size() - 1;
        std::size_t s = hash(c) & mask;
        for (;; s = (s + 1) & mask) {
            std::uint32_t slot = slots_[s];
            if (slot == 0) break;
            if (std::equal(c, c + chunks_, &store_[(slot - 1) * chunks_])) return false;
        }
        check_growth();
        store_.insert(store_.end(), c, c + chunks_);
        slots_[s] = static_cast<std::uint32_t>(size());
        if (size() * 2 > slots_.size()) rehash();
        return true;
    }

    void check_growth() {
        if (size() + 1 > budget_.max_elements) throw Truncated{"element cap reached"};
        if (size() + 1 >= UINT32_MAX) throw Truncated{"element cap reached"};
        std::uint64_t bytes = (size() + 1) * chunks_ * sizeof(std::uint32_t) + slots_.size() * sizeof(std::uint32_t) +
                              bits_.size() * sizeof(std::uint64_t) + reps_.size() * sizeof(std::uint32_t);
        if (!dense_ && (size() + 1) * 2 > slots_.size()) bytes += slots_.size() * sizeof(std::uint32_t);
        if (bytes > budget_.max_bytes) throw Truncated{"memory cap reached"};
    }

    void rehash() {
        std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
        const std::size_t mask = fresh.size() - 1;
        for (std::size_t i = 0; i < size(); ++i) {
            std::size_t s = hash(&store_[i * chunks_]) & mask;
            while (fresh[s] != 0) s = (s + 1) & mask;
            fresh[s] = static_cast<std::uint32_t>(i + 1);
        }
        slots_.swap(fresh);
    }

    /// Adds c together with its orbit; returns whether c was new.
    bool add(const std::uint32_t *c) {
        if (!symmetric_) {
            if (!insert_raw(c)) return false;
            if (!target_chunks_.empty() && std::equal(c, c + chunks_, target_chunks_.begin())) found_ = true;
            return true;
        }
        if (contains(c)) return false;
        const std::size_t first = size();
        Tuple t = from_chunks(c);
        add_orbit(t, 0);
        reps_.push_back(static_cast<std::uint32_t>(first));
        if (!target_chunks_.empty() && !found_ && contains(target_chunks_.data())) found_ = true;
        return true;
    }

    void add_orbit(Tuple &t, std::size_t cls) {
        if (cls == classes_.size()) {
            auto c = to_chunks(t);
            insert_raw(c.data());
            return;
        }
        const auto &coords = classes_[cls];
        std::vector<Element> values;
        values.reserve(coords.size());
        for (std::size_t c : coords) values.push_back(t[c]);
        std::sort(values.begin(), values.end());
        do {
            for (std::size_t i = 0; i < coords.size(); ++i) t[coords[i]] = values[i];
            add_orbit(t, cls + 1);
        } while (std::next_permutation(values.begin(), values.end()));
    }

    bool feed_generators(GeneratorSource &gens) {
        Tuple t;
        for (std::size_t fed = 0; fed < generator_batch; ++fed) {
            if (!gens.next(t)) return false;
            if (t.size() != arity_) throw std::invalid_argument("generator arity mismatch");
            for (Element e : t)
                if (e >= n_) throw std::invalid_argument("generator entry outside the universe");
            auto c = to_chunks(t);
            add(c.data());
        }
        return true;
    }

    void tick() {
        if (++ticks_ % (1U << 20) != 0 || !deadline_) return;
        if (std::chrono::steady_clock::now() > *deadline_) throw Truncated{"time limit reached"};
    }

    /// Applies `op` to every argument tuple touching the newest round; true
    /// once the target is found.
    bool expand(const ChunkOp &op, std::size_t old_elems, std::size_t cur_elems, std::size_t old_reps,
                std::size_t cur_reps) {
        const std::size_t m = op.arity;
        const std::uint32_t *table = op.table.data();
        const std::size_t top = chunks_ - 1;
        auto finish_top = [&] {
            if (top_mod_ != radix_) scratch_[top] %= top_mod_;
        };
        auto elem = [&](std::size_t i) { return &store_[i * chunks_]; };

        if (m == 1) {
            for (std::size_t r = old_reps; r < cur_reps; ++r) {
                const std::uint32_t *x = elem(rep(r));
                for (std::size_t j = 0; j < chunks_; ++j) scratch_[j] = table[x[j]];
                finish_top();
                tick();
                add(scratch_.data());
                if (found_) return true;
            }
            return false;
        }

        if (m == 2) {
            const std::uint64_t S = radix_;
            // First argument a new representative, second anything.
            for (std::size_t r = old_reps; r < cur_reps; ++r) {
                for (std::size_t y = 0; y < cur_elems; ++y) {
                    const std::uint32_t *xp = elem(rep(r));
                    const std::uint32_t *yp = elem(y);
                    for (std::size_t j = 0; j < chunks_; ++j) scratch_[j] = table[xp[j] * S + yp[j]];
                    finish_top();
                    tick();
                    add(scratch_.data());
                    if (found_) return true;
                }
            }
            // First argument old, second a new representative.
            for (std::size_t x = 0; x < old_elems; ++x) {
                for (std::size_t r = old_reps; r < cur_reps; ++r) {
                    const std::uint32_t *xp = elem(x);
                    const std::uint32_t *yp = elem(rep(r));
                    for (std::size_t j = 0; j < chunks_; ++j) scratch_[j] = table[xp[j] * S + yp[j]];
                    finish_top();
                    tick();
                    add(scratch_.data());
                    if (found_) return true;
                }
            }
            return false;
        }

        std::vector<std::size_t> idx(m);
        std::vector<const std::uint32_t *> args(m);
        for (std::size_t p = 0; p < m; ++p) {
            if (p > 0 && old_elems == 0) break;
            auto lo = [&](std::size_t q) { return q == p ? old_reps : std::size_t{0}; };
            auto hi = [&](std::size_t q) { return q < p ? old_elems : (q == p ? cur_reps : cur_elems); };
            for (std::size_t q = 0; q < m; ++q) idx[q] = lo(q);
            bool more = true;
            while (more) {
                for (std::size_t q = 0; q < m; ++q) args[q] = elem(q == p ? rep(idx[q]) : idx[q]);
                for (std::size_t j = 0; j < chunks_; ++j) {
                    std::uint64_t index = 0;
                    for (std::size_t q = 0; q < m; ++q) index = index * radix_ + args[q][j];
                    scratch_[j] = table[index];
                }
                finish_top();
                tick();
                add(scratch_.data());
                if (found_) return true;
                more = false;
                for (std::size_t q = m; q-- > 0;) {
                    if (++idx[q] < hi(q)) {
                        more = true;
                        break;
                    }
                    idx[q] = lo(q);
                }
            }
        }
        return false;
    }

    std::size_t n_;
    std::size_t arity_;
    Budget budget_;
    bool symmetric_;
    std::vector<std::vector<std::size_t>> classes_;

    std::size_t width_ = 1;
    std::uint32_t radix_ = 1;
    std::size_t chunks_ = 1;
    std::uint32_t top_mod_ = 1;
    std::vector<ChunkOp> ops_;

    bool dense_ = false;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> slots_;
    std::vector<std::uint32_t> store_;
    std::vector<std::uint32_t> reps_;

    std::vector<std::uint32_t> target_chunks_;
    bool found_ = false;
    std::vector<std::uint32_t> scratch_;
    std::uint64_t ticks_ = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

GenerateResult generate(const FiniteAlgebra &algebra, GeneratorSource generators, std::optional<Tuple> target,
                        const Budget &budget, const Symmetry &symmetry) {
    ensure_valid(algebra);
    ClosureEngine engine(algebra, generators.arity(), budget, symmetry);
    MembershipAnswer answer = engine.run(generators, target);
    return {engine.to_relation(), answer};
}

MembershipAnswer membership(const FiniteAlgebra &algebra, GeneratorSource generators, const Tuple &target,
                            const Budget &budget, const Symmetry &symmetry) {
    ensure_valid(algebra);
    ClosureEngine engine(algebra, generators.arity(), budget, symmetry);
    return engine.run(generators, target);
}

}  // namespace cubeterm
