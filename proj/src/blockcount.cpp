#include "seqent/blockcount.hpp"

#include "seqent/seqops.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace seqent {

namespace {

using u128 = unsigned __int128;

struct U128Hash {
    size_t operator()(u128 v) const {
        uint64_t x = static_cast<uint64_t>(v) ^ static_cast<uint64_t>(v >> 64) * 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }
};

unsigned symbol_bits(uint32_t q) {
    return q <= 2 ? 1 : 32 - std::countl_zero(q - 1);
}

// One row of the census via a direct-address occurrence table; used when
// the packed window fits in a small index space.
BlockCensus::Row census_row_table(const std::vector<uint32_t>& s, uint32_t j,
                                  unsigned bw, uint32_t tau) {
    const size_t n = s.size();
    const size_t windows = n - j + 1;
    const u128 mask = (u128(1) << (size_t(bw) * j)) - 1;
    std::vector<uint32_t> counts(size_t(1) << (size_t(bw) * j), 0);
    std::vector<uint32_t> reg_counts(counts.size(), 0);

    u128 key = 0;
    for (uint32_t i = 0; i < j; ++i) key = (key << bw) | s[i];
    for (size_t i = 0;; ++i) {
        ++counts[size_t(key)];
        if (i % j == 0) ++reg_counts[size_t(key)];
        if (i + 1 >= windows) break;
        key = ((key << bw) | s[i + j]) & mask;
    }

    BlockCensus::Row row;
    key = 0;
    for (uint32_t i = 0; i < j; ++i) key = (key << bw) | s[i];
    for (size_t i = 0;; ++i) {
        const size_t k = size_t(key);
        if (counts[k] > 0) {
            ++row.count_all;
            if (counts[k] >= tau) ++row.count_effective;
            if (reg_counts[k] > 0) ++row.count_regular;
            if (reg_counts[k] >= tau) ++row.count_effective_regular;
            counts[k] = 0;
            reg_counts[k] = 0;
        }
        if (i + 1 >= windows) break;
        key = ((key << bw) | s[i + j]) & mask;
    }
    return row;
}

BlockCensus::Row census_row_hash(const std::vector<uint32_t>& s, uint32_t j,
                                 unsigned bw, uint32_t tau) {
    const size_t n = s.size();
    const size_t windows = n - j + 1;
    const u128 mask = (size_t(bw) * j >= 128) ? ~u128(0) : (u128(1) << (size_t(bw) * j)) - 1;
    std::unordered_map<u128, std::pair<uint32_t, uint32_t>, U128Hash> m;
    m.reserve(windows);

    u128 key = 0;
    for (uint32_t i = 0; i < j; ++i) key = (key << bw) | s[i];
    for (size_t i = 0;; ++i) {
        auto& e = m[key];
        ++e.first;
        if (i % j == 0) ++e.second;
        if (i + 1 >= windows) break;
        key = ((key << bw) | s[i + j]) & mask;
    }

    BlockCensus::Row row;
    for (const auto& [k, e] : m) {
        (void)k;
        ++row.count_all;
        if (e.first >= tau) ++row.count_effective;
        if (e.second > 0) ++row.count_regular;
        if (e.second >= tau) ++row.count_effective_regular;
    }
    return row;
}

// Fallback for windows too wide to pack: sort the window start positions
// lexicographically and walk run-length groups.
BlockCensus::Row census_row_sorted(const std::vector<uint32_t>& s, uint32_t j, uint32_t tau) {
    const size_t windows = s.size() - j + 1;
    std::vector<uint32_t> idx(windows);
    for (size_t i = 0; i < windows; ++i) idx[i] = static_cast<uint32_t>(i);
    auto cmp = [&](uint32_t a, uint32_t b) {
        return std::lexicographical_compare(s.begin() + a, s.begin() + a + j,
                                            s.begin() + b, s.begin() + b + j);
    };
    auto eq = [&](uint32_t a, uint32_t b) {
        return std::equal(s.begin() + a, s.begin() + a + j, s.begin() + b);
    };
    std::sort(idx.begin(), idx.end(), cmp);

    BlockCensus::Row row;
    size_t i = 0;
    while (i < windows) {
        size_t k = i;
        uint32_t occ = 0, reg = 0;
        while (k < windows && eq(idx[i], idx[k])) {
            ++occ;
            if (idx[k] % j == 0) ++reg;
            ++k;
        }
        ++row.count_all;
        if (occ >= tau) ++row.count_effective;
        if (reg > 0) ++row.count_regular;
        if (reg >= tau) ++row.count_effective_regular;
        i = k;
    }
    return row;
}

// Suffix automaton with transitions in per-state sorted arrays.
class SuffixAutomaton {
public:
    explicit SuffixAutomaton(size_t reserve_hint) {
        len_.reserve(2 * reserve_hint + 2);
        link_.reserve(2 * reserve_hint + 2);
        next_.reserve(2 * reserve_hint + 2);
        last_ = new_state(0, -1);
    }

    void extend(uint32_t c) {
        int cur = new_state(len_[last_] + 1, -1);
        int p = last_;
        while (p >= 0 && !has(p, c)) {
            set(p, c, cur);
            p = link_[p];
        }
        if (p < 0) {
            link_[cur] = 0;
        } else {
            int q = get(p, c);
            if (len_[p] + 1 == len_[q]) {
                link_[cur] = q;
            } else {
                int clone = new_state(len_[p] + 1, link_[q]);
                next_[clone] = next_[q];
                while (p >= 0 && has(p, c) && get(p, c) == q) {
                    set(p, c, clone);
                    p = link_[p];
                }
                link_[q] = clone;
                link_[cur] = clone;
            }
        }
        last_ = cur;
    }

    // distinct substrings of each length 1..j_max
    std::vector<uint64_t> distinct_by_length(uint32_t j_max, size_t n) const {
        std::vector<int64_t> diff(n + 2, 0);
        for (size_t v = 1; v < len_.size(); ++v) {
            int64_t lo = len_[link_[v]] + 1;
            int64_t hi = len_[v];
            diff[size_t(lo)] += 1;
            diff[size_t(hi) + 1] -= 1;
        }
        std::vector<uint64_t> out(j_max);
        int64_t acc = 0;
        for (uint32_t l = 1; l <= j_max; ++l) {
            acc += diff[l];
            out[l - 1] = static_cast<uint64_t>(acc);
        }
        return out;
    }

private:
    using Arc = std::pair<uint32_t, int32_t>;
    std::vector<int32_t> len_;
    std::vector<int32_t> link_;
    std::vector<std::vector<Arc>> next_;
    int last_ = 0;

    int new_state(int32_t l, int32_t lk) {
        len_.push_back(l);
        link_.push_back(lk);
        next_.emplace_back();
        return static_cast<int>(len_.size()) - 1;
    }
    std::vector<Arc>::iterator find(int v, uint32_t c) {
        auto& a = next_[v];
        return std::lower_bound(a.begin(), a.end(), c,
                                [](const Arc& x, uint32_t y) { return x.first < y; });
    }
    bool has(int v, uint32_t c) {
        auto it = find(v, c);
        return it != next_[v].end() && it->first == c;
    }
    int get(int v, uint32_t c) { return find(v, c)->second; }
    void set(int v, uint32_t c, int to) {
        auto it = find(v, c);
        if (it != next_[v].end() && it->first == c)
            it->second = to;
        else
            next_[v].insert(it, Arc{c, to});
    }
};

void check_range(const SymbolicSequence& seq, uint32_t j_max) {
    if (j_max == 0) throw UsageError("J_max must be positive");
    if (j_max > seq.size())
        throw UsageError("J_max=" + std::to_string(j_max) + " exceeds sequence length " +
                         std::to_string(seq.size()));
}

}  // namespace

void BlockCensus::check_invariants() const {
    for (uint32_t j = 1; j <= j_max(); ++j) {
        const Row& r = at(j);
        const uint64_t positions = sequence_length - j + 1;
        if (r.count_all > positions) throw InvariantError("count_all exceeds window count");
        if (j * std::log2(double(alphabet_size)) < 63) {
            uint64_t qj = 1;
            for (uint32_t i = 0; i < j; ++i) qj *= alphabet_size;
            if (r.count_all > qj) throw InvariantError("count_all exceeds q^J");
        }
        if (all_only) continue;
        if (r.count_regular > r.count_all) throw InvariantError("regular > all");
        if (r.count_effective > r.count_all) throw InvariantError("effective > all");
        if (r.count_effective_regular > r.count_regular)
            throw InvariantError("effective_regular > regular");
        if (tau == 1 && r.count_effective != r.count_all)
            throw InvariantError("tau=1 must make effective == all");
    }
}

BlockCensus census_naive(const SymbolicSequence& seq, uint32_t j_max, uint32_t tau) {
    check_range(seq, j_max);
    if (tau == 0) throw UsageError("tau must be positive");
    const unsigned bw = symbol_bits(seq.alphabet_size);

    BlockCensus c;
    c.alphabet_size = seq.alphabet_size;
    c.sequence_length = seq.size();
    c.tau = tau;
    c.rows.resize(j_max);
    for (uint32_t j = 1; j <= j_max; ++j) {
        const size_t width = size_t(bw) * j;
        if (width <= 22)
            c.rows[j - 1] = census_row_table(seq.symbols, j, bw, tau);
        else if (width <= 120)
            c.rows[j - 1] = census_row_hash(seq.symbols, j, bw, tau);
        else
            c.rows[j - 1] = census_row_sorted(seq.symbols, j, tau);
    }
    c.check_invariants();
    return c;
}

BlockCensus::Row census_single(const SymbolicSequence& seq, uint32_t j, uint32_t tau) {
    check_range(seq, j);
    if (tau == 0) throw UsageError("tau must be positive");
    const unsigned bw = symbol_bits(seq.alphabet_size);
    const size_t width = size_t(bw) * j;
    if (width <= 22) return census_row_table(seq.symbols, j, bw, tau);
    if (width <= 120) return census_row_hash(seq.symbols, j, bw, tau);
    return census_row_sorted(seq.symbols, j, tau);
}

BlockCensus census_automaton(const SymbolicSequence& seq, uint32_t j_max) {
    check_range(seq, j_max);

    // remap symbols to a dense range to keep the arc arrays small
    std::vector<uint32_t> remap(seq.alphabet_size, 0);
    std::vector<uint8_t> used(seq.alphabet_size, 0);
    for (uint32_t s : seq.symbols) used[s] = 1;
    uint32_t dense = 0;
    for (uint32_t s = 0; s < seq.alphabet_size; ++s)
        if (used[s]) remap[s] = dense++;

    SuffixAutomaton sam(seq.size());
    for (uint32_t s : seq.symbols) sam.extend(remap[s]);

    BlockCensus c;
    c.alphabet_size = seq.alphabet_size;
    c.sequence_length = seq.size();
    c.tau = 0;
    c.all_only = true;
    c.rows.resize(j_max);
    auto counts = sam.distinct_by_length(j_max, seq.size());
    for (uint32_t j = 1; j <= j_max; ++j) c.rows[j - 1].count_all = counts[j - 1];
    c.check_invariants();
    return c;
}

std::vector<EntropyPoint> entropy_curve(const BlockCensus& census) {
    if (census.rows.empty()) throw UsageError("empty census");
    std::vector<EntropyPoint> out;
    out.reserve(census.j_max());
    for (uint32_t j = 1; j <= census.j_max(); ++j)
        out.push_back({j, census.entropy_all(j),
                       census.all_only ? 0.0 : census.entropy_regular(j)});
    return out;
}

BlockCensus quantized_census(const TorusSequence& x, int64_t grid, uint32_t j_max,
                             uint32_t tau) {
    return census_naive(quantize(x, grid).as_symbolic(), j_max, tau);
}

BlockCensus quantized_census(const QuantizedSequence& q, uint32_t j_max, uint32_t tau) {
    return census_naive(q.as_symbolic(), j_max, tau);
}

}  // namespace seqent
