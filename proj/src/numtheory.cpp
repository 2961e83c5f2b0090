#include "seqent/numtheory.hpp"

#include <algorithm>
#include <cmath>

namespace seqent {

namespace {

std::vector<uint32_t> primes_up_to(uint32_t n) {
    std::vector<uint8_t> comp(n + 1, 0);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (uint64_t k = uint64_t(i) * i; k <= n; k += i) comp[k] = 1;
        }
    }
    return ps;
}

}  // namespace

MobiusTable mobius_sieve(uint64_t limit) {
    if (limit < 1) throw UsageError("sieve limit must be >= 1");
    if (limit > (uint64_t(1) << 34))
        throw BudgetError("sieve limit too large for in-memory tables");

    MobiusTable t;
    t.limit = limit;
    t.mu.assign(limit + 1, 0);
    t.mu[1] = 1;
    std::vector<uint32_t> lp(limit + 1, 0);  // least prime factor
    std::vector<uint32_t> primes;
    for (uint64_t i = 2; i <= limit; ++i) {
        if (lp[i] == 0) {
            lp[i] = static_cast<uint32_t>(i);
            primes.push_back(static_cast<uint32_t>(i));
            t.mu[i] = -1;
        }
        for (uint32_t p : primes) {
            if (p > lp[i] || i * p > limit) break;
            lp[i * p] = p;
            t.mu[i * p] = (i % p == 0) ? int8_t(0) : int8_t(-t.mu[i]);
        }
    }
    return t;
}

std::vector<uint64_t> squarefree_list(uint64_t limit) {
    MobiusTable t = mobius_sieve(limit);
    std::vector<uint64_t> out;
    for (uint64_t m = 1; m <= limit; ++m)
        if (t.mu[m] != 0) out.push_back(m);
    return out;
}

IntegerSequence squarefree_enumerate(uint64_t limit) {
    std::vector<Int> vals;
    for (uint64_t m : squarefree_list(limit)) vals.emplace_back(m);
    return IntegerSequence(std::move(vals));
}

bool support_admissible(const std::vector<uint64_t>& support, uint64_t block_length) {
    if (support.empty()) return true;
    const auto root = static_cast<uint32_t>(std::sqrt(double(block_length)) + 2);
    for (uint32_t p : primes_up_to(root)) {
        const uint64_t m = uint64_t(p) * p;
        if (m > block_length) break;
        if (support.size() < m) continue;  // too few points to cover m classes
        std::vector<uint8_t> hit(m, 0);
        uint64_t covered = 0;
        for (uint64_t s : support) {
            uint8_t& h = hit[s % m];
            if (!h) {
                h = 1;
                ++covered;
            }
        }
        if (covered == m) return false;
    }
    return true;
}

bool is_admissible(const std::vector<uint8_t>& block) {
    std::vector<uint64_t> support;
    for (size_t i = 0; i < block.size(); ++i)
        if (block[i]) support.push_back(i);
    return support_admissible(support, block.size());
}

uint64_t count_admissible(uint32_t j) {
    if (j == 0) throw UsageError("block length must be positive");
    if (j > 24) throw UsageError("count_admissible is exhaustive; J must be <= 24");

    // Only p = 2 and p = 3 have p^2 <= 24.  Precompute position masks per
    // residue class and test coverage directly on the block bitmask.
    struct PrimeMasks {
        uint32_t m;
        uint32_t masks[9];
    };
    std::vector<PrimeMasks> pms;
    for (uint32_t p : {2u, 3u}) {
        const uint32_t m = p * p;
        if (m > j) continue;
        PrimeMasks pm{};
        pm.m = m;
        for (uint32_t i = 0; i < j; ++i) pm.masks[i % m] |= (1u << i);
        pms.push_back(pm);
    }

    uint64_t count = 0;
    for (uint32_t b = 0; b < (1u << j); ++b) {
        bool admissible = true;
        for (const auto& pm : pms) {  // mod-4 coverage is checked first
            bool covers = true;
            for (uint32_t r = 0; r < pm.m; ++r)
                if (!(b & pm.masks[r])) {
                    covers = false;
                    break;
                }
            if (covers) {
                admissible = false;
                break;
            }
        }
        if (admissible) ++count;
    }
    return count;
}

GapBlock gap_block_construct(const DigitStream& x_digits,
                             const std::vector<std::pair<double, double>>& intervals,
                             uint64_t max_scan, unsigned precision_bits) {
    for (const auto& [y, z] : intervals)
        if (!(y < z) || y < 0.0 || z > 1.0)
            throw UsageError("intervals must be nonempty open subsets of (0,1)");
    if (max_scan == 0) throw UsageError("max_scan must be positive");

    const unsigned p_bits = precision_bits;
    const Int x_mant = x_digits.mantissa(p_bits);
    const Int mod = pow2(p_bits);

    GapBlock out;
    std::vector<uint64_t> support{0};
    uint64_t sum = 0;

    for (size_t step = 1; step <= intervals.size(); ++step) {
        const auto& [y, z] = intervals[step - 1];

        // one congruence per prime p with p^2 <= step: d = -sum mod p
        uint64_t modulus = 1;
        for (uint32_t p : primes_up_to(static_cast<uint32_t>(std::sqrt(double(step)) + 1)))
            if (uint64_t(p) * p <= step) modulus *= p;
        uint64_t start = (modulus - (sum % modulus)) % modulus;
        if (start == 0) start = modulus;

        bool found = false;
        for (uint64_t t = 0; t < max_scan; ++t) {
            const uint64_t d = start + t * modulus;
            Int frac = (d * x_mant) % mod;
            if (compare_fixed_to_double(frac, p_bits, y) <= 0) continue;
            if (compare_fixed_to_double(frac, p_bits, z) >= 0) continue;
            // keep the support admissible; the congruences alone do not
            // rule out covering mod p^2 at the step where the support
            // first reaches p^2 elements
            std::vector<uint64_t> cand = support;
            cand.push_back(sum + d);
            if (!support_admissible(cand, sum + d + 1)) continue;
            out.gaps.push_back(d);
            support = std::move(cand);
            sum += d;
            found = true;
            break;
        }
        if (!found)
            throw BudgetError("gap " + std::to_string(step) + ": no candidate within " +
                              std::to_string(max_scan) + " scans (raise the budget or widen "
                              "the interval)");
    }

    if (!is_admissible(out.support_block()))
        throw InvariantError("constructed gap block is not admissible (bug)");
    return out;
}

}  // namespace seqent
