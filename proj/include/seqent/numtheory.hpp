#pragma once

#include "seqent/digitstream.hpp"
#include "seqent/sequences.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace seqent {

// Sieved Mobius values on [0, limit]; mu(0) = 0 by convention so that
// position 0 is inert in every weighted sum.
struct MobiusTable {
    uint64_t limit = 0;
    std::vector<int8_t> mu;

    int8_t at(uint64_t n) const { return mu[n]; }
    bool squarefree(uint64_t n) const { return mu[n] != 0; }
};

MobiusTable mobius_sieve(uint64_t limit);

// Increasing list of all square-free m <= limit.
IntegerSequence squarefree_enumerate(uint64_t limit);
std::vector<uint64_t> squarefree_list(uint64_t limit);

// A 0/1 block is admissible when, for every prime p with p^2 <= length,
// its support reduced mod p^2 misses at least one residue class.  Primes
// with p^2 > length can never be covered.
bool is_admissible(const std::vector<uint8_t>& block);
bool support_admissible(const std::vector<uint64_t>& support, uint64_t block_length);

// Exact number of admissible 0/1 blocks of length J, by exhaustive scan.
// Refuses J > 24.
uint64_t count_admissible(uint32_t j);

// Gap list d_1..d_J together with its support block (1, 0^{d_1-1}, 1, ...).
struct GapBlock {
    std::vector<uint64_t> gaps;

    uint64_t block_length() const {
        uint64_t s = 1;
        for (uint64_t d : gaps) s += d;
        return s;
    }
    std::vector<uint64_t> support() const {  // prefix sums, starting at 0
        std::vector<uint64_t> s{0};
        uint64_t acc = 0;
        for (uint64_t d : gaps) s.push_back(acc += d);
        return s;
    }
    std::vector<uint8_t> support_block() const {
        std::vector<uint8_t> b(block_length(), 0);
        for (uint64_t p : support()) b[p] = 1;
        return b;
    }
};

// Constructive search for an admissible gap block with frac(d_j * x) inside
// interval_j for every j.  Candidates for the j-th gap run over the
// arithmetic progression d + sum(previous gaps) = 0 mod p for all primes
// p <= sqrt(j) (one congruence per prime, combined by CRT); the first
// candidate that lands in the interval and keeps the support admissible is
// taken.  Throws BudgetError when a gap exhausts max_scan candidates.
GapBlock gap_block_construct(const DigitStream& x_digits,
                             const std::vector<std::pair<double, double>>& intervals,
                             uint64_t max_scan, unsigned precision_bits = 256);

}  // namespace seqent
