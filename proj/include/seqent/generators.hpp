#pragma once

#include "seqent/digitstream.hpp"
#include "seqent/numtheory.hpp"
#include "seqent/sequences.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace seqent {

// SplitMix64: the single PRNG of the artifact, fully pinned so every
// implementation reproduces identical streams.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// Stream constructors.  All are deterministic functions of their parameters.
DigitStreamPtr prng_stream(uint64_t seed, uint32_t base);
DigitStreamPtr fibonacci_stream();
// First precision_bits binary digits of frac(sqrt(m)); m must not be a square.
DigitStreamPtr quadratic_digits(uint64_t m, unsigned precision_bits);
DigitStreamPtr rational_digits(uint64_t num, uint64_t den, uint32_t base);
// Raw bytes, one digit per byte, validated < base.
DigitStreamPtr file_digits(const std::string& path, uint32_t base);
// Parse a stream spec: prng:<seed>[:<base>], fibonacci, quadratic:<m>[:<bits>],
// rational:<num>/<den>[:<base>], file:<path>[:<base>].
DigitStreamPtr make_stream(const std::string& spec, uint32_t default_base = 2,
                           unsigned default_bits = 1024);

// Prefix of the fixed point of 0 -> 01, 1 -> 0.
SymbolicSequence fibonacci_word(size_t n);

// Random symbol sequence from SplitMix64 reduced mod q.
SymbolicSequence prng_word(uint64_t seed, uint32_t q, size_t n);

// f_L(n) = sum_{l=1..L} digit(l+n) p^{L-l}: the depth-L base-p truncation
// family on grid p^L.  Consumes digits 2..n_max+L-1 of the stream... more
// precisely digit indices l+n for l = 1..L, n = 0..n_max-1.
QuantizedSequence base_p_truncation(const DigitStream& digits, uint32_t depth,
                                    size_t n_max);

// a(0) = a0, a(n+1) = a(n) + d(n).
IntegerSequence cumsum(const IntegerSequence& d, const Int& a0 = 0);
IntegerSequence delta(const IntegerSequence& a);

// a(n) = p^n + c(n) with c(0) = 0 and Delta c(n) i.i.d. uniform on
// {0..pprime-1} from prng_stream(seed, pprime).  Requires pprime > p^2.
IntegerSequence exm1_sequence(uint32_t p, uint32_t pprime, uint64_t seed, size_t n_max,
                              size_t budget = 4000);

// frac(p^n x) for n = 0..n_max-1 at precision_bits, exact to < 2^-P per
// element (works from ceil(n_max log2 p) + P + guard stream digits).
TorusSequence geometric_torus(uint32_t p, const DigitStream& x_digits, size_t n_max,
                              unsigned precision_bits, unsigned guard_bits = 32);

// The counterexample pair: a(n) in {-1,0,1} built 4-block by 4-block from
// the Mobius pattern so that, on every block with a nonzero mu entry,
//   sum_j Delta a(4k+j) mu(4k+j) = 0   and   sum_j a(4k+j) mu(4k+j) >= 1.
struct SarnakPair {
    std::vector<int8_t> a;      // indices 0..n_top
    std::vector<int8_t> delta;  // delta[n] = a[n+1] - a[n], indices 0..n_top-1
    uint64_t limit = 0;         // partial sums are taken over n = 1..limit
};
SarnakPair sarnak_build(uint64_t limit, const MobiusTable& mu);

}  // namespace seqent
