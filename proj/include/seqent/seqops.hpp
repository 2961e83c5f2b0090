#pragma once

#include "seqent/digitstream.hpp"
#include "seqent/sequences.hpp"

#include <cstdint>
#include <utility>

namespace seqent {

// x_d(n) = x(n+d) - x(n) mod 1, computed exactly as mantissa subtraction
// with wrap.  Output length shrinks by d.
TorusSequence difference(const TorusSequence& x, uint64_t d);

// k-fold first difference.
TorusSequence iterated_difference(const TorusSequence& x, uint64_t k);

// Nearest grid index to x(n) under torus distance; ties (distance exactly
// 1/(2N)) go to the lower index, the wrap tie between (N-1)/N and 0 goes
// to 0.  Error is at most 1/(2N) in torus distance.
QuantizedSequence quantize(const TorusSequence& x, int64_t grid);
int64_t quantize_one(const Int& mantissa, unsigned precision_bits, int64_t grid);

// frac(a * x) to precision_bits, using bit_length(a) + precision_bits +
// guard_bits stream digits and rounding the product to the nearest P-bit
// mantissa.  Result differs from the true frac(a*x) by < 2^-P.
Int mul_mod1(const Int& a, const DigitStream& x_digits, unsigned precision_bits,
             unsigned guard_bits = 32);

// Element-wise a(n) * x mod 1.  Negative a(n) reflect: 1 - frac(|a|x) mod 1.
TorusSequence scalar_sequence(const IntegerSequence& a, const DigitStream& x_digits,
                              unsigned precision_bits, unsigned guard_bits = 32);

// Reconstruction of x from its d-difference on the N^2 grid.
//   f = quantize(difference(x, d), N^2)
//   g: at anchor positions n = r mod dN (r < d), g = floor(x * N^2) / N^2;
//      elsewhere g(n) = g(anchor) + sum of f over the d-strided run, mod 1.
// Returns (g, f), both on grid N^2.  Verifies sup |g - x| <= 2/N on return.
struct Reconstruction {
    QuantizedSequence g;
    QuantizedSequence f;
};
Reconstruction reconstruct(const TorusSequence& x, uint64_t d, int64_t grid);

}  // namespace seqent
