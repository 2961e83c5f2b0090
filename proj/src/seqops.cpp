#include "seqent/seqops.hpp"

namespace seqent {

TorusSequence difference(const TorusSequence& x, uint64_t d) {
    if (d == 0) throw UsageError("difference step d must be positive");
    if (d >= x.size())
        throw UsageError("difference step d=" + std::to_string(d) +
                         " leaves no output for length " + std::to_string(x.size()));
    const Int mod = pow2(x.precision_bits);
    std::vector<Int> out;
    out.reserve(x.size() - d);
    for (size_t n = 0; n + d < x.size(); ++n) {
        Int v = x.mantissas[n + d] - x.mantissas[n];
        if (v < 0) v += mod;
        out.push_back(std::move(v));
    }
    return TorusSequence(std::move(out), x.precision_bits);
}

TorusSequence iterated_difference(const TorusSequence& x, uint64_t k) {
    if (k == 0) throw UsageError("difference order k must be positive");
    if (k >= x.size()) throw UsageError("difference order k leaves no output");
    TorusSequence cur = difference(x, 1);
    for (uint64_t i = 1; i < k; ++i) cur = difference(cur, 1);
    return cur;
}

int64_t quantize_one(const Int& mantissa, unsigned precision_bits, int64_t grid) {
    // mantissa * grid / 2^P = k0 + r/2^P with 0 <= r < 2^P; nearest of k0, k0+1.
    Int t = mantissa * grid;
    Int k0 = t >> precision_bits;
    Int r = t - (k0 << precision_bits);
    const Int half = pow2(precision_bits - 1);
    int64_t k = k0.convert_to<int64_t>();
    if (r > half) {
        k += 1;
    } else if (r == half) {
        // exact midpoint: lower index wins; the wrap tie (N-1)/N vs 0 goes to 0
        int64_t up = (k + 1) % grid;
        k = std::min(k, up);
    }
    return k % grid;
}

QuantizedSequence quantize(const TorusSequence& x, int64_t grid) {
    if (grid < 2) throw UsageError("quantization grid must be >= 2");
    std::vector<int64_t> levels;
    levels.reserve(x.size());
    for (const Int& m : x.mantissas) levels.push_back(quantize_one(m, x.precision_bits, grid));
    return QuantizedSequence(std::move(levels), grid);
}

Int mul_mod1(const Int& a, const DigitStream& x_digits, unsigned precision_bits,
             unsigned guard_bits) {
    if (a < 0) throw UsageError("mul_mod1 takes a >= 0; callers reflect negatives");
    if (x_digits.base() != 2) throw UsageError("mul_mod1 requires a binary digit stream");
    if (guard_bits == 0) guard_bits = 1;
    const unsigned b = bit_length(a) + precision_bits + guard_bits;
    const Int x_b = x_digits.take(0, b);  // throws PrecisionError when short
    Int prod = a * x_b;
    prod &= pow2(b) - 1;  // discard the integer part
    // round the B-bit fraction to the nearest P-bit mantissa (half rounds up)
    const unsigned drop = b - precision_bits;
    Int mant = (prod + pow2(drop - 1)) >> drop;
    mant &= pow2(precision_bits) - 1;  // rounding up to 1.0 wraps to 0
    return mant;
}

TorusSequence scalar_sequence(const IntegerSequence& a, const DigitStream& x_digits,
                              unsigned precision_bits, unsigned guard_bits) {
    const Int mod = pow2(precision_bits);
    std::vector<Int> out;
    out.reserve(a.size());
    for (const Int& v : a.values) {
        Int m = mul_mod1(v >= 0 ? v : Int(-v), x_digits, precision_bits, guard_bits);
        if (v < 0 && m != 0) m = mod - m;
        out.push_back(std::move(m));
    }
    return TorusSequence(std::move(out), precision_bits);
}

Reconstruction reconstruct(const TorusSequence& x, uint64_t d, int64_t grid) {
    const int64_t n_grid = grid;
    if (d == 0 || n_grid < 2) throw UsageError("reconstruct needs d >= 1 and N >= 2");
    if (n_grid < static_cast<int64_t>(d)) throw UsageError("reconstruct needs N >= d");
    const uint64_t dn = d * static_cast<uint64_t>(n_grid);
    if (x.size() <= dn) throw UsageError("reconstruct needs length > d*N");
    const int64_t grid2 = n_grid * n_grid;
    const unsigned p = x.precision_bits;

    QuantizedSequence f = quantize(difference(x, d), grid2);

    std::vector<int64_t> g(x.size(), 0);
    for (size_t n = 0; n < x.size(); ++n) {
        const uint64_t r = n % dn;
        if (r < d) {
            g[n] = ((x.mantissas[n] * grid2) >> p).convert_to<int64_t>();  // floor anchor
        } else {
            const uint64_t q = r / d;
            const size_t anchor = n - q * d;
            int64_t acc = g[anchor];
            for (uint64_t k = 0; k < q; ++k) acc += f.levels[anchor + k * d];
            g[n] = acc % grid2;
        }
    }

    // proved bound from the construction: sup torus distance <= 2/N
    const Int limit = Int(2) * n_grid * pow2(p);  // (2/N) * N^2 * 2^P
    for (size_t n = 0; n < x.size(); ++n) {
        Int diff = Int(g[n]) * pow2(p) - x.mantissas[n] * grid2;
        if (diff < 0) diff = -diff;
        Int wrap = Int(grid2) * pow2(p) - diff;
        if (wrap < diff) diff = wrap;
        if (diff > limit)
            throw InvariantError("reconstruction error bound 2/N violated (bug)");
    }
    return Reconstruction{QuantizedSequence(std::move(g), grid2), std::move(f)};
}

}  // namespace seqent
