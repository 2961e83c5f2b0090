#pragma once

#include "seqent/bigint.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace seqent {

// Finite sequence over the alphabet {0, ..., q-1}.
struct SymbolicSequence {
    std::vector<uint32_t> symbols;
    uint32_t alphabet_size = 2;

    SymbolicSequence() = default;
    SymbolicSequence(std::vector<uint32_t> syms, uint32_t q)
        : symbols(std::move(syms)), alphabet_size(q) {
        if (alphabet_size == 0) throw UsageError("alphabet size must be positive");
        if (symbols.empty()) throw UsageError("sequence must be nonempty");
        for (uint32_t s : symbols)
            if (s >= alphabet_size) throw UsageError("symbol out of alphabet range");
    }

    size_t size() const { return symbols.size(); }
};

// Finite sequence of dyadic fixed-point fractions in [0,1).
// Value at n is mantissas[n] / 2^precision_bits; all arithmetic is exact
// integer arithmetic mod 2^precision_bits.
struct TorusSequence {
    std::vector<Int> mantissas;
    unsigned precision_bits = 64;

    TorusSequence() = default;
    TorusSequence(std::vector<Int> m, unsigned p)
        : mantissas(std::move(m)), precision_bits(p) {
        if (precision_bits == 0) throw UsageError("precision must be positive");
        const Int lim = pow2(precision_bits);
        for (const Int& v : mantissas)
            if (v < 0 || v >= lim) throw UsageError("mantissa outside [0, 2^P)");
    }

    size_t size() const { return mantissas.size(); }
    double value(size_t n) const {
        return mantissas[n].convert_to<double>() / std::ldexp(1.0, (int)precision_bits);
    }
};

// Torus distance between two mantissas at the same precision: min(d, 2^P - d).
inline Int torus_distance(const Int& a, const Int& b, unsigned precision_bits) {
    Int d = a >= b ? a - b : b - a;
    Int w = pow2(precision_bits) - d;
    return d < w ? d : w;
}

struct IntegerSequence {
    std::vector<Int> values;

    IntegerSequence() = default;
    explicit IntegerSequence(std::vector<Int> v) : values(std::move(v)) {}
    size_t size() const { return values.size(); }
};

// Finite sequence of grid levels; value at n is levels[n] / grid.
struct QuantizedSequence {
    std::vector<int64_t> levels;
    int64_t grid = 2;

    QuantizedSequence() = default;
    QuantizedSequence(std::vector<int64_t> lv, int64_t n) : levels(std::move(lv)), grid(n) {
        if (grid <= 0) throw UsageError("grid must be positive");
        for (int64_t l : levels)
            if (l < 0 || l >= grid) throw UsageError("level outside [0, grid)");
    }

    size_t size() const { return levels.size(); }

    SymbolicSequence as_symbolic() const {
        if (grid > 0x7fffffff) throw UsageError("grid too large for a symbolic alphabet");
        std::vector<uint32_t> syms(levels.begin(), levels.end());
        return SymbolicSequence(std::move(syms), static_cast<uint32_t>(grid));
    }
};

}  // namespace seqent
