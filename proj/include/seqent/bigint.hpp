#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace seqent {

using Int = boost::multiprecision::cpp_int;

// Thrown on bad arguments / violated preconditions (CLI exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a scan or resource budget runs out.  Says nothing about
// whether a solution exists beyond the budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a digit stream cannot supply the digits a computation needs.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a proved internal bound fails at runtime, i.e. a bug.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

inline unsigned bit_length(const Int& a) {
    if (a == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(a)) + 1;
}

inline Int pow2(unsigned bits) { return Int(1) << bits; }

// Floor square root (boost's sqrt on cpp_int is the integer square root).
inline Int isqrt(const Int& a) { return boost::multiprecision::sqrt(a); }

// Signed three-way comparison of num/2^p against a finite double in [0, 1].
// Doubles are dyadic rationals, so the comparison is exact.
inline int compare_fixed_to_double(const Int& num, unsigned p, double v) {
    if (v <= 0.0) return num == 0 && v == 0.0 ? 0 : 1;
    int exp = 0;
    double frac = std::frexp(v, &exp);           // v = frac * 2^exp, frac in [0.5, 1)
    Int vm = static_cast<long long>(std::ldexp(frac, 53));  // 53-bit integer mantissa
    // num / 2^p  vs  vm * 2^(exp-53):  num * 2^53 vs vm * 2^(exp + p)
    Int lhs = num << 53;
    Int rhs = vm;
    int shift = exp + static_cast<int>(p);
    if (shift >= 0) rhs <<= shift; else lhs <<= -shift;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

}  // namespace seqent
