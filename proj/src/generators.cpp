#include "seqent/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace seqent {

namespace {

class PrngStream final : public DigitStream {
public:
    PrngStream(uint64_t seed, uint32_t base) : seed_(seed), base_(base), gen_(seed) {
        if (base < 2) throw UsageError("stream base must be >= 2");
    }
    uint32_t base() const override { return base_; }
    uint64_t available() const override { return kUnbounded; }
    uint32_t digit(uint64_t index) const override {
        std::lock_guard<std::mutex> lock(m_);
        while (cache_.size() <= index)
            cache_.push_back(static_cast<uint32_t>(gen_.next() % base_));
        return cache_[index];
    }
    std::string describe() const override {
        return "prng:" + std::to_string(seed_) + ":" + std::to_string(base_);
    }

private:
    uint64_t seed_;
    uint32_t base_;
    mutable SplitMix64 gen_;
    mutable std::vector<uint32_t> cache_;
    mutable std::mutex m_;
};

class FibonacciStream final : public DigitStream {
public:
    FibonacciStream() : cache_{0, 1, 0} {}
    uint32_t base() const override { return 2; }
    uint64_t available() const override { return kUnbounded; }
    uint32_t digit(uint64_t index) const override {
        std::lock_guard<std::mutex> lock(m_);
        while (cache_.size() <= index) {
            // the morphism maps a prefix of the fixed point to a longer prefix
            std::vector<uint8_t> next;
            next.reserve(cache_.size() * 2);
            for (uint8_t c : cache_) {
                if (c == 0) {
                    next.push_back(0);
                    next.push_back(1);
                } else {
                    next.push_back(0);
                }
            }
            cache_ = std::move(next);
        }
        return cache_[index];
    }
    std::string describe() const override { return "fibonacci"; }

private:
    mutable std::vector<uint8_t> cache_;
    mutable std::mutex m_;
};

class FixedDigits final : public DigitStream {
public:
    FixedDigits(std::vector<uint8_t> digits, uint32_t base, std::string desc)
        : digits_(std::move(digits)), base_(base), desc_(std::move(desc)) {
        for (uint8_t d : digits_)
            if (d >= base_) throw UsageError("digit out of base range in " + desc_);
    }
    uint32_t base() const override { return base_; }
    uint64_t available() const override { return digits_.size(); }
    uint32_t digit(uint64_t index) const override {
        if (index >= digits_.size())
            throw PrecisionError("digit index past end of " + desc_);
        return digits_[index];
    }
    std::string describe() const override { return desc_; }

private:
    std::vector<uint8_t> digits_;
    uint32_t base_;
    std::string desc_;
};

class RationalStream final : public DigitStream {
public:
    RationalStream(uint64_t num, uint64_t den, uint32_t base)
        : num_(num), den_(den), base_(base), rem_(num % den) {
        if (den == 0) throw UsageError("rational stream needs a nonzero denominator");
        if (base < 2) throw UsageError("stream base must be >= 2");
    }
    uint32_t base() const override { return base_; }
    uint64_t available() const override { return kUnbounded; }
    uint32_t digit(uint64_t index) const override {
        std::lock_guard<std::mutex> lock(m_);
        while (cache_.size() <= index) {
            rem_ *= base_;
            cache_.push_back(static_cast<uint32_t>(rem_ / den_));
            rem_ %= den_;
        }
        return cache_[index];
    }
    std::string describe() const override {
        return "rational:" + std::to_string(num_) + "/" + std::to_string(den_) + ":" +
               std::to_string(base_);
    }

private:
    uint64_t num_, den_;
    uint32_t base_;
    mutable Int rem_;
    mutable std::vector<uint32_t> cache_;
    mutable std::mutex m_;
};

}  // namespace

DigitStreamPtr prng_stream(uint64_t seed, uint32_t base) {
    return std::make_shared<PrngStream>(seed, base);
}

DigitStreamPtr fibonacci_stream() { return std::make_shared<FibonacciStream>(); }

DigitStreamPtr quadratic_digits(uint64_t m, unsigned precision_bits) {
    if (m == 0) throw UsageError("quadratic stream needs m >= 1");
    const Int root = isqrt(Int(m));
    if (root * root == m) throw UsageError("m must not be a perfect square");
    // floor(sqrt(m) * 2^P) - floor(sqrt(m)) * 2^P: the P-bit mantissa of frac(sqrt m)
    Int mant = isqrt(Int(m) << (2 * precision_bits)) - (root << precision_bits);
    std::vector<uint8_t> bits(precision_bits, 0);
    for (unsigned i = 0; i < precision_bits; ++i)
        bits[i] = static_cast<uint8_t>(
            boost::multiprecision::bit_test(mant, precision_bits - 1 - i) ? 1 : 0);
    return std::make_shared<FixedDigits>(std::move(bits), 2,
                                         "quadratic:" + std::to_string(m) + ":" +
                                             std::to_string(precision_bits));
}

DigitStreamPtr rational_digits(uint64_t num, uint64_t den, uint32_t base) {
    return std::make_shared<RationalStream>(num, den, base);
}

DigitStreamPtr file_digits(const std::string& path, uint32_t base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open digit file: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (bytes.empty()) throw UsageError("digit file is empty: " + path);
    return std::make_shared<FixedDigits>(std::move(bytes), base, "file:" + path);
}

DigitStreamPtr make_stream(const std::string& spec, uint32_t default_base,
                           unsigned default_bits) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw UsageError("empty stream spec");
    const std::string& kind = parts[0];
    auto arg = [&](size_t i, uint64_t dflt) -> uint64_t {
        return i < parts.size() ? std::stoull(parts[i]) : dflt;
    };
    if (kind == "prng") {
        if (parts.size() < 2) throw UsageError("prng stream needs a seed: prng:<seed>[:<base>]");
        return prng_stream(arg(1, 0), static_cast<uint32_t>(arg(2, default_base)));
    }
    if (kind == "fibonacci" || kind == "fib") return fibonacci_stream();
    if (kind == "quadratic" || kind == "sqrt") {
        if (parts.size() < 2) throw UsageError("quadratic stream needs m: quadratic:<m>[:<bits>]");
        return quadratic_digits(arg(1, 2), static_cast<unsigned>(arg(2, default_bits)));
    }
    if (kind == "rational") {
        if (parts.size() < 2 || parts[1].find('/') == std::string::npos)
            throw UsageError("rational stream spec: rational:<num>/<den>[:<base>]");
        const auto slash = parts[1].find('/');
        uint64_t num = std::stoull(parts[1].substr(0, slash));
        uint64_t den = std::stoull(parts[1].substr(slash + 1));
        return rational_digits(num, den, static_cast<uint32_t>(arg(2, default_base)));
    }
    if (kind == "file") {
        if (parts.size() < 2) throw UsageError("file stream spec: file:<path>[:<base>]");
        return file_digits(parts[1], static_cast<uint32_t>(arg(2, default_base)));
    }
    throw UsageError("unknown stream kind: " + kind);
}

SymbolicSequence fibonacci_word(size_t n) {
    if (n == 0) throw UsageError("length must be positive");
    std::vector<uint8_t> w{0};
    while (w.size() < n) {
        std::vector<uint8_t> next;
        next.reserve(w.size() * 2);
        for (uint8_t c : w) {
            if (c == 0) {
                next.push_back(0);
                next.push_back(1);
            } else {
                next.push_back(0);
            }
        }
        w = std::move(next);
    }
    std::vector<uint32_t> syms(w.begin(), w.begin() + n);
    return SymbolicSequence(std::move(syms), 2);
}

SymbolicSequence prng_word(uint64_t seed, uint32_t q, size_t n) {
    if (q < 1) throw UsageError("alphabet size must be >= 1");
    if (n == 0) throw UsageError("length must be positive");
    SplitMix64 gen(seed);
    std::vector<uint32_t> syms(n);
    for (auto& s : syms) s = static_cast<uint32_t>(gen.next() % q);
    return SymbolicSequence(std::move(syms), q);
}

QuantizedSequence base_p_truncation(const DigitStream& digits, uint32_t depth,
                                    size_t n_max) {
    if (depth == 0) throw UsageError("truncation depth L must be positive");
    if (n_max == 0) throw UsageError("length must be positive");
    const uint64_t p = digits.base();
    double bits = depth * std::log2(double(p));
    if (bits > 31) throw UsageError("grid p^L too large");
    int64_t grid = 1;
    for (uint32_t l = 0; l < depth; ++l) grid *= static_cast<int64_t>(p);
    digits.require(n_max + depth);

    std::vector<int64_t> levels(n_max);
    int64_t lead = grid / static_cast<int64_t>(p);  // p^(L-1)
    int64_t level = 0;
    for (uint32_t l = 1; l <= depth; ++l)
        level = level * static_cast<int64_t>(p) + digits.digit(l);
    levels[0] = level;
    for (size_t n = 1; n < n_max; ++n) {
        level = (level - static_cast<int64_t>(digits.digit(n)) * lead) * static_cast<int64_t>(p) +
                digits.digit(n + depth);
        levels[n] = level;
    }
    return QuantizedSequence(std::move(levels), grid);
}

IntegerSequence cumsum(const IntegerSequence& d, const Int& a0) {
    std::vector<Int> out;
    out.reserve(d.size() + 1);
    out.push_back(a0);
    Int acc = a0;
    for (const Int& v : d.values) out.push_back(acc += v);
    return IntegerSequence(std::move(out));
}

IntegerSequence delta(const IntegerSequence& a) {
    if (a.size() < 2) throw UsageError("delta needs at least two values");
    std::vector<Int> out;
    out.reserve(a.size() - 1);
    for (size_t n = 0; n + 1 < a.size(); ++n) out.push_back(a.values[n + 1] - a.values[n]);
    return IntegerSequence(std::move(out));
}

IntegerSequence exm1_sequence(uint32_t p, uint32_t pprime, uint64_t seed, size_t n_max,
                              size_t budget) {
    if (p < 2) throw UsageError("p must be >= 2");
    if (uint64_t(pprime) <= uint64_t(p) * p) throw UsageError("pprime must exceed p^2");
    if (n_max > budget)
        throw BudgetError("n_max=" + std::to_string(n_max) + " exceeds the geometric budget " +
                          std::to_string(budget));
    auto dc = prng_stream(seed, pprime);
    std::vector<Int> out;
    out.reserve(n_max);
    Int power = 1, c = 0;
    for (size_t n = 0; n < n_max; ++n) {
        out.push_back(power + c);
        power *= p;
        c += dc->digit(n);  // Delta c(n) = a value in {0..pprime-1}
    }
    return IntegerSequence(std::move(out));
}

TorusSequence geometric_torus(uint32_t p, const DigitStream& x_digits, size_t n_max,
                              unsigned precision_bits, unsigned guard_bits) {
    if (p < 2) throw UsageError("p must be >= 2");
    if (n_max == 0) throw UsageError("length must be positive");
    const unsigned p_bits = bit_length(Int(p));
    const uint64_t b = uint64_t(n_max - 1) * p_bits + precision_bits + guard_bits;
    if (b > (uint64_t(1) << 28)) throw BudgetError("geometric family precision too large");
    const unsigned bu = static_cast<unsigned>(b);

    Int v = x_digits.mantissa(bu);  // also checks base 2 and availability
    const Int mask = pow2(bu) - 1;
    const Int pmask = pow2(precision_bits) - 1;
    std::vector<Int> out;
    out.reserve(n_max);
    for (size_t n = 0; n < n_max; ++n) {
        Int top = v >> (bu - precision_bits - 1);  // P+1 leading bits
        out.push_back(((top + 1) >> 1) & pmask);   // round half up, wrap at 1.0
        v = (v * p) & mask;
    }
    return TorusSequence(std::move(out), precision_bits);
}

namespace {

struct BlockRule {
    int8_t a[3];  // a(4k+1..4k+3)
};

// the six mu patterns with sum zero and not all entries zero
const BlockRule* table_lookup(int m1, int m2, int m3) {
    static const std::pair<std::array<int, 3>, BlockRule> rows[] = {
        {{-1, 0, 1}, {{-1, -1, 0}}},
        {{-1, 1, 0}, {{-1, 0, 1}}},
        {{0, -1, 1}, {{0, -1, 0}}},
        {{0, 1, -1}, {{0, 1, 0}}},
        {{1, -1, 0}, {{1, 0, -1}}},
        {{1, 0, -1}, {{1, 0, 0}}},
    };
    for (const auto& [key, rule] : rows)
        if (key[0] == m1 && key[1] == m2 && key[2] == m3) return &rule;
    return nullptr;
}

}  // namespace

SarnakPair sarnak_build(uint64_t limit, const MobiusTable& mu) {
    if (mu.limit < limit + 2)
        throw UsageError("sieve limit insufficient: need at least N+2");
    const uint64_t blocks = (limit + 1 + 3) / 4 + 1;  // a defined through 4*blocks
    if (mu.limit < 4 * blocks - 1)
        throw UsageError("sieve limit insufficient for the final 4-block");

    SarnakPair pair;
    pair.limit = limit;
    pair.a.assign(4 * blocks + 1, 0);
    pair.a[0] = 0;

    for (uint64_t k = 0; k < blocks; ++k) {
        const int m1 = mu.at(4 * k + 1), m2 = mu.at(4 * k + 2), m3 = mu.at(4 * k + 3);
        if (mu.at(4 * k) != 0) throw InvariantError("mu(4k) must vanish");
        int8_t a1, a2, a3;
        int d3;
        const int s = m1 + m2 + m3;
        if (m1 == 0 && m2 == 0 && m3 == 0) {
            a1 = a2 = a3 = 0;
            d3 = 0;
        } else if (s != 0) {
            const int8_t sg = s > 0 ? 1 : -1;
            a1 = a2 = a3 = sg;
            d3 = 0;
        } else {
            const BlockRule* rule = table_lookup(m1, m2, m3);
            if (!rule) throw InvariantError("unmatched zero-sum mu pattern");
            a1 = rule->a[0];
            a2 = rule->a[1];
            a3 = rule->a[2];
            const int d1 = a2 - a1, d2 = a3 - a2;
            // Delta a(4k+3) solved from the zero-sum identity when mu(4k+3)
            // is nonzero; the remaining table rows pin it to 0
            d3 = (m3 != 0) ? -(d1 * m1 + d2 * m2) / m3 : 0;
        }
        pair.a[4 * k + 1] = a1;
        pair.a[4 * k + 2] = a2;
        pair.a[4 * k + 3] = a3;
        pair.a[4 * k + 4] = static_cast<int8_t>(a3 + d3);
        if (pair.a[4 * k + 4] < -1 || pair.a[4 * k + 4] > 1)
            throw InvariantError("a(n) left {-1,0,1}");
    }

    pair.delta.resize(pair.a.size() - 1);
    for (size_t n = 0; n + 1 < pair.a.size(); ++n)
        pair.delta[n] = static_cast<int8_t>(pair.a[n + 1] - pair.a[n]);

    // verify both identities on every block with a nonzero mu entry
    for (uint64_t k = 0; k + 1 < blocks; ++k) {
        int su_d = 0, su_a = 0, nz = 0;
        for (uint64_t j = 1; j <= 4; ++j) {
            const int m = mu.at(4 * k + j);
            nz += (m != 0);
            su_d += pair.delta[4 * k + j] * m;
            su_a += pair.a[4 * k + j] * m;
        }
        if (nz == 0) continue;
        if (su_d != 0) throw InvariantError("block identity sum(Delta a * mu) != 0");
        if (su_a < 1) throw InvariantError("block identity sum(a * mu) < 1");
    }
    return pair;
}

}  // namespace seqent
