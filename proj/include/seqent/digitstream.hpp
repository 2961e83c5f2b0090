#pragma once

#include "seqent/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>

namespace seqent {

// Random-access source of base-b digits.  Streams are deterministic: the
// same construction yields the same digits forever.  `available()` returns
// the number of digits the stream can supply (kUnbounded if unlimited).
class DigitStream {
public:
    static constexpr uint64_t kUnbounded = std::numeric_limits<uint64_t>::max();

    virtual ~DigitStream() = default;

    virtual uint32_t base() const = 0;
    virtual uint64_t available() const = 0;
    virtual uint32_t digit(uint64_t index) const = 0;
    // Short machine-readable description echoed into experiment metadata.
    virtual std::string describe() const = 0;

    void require(uint64_t count) const {
        if (available() < count)
            throw PrecisionError("digit stream supplies " + std::to_string(available()) +
                                 " digits, " + std::to_string(count) + " required: " +
                                 describe());
    }

    // The integer formed by digits [first, first+count), most significant first.
    Int take(uint64_t first, uint64_t count) const {
        require(first + count);
        Int acc = 0;
        if (base() == 2) {
            for (uint64_t i = 0; i < count;) {  // pack 64 bits per big-int op
                const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, count - i));
                uint64_t w = 0;
                for (unsigned k = 0; k < chunk; ++k) w = (w << 1) | digit(first + i + k);
                acc = (acc << chunk) | w;
                i += chunk;
            }
        } else {
            for (uint64_t i = 0; i < count; ++i) acc = acc * base() + digit(first + i);
        }
        return acc;
    }

    // Mantissa of the stream value at `bits` binary digits (base-2 streams only).
    Int mantissa(unsigned bits) const {
        if (base() != 2) throw UsageError("binary digit stream required");
        return take(0, bits);
    }
};

using DigitStreamPtr = std::shared_ptr<const DigitStream>;

}  // namespace seqent
