#pragma once

#include "seqent/sequences.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace seqent {

// Distinct-block census of a finite-alphabet sequence.
//
// For each window length J = 1..J_max:
//   count_all               distinct J-windows at every position
//   count_regular           distinct J-windows at positions m*J (the final
//                           partial window is dropped)
//   count_effective         distinct J-windows occurring >= tau times; the
//                           finite-data stand-in for "occurs infinitely often"
//   count_effective_regular distinct regular windows with >= tau regular
//                           occurrences
// Entropies are natural-log per symbol: ln(count)/J.
struct BlockCensus {
    struct Row {
        uint64_t count_all = 0;
        uint64_t count_regular = 0;
        uint64_t count_effective = 0;
        uint64_t count_effective_regular = 0;
    };

    uint32_t alphabet_size = 0;
    uint64_t sequence_length = 0;
    uint32_t tau = 2;
    bool all_only = false;  // set by the automaton engine: only count_all is filled
    std::vector<Row> rows;  // rows[J-1]

    uint32_t j_max() const { return static_cast<uint32_t>(rows.size()); }
    const Row& at(uint32_t j) const { return rows.at(j - 1); }
    double entropy_all(uint32_t j) const {
        return std::log(static_cast<double>(at(j).count_all)) / j;
    }
    double entropy_regular(uint32_t j) const {
        return std::log(static_cast<double>(at(j).count_regular)) / j;
    }

    // Structural inequalities every census must satisfy; throws InvariantError.
    void check_invariants() const;
};

// Exact census by inserting every window of every length into an
// associative multiset (direct-address table or hash map, by size).
BlockCensus census_naive(const SymbolicSequence& seq, uint32_t j_max, uint32_t tau = 2);

// One census row at a single window length (no smaller J computed).
BlockCensus::Row census_single(const SymbolicSequence& seq, uint32_t j, uint32_t tau = 2);

// Suffix-automaton engine: count_all only, linear in sequence length.
// Agrees with census_naive on count_all for every J.
BlockCensus census_automaton(const SymbolicSequence& seq, uint32_t j_max);

struct EntropyPoint {
    uint32_t j;
    double entropy_all;
    double entropy_regular;
};
std::vector<EntropyPoint> entropy_curve(const BlockCensus& census);

// Census of the grid-index sequence of a torus sequence (quantizes first)
// or of an already-quantized sequence (no re-quantization).
BlockCensus quantized_census(const TorusSequence& x, int64_t grid, uint32_t j_max,
                             uint32_t tau = 2);
BlockCensus quantized_census(const QuantizedSequence& q, uint32_t j_max, uint32_t tau = 2);

}  // namespace seqent
