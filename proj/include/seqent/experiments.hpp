#pragma once

#include "seqent/blockcount.hpp"
#include "seqent/generators.hpp"
#include "seqent/numtheory.hpp"
#include "seqent/seqops.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace seqent {

// Common experiment knobs; every field is echoed into output metadata.
struct RunConfig {
    uint64_t seed = 1;
    uint64_t length = 100000;
    uint32_t j_max = 20;
    int64_t grid = 16;
    unsigned precision = 128;
    uint64_t sieve_limit = 10000000;
    uint32_t tau = 2;
    unsigned threads = 1;
    bool timestamp = true;
};

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

// Tabular experiment result: `# key=value ...` metadata line, optional
// comment notes, a header row, data rows, and (for verdict-bearing
// commands) named checks plus the overall verdict.
struct Report {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> notes;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<Check> checks;

    bool has_verdict() const { return !checks.empty(); }
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }

    void write_csv(std::ostream& out) const;
    std::string to_json() const;  // mirrors the CSV plus the verdict
};

// entropy: block census and entropy curve of a symbolic sequence.
// Sequence specs: fibonacci-word | prng:<seed>:<q> | constant:<q>:<sym> |
// debruijn3 | symfile:<path> (one symbol per line).
Report run_entropy(const std::string& source, const RunConfig& cfg,
                   const std::string& engine = "naive");

// vdc: bounded-difference sequence d, a = cumsum(d), exact symbolic
// encoding of Delta a_x; verdict compares the two censuses row by row.
Report run_vdc(uint32_t gap_bound, const std::string& x_spec, const RunConfig& cfg);

// sqfree: mu^2 census vs exact admissible counts, plus the gap census of
// the square-free enumeration.
Report run_sqfree(const RunConfig& cfg);

// sarnak: the counterexample pair partial sums with checkpoints.
Report run_sarnak(const RunConfig& cfg);

// dual: dual-entropy estimation over sampled x streams.
// family: bounded-diff:<L> | geometric:<p> | exm1:<p>:<pprime>
Report run_dual(const std::string& family, const std::vector<std::string>& x_specs,
                const RunConfig& cfg);

// reconstruct: difference/quantize/rebuild with the 2/N bound and the
// regular-block count inequality at J = dN and 2dN.
// Sequence specs: rotation:<m> | random:<seed> | constant:<double>
Report run_reconstruct(const std::string& source, uint64_t d, const RunConfig& cfg);

// bounds: gap-encoding vs indicator-word census inequalities.
// Word specs: fibonacci-complement | gapword:<seed>:<L> | symfile:<path>
Report run_bounds(const std::string& word_spec, uint32_t gap_bound, const RunConfig& cfg);

// furstenberg: two exm1-style families; entropy-band ratio sum.
Report run_furstenberg(uint32_t p, uint32_t pprime, uint32_t q, uint32_t qprime,
                       const std::string& x_spec, const RunConfig& cfg);

// admissible-count: exact admissible block counts for J = 1..j_max.
Report run_admissible_count(uint32_t j_max);

// Helpers shared with tests.
SymbolicSequence load_symbolic_source(const std::string& source, const RunConfig& cfg);
TorusSequence load_torus_source(const std::string& source, const RunConfig& cfg);
// Exact symbolic encoding of a torus sequence whose values all lie within
// round-off of frac(j*x), j in [-L, L]: returns symbols j+L on alphabet 2L+1.
SymbolicSequence encode_against_table(const TorusSequence& seq, const DigitStream& x,
                                      uint32_t gap_bound);

}  // namespace seqent
