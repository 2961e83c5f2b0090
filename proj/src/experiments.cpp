#include "seqent/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace seqent {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kSixOverPi2Ln2 = 0.42138285;  // 6/pi^2 * ln 2

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

void echo_config(Report& r, const RunConfig& cfg) {
    r.add("seed", std::to_string(cfg.seed));
    r.add("length", std::to_string(cfg.length));
    r.add("jmax", std::to_string(cfg.j_max));
    r.add("grid", std::to_string(cfg.grid));
    r.add("precision", std::to_string(cfg.precision));
    r.add("limit", std::to_string(cfg.sieve_limit));
    r.add("tau", std::to_string(cfg.tau));
    r.add("threads", std::to_string(cfg.threads));
    r.add("version", kVersion);
    if (cfg.timestamp) r.add("timestamp", iso_now());
}

Int double_to_mantissa(double v, unsigned precision_bits) {
    if (!(v >= 0.0 && v < 1.0)) throw UsageError("torus value must lie in [0,1)");
    if (v == 0.0) return 0;
    int e = 0;
    double f = std::frexp(v, &e);
    Int m = static_cast<long long>(std::ldexp(f, 53));
    int shift = static_cast<int>(precision_bits) + e - 53;
    if (shift >= 0) m <<= shift; else m >>= -shift;
    if (m >= pow2(precision_bits)) m = pow2(precision_bits) - 1;
    return m;
}

// packed distinct J-windows of a 0/1 sequence, J <= 24
std::vector<uint32_t> distinct_binary_windows(const std::vector<uint32_t>& s, uint32_t j) {
    std::vector<uint8_t> seen(size_t(1) << j, 0);
    std::vector<uint32_t> keys;
    const uint32_t mask = (j == 32) ? ~0u : (1u << j) - 1;
    uint32_t key = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        key = ((key << 1) | s[i]) & mask;
        if (i + 1 >= j && !seen[key]) {
            seen[key] = 1;
            keys.push_back(key);
        }
    }
    return keys;
}

std::vector<uint8_t> unpack_block(uint32_t key, uint32_t j) {
    std::vector<uint8_t> b(j);
    for (uint32_t l = 0; l < j; ++l) b[l] = (key >> (j - 1 - l)) & 1u;
    return b;
}

}  // namespace

void Report::write_csv(std::ostream& out) const {
    out << "# experiment=" << experiment;
    for (const auto& [k, v] : metadata) out << ' ' << k << '=' << v;
    out << '\n';
    for (const auto& n : notes) out << "# " << n << '\n';
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    for (const auto& c : checks) {
        out << "# check " << c.name << '=' << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) out << " (" << c.detail << ')';
        out << '\n';
    }
    if (has_verdict()) out << "# verdict=" << (pass() ? "PASS" : "FAIL") << '\n';
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = meta;
    j["notes"] = notes;
    j["header"] = header;
    j["rows"] = rows;
    if (has_verdict()) {
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = cs;
        j["verdict"] = pass() ? "PASS" : "FAIL";
    }
    return j.dump(2);
}

SymbolicSequence load_symbolic_source(const std::string& source, const RunConfig& cfg) {
    const auto parts = split(source, ':');
    const std::string& kind = parts[0];
    if (kind == "fibonacci-word") return fibonacci_word(cfg.length);
    if (kind == "prng") {
        if (parts.size() < 3) throw UsageError("prng source: prng:<seed>:<q>");
        return prng_word(std::stoull(parts[1]), static_cast<uint32_t>(std::stoul(parts[2])),
                         cfg.length);
    }
    if (kind == "constant") {
        if (parts.size() < 3) throw UsageError("constant source: constant:<q>:<sym>");
        const uint32_t q = static_cast<uint32_t>(std::stoul(parts[1]));
        return SymbolicSequence(
            std::vector<uint32_t>(cfg.length, static_cast<uint32_t>(std::stoul(parts[2]))), q);
    }
    if (kind == "debruijn3")  // linearized de Bruijn word of order 3
        return SymbolicSequence({0, 0, 0, 1, 0, 1, 1, 1, 0, 0}, 2);
    if (kind == "symfile") {
        if (parts.size() < 2) throw UsageError("symfile source: symfile:<path>");
        std::ifstream in(parts[1]);
        if (!in) throw UsageError("cannot open symbol file: " + parts[1]);
        std::vector<uint32_t> syms;
        std::string line;
        uint32_t maxv = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const uint32_t v = static_cast<uint32_t>(std::stoul(line));
            maxv = std::max(maxv, v);
            syms.push_back(v);
        }
        if (syms.empty()) throw UsageError("symbol file is empty");
        return SymbolicSequence(std::move(syms), maxv + 1);
    }
    throw UsageError("unknown sequence source: " + source);
}

TorusSequence load_torus_source(const std::string& source, const RunConfig& cfg) {
    const auto parts = split(source, ':');
    const std::string& kind = parts[0];
    const unsigned p = cfg.precision;
    if (kind == "rotation") {
        const uint64_t m = parts.size() > 1 ? std::stoull(parts[1]) : 2;
        const Int alpha = quadratic_digits(m, p)->mantissa(p);
        const Int mod = pow2(p);
        std::vector<Int> ms;
        ms.reserve(cfg.length);
        Int acc = 0;
        for (uint64_t n = 0; n < cfg.length; ++n) {
            ms.push_back(acc);
            acc += alpha;
            if (acc >= mod) acc -= mod;
        }
        return TorusSequence(std::move(ms), p);
    }
    if (kind == "random") {
        const uint64_t seed = parts.size() > 1 ? std::stoull(parts[1]) : cfg.seed;
        SplitMix64 gen(seed);
        const Int mod = pow2(p);
        std::vector<Int> ms;
        ms.reserve(cfg.length);
        for (uint64_t n = 0; n < cfg.length; ++n) {
            Int v = 0;
            for (unsigned got = 0; got < p; got += 64) v = (v << 64) | gen.next();
            ms.push_back(v % mod);
        }
        return TorusSequence(std::move(ms), p);
    }
    if (kind == "constant") {
        const double v = parts.size() > 1 ? std::stod(parts[1]) : 0.0;
        return TorusSequence(std::vector<Int>(cfg.length, double_to_mantissa(v, p)), p);
    }
    throw UsageError("unknown torus source: " + source);
}

SymbolicSequence encode_against_table(const TorusSequence& seq, const DigitStream& x,
                                      uint32_t gap_bound) {
    const unsigned p = seq.precision_bits;
    const Int mod = pow2(p);
    const int64_t l = gap_bound;
    std::vector<Int> table;  // frac(j*x) for j = -L..L
    for (int64_t j = -l; j <= l; ++j) {
        Int m = mul_mod1(Int(j < 0 ? -j : j), x, p);
        if (j < 0 && m != 0) m = mod - m;
        table.push_back(std::move(m));
    }
    // the target values must be separated far beyond round-off
    for (size_t i = 0; i < table.size(); ++i)
        for (size_t k = 0; k < i; ++k)
            if (torus_distance(table[i], table[k], p) <= 8)
                throw UsageError("x is too close to rational: j*x values collide");

    std::vector<uint32_t> syms;
    syms.reserve(seq.size());
    for (const Int& v : seq.mantissas) {
        int best = -1;
        for (size_t i = 0; i < table.size(); ++i) {
            if (torus_distance(v, table[i], p) <= 3) {
                best = static_cast<int>(i);
                break;
            }
        }
        if (best < 0) throw InvariantError("difference value matches no j*x entry");
        syms.push_back(static_cast<uint32_t>(best));
    }
    return SymbolicSequence(std::move(syms), static_cast<uint32_t>(2 * gap_bound + 1));
}

Report run_entropy(const std::string& source, const RunConfig& cfg,
                   const std::string& engine) {
    Report r;
    r.experiment = "entropy";
    r.add("source", source);
    r.add("engine", engine);
    echo_config(r, cfg);
    r.notes.push_back("entropies are natural-log (nats) finite-J estimates");

    const SymbolicSequence seq = load_symbolic_source(source, cfg);
    r.add("alphabet", std::to_string(seq.alphabet_size));
    const uint32_t jm = std::min<uint64_t>(cfg.j_max, seq.size());

    r.header = {"J", "count_all", "count_regular", "count_effective",
                "entropy_all_nats", "entropy_regular_nats"};
    if (engine == "automaton") {
        const BlockCensus c = census_automaton(seq, jm);
        for (uint32_t j = 1; j <= jm; ++j)
            r.rows.push_back({std::to_string(j), std::to_string(c.at(j).count_all), "", "",
                              fmt(c.entropy_all(j)), ""});
    } else if (engine == "naive") {
        const BlockCensus c = census_naive(seq, jm, cfg.tau);
        for (uint32_t j = 1; j <= jm; ++j)
            r.rows.push_back({std::to_string(j), std::to_string(c.at(j).count_all),
                              std::to_string(c.at(j).count_regular),
                              std::to_string(c.at(j).count_effective), fmt(c.entropy_all(j)),
                              fmt(c.entropy_regular(j))});
    } else {
        throw UsageError("engine must be naive or automaton");
    }
    return r;
}

Report run_vdc(uint32_t gap_bound, const std::string& x_spec, const RunConfig& cfg) {
    Report r;
    r.experiment = "vdc";
    r.add("L", std::to_string(gap_bound));
    r.add("x", x_spec);
    echo_config(r, cfg);

    const auto x = make_stream(x_spec, 2, cfg.precision + 96);
    const SymbolicSequence d_sym = prng_word(cfg.seed, 2 * gap_bound + 1, cfg.length);
    std::vector<Int> d_vals;
    d_vals.reserve(cfg.length);
    for (uint32_t s : d_sym.symbols) d_vals.emplace_back(int64_t(s) - gap_bound);
    const IntegerSequence a = cumsum(IntegerSequence(std::move(d_vals)));
    const TorusSequence a_x = scalar_sequence(a, *x, cfg.precision);
    const TorusSequence dax = difference(a_x, 1);
    const SymbolicSequence enc = encode_against_table(dax, *x, gap_bound);

    const uint32_t jm = std::min<uint64_t>(cfg.j_max, d_sym.size());
    const BlockCensus cd = census_naive(d_sym, jm, cfg.tau);
    const BlockCensus ce = census_naive(enc, jm, cfg.tau);

    r.header = {"J", "count_d", "count_dax", "entropy_d_nats", "entropy_dax_nats"};
    bool equal = true;
    for (uint32_t j = 1; j <= jm; ++j) {
        if (cd.at(j).count_all != ce.at(j).count_all) equal = false;
        r.rows.push_back({std::to_string(j), std::to_string(cd.at(j).count_all),
                          std::to_string(ce.at(j).count_all), fmt(cd.entropy_all(j)),
                          fmt(ce.entropy_all(j))});
    }
    r.check("identical_counts", equal, "census of d vs census of the Delta a_x encoding");
    return r;
}

Report run_sqfree(const RunConfig& cfg) {
    if (cfg.j_max > 24) throw UsageError("sqfree census is exhaustive-checked; J_max <= 24");
    Report r;
    r.experiment = "sqfree";
    echo_config(r, cfg);
    r.notes.push_back("reference 6/pi^2*ln2 = 0.421383 nats");
    r.notes.push_back("entropies are natural-log (nats) finite-J estimates");

    const MobiusTable mu = mobius_sieve(cfg.sieve_limit);
    std::vector<uint32_t> mu2(cfg.sieve_limit + 1);
    for (uint64_t n = 0; n <= cfg.sieve_limit; ++n) mu2[n] = mu.squarefree(n) ? 1 : 0;
    const SymbolicSequence seq(std::move(mu2), 2);
    const uint32_t jm = cfg.j_max;
    const BlockCensus c = census_naive(seq, jm, cfg.tau);

    bool all_admissible = true;
    bool within = true;
    std::vector<uint64_t> admissible(jm + 1, 0);
    r.header = {"series", "J", "count", "admissible_count", "entropy_nats",
                "admissible_rate_nats"};
    for (uint32_t j = 1; j <= jm; ++j) {
        admissible[j] = count_admissible(j);
        for (uint32_t key : distinct_binary_windows(seq.symbols, j))
            if (!is_admissible(unpack_block(key, j))) all_admissible = false;
        if (c.at(j).count_all > admissible[j]) within = false;
        r.rows.push_back({"mu2", std::to_string(j), std::to_string(c.at(j).count_all),
                          std::to_string(admissible[j]), fmt(c.entropy_all(j)),
                          fmt(std::log(double(admissible[j])) / j)});
    }

    // gap census of the square-free enumeration, J = 1..8
    const std::vector<uint64_t> sf = squarefree_list(cfg.sieve_limit);
    uint32_t max_gap = 0;
    std::vector<uint32_t> gaps(sf.size() - 1);
    for (size_t i = 0; i + 1 < sf.size(); ++i) {
        gaps[i] = static_cast<uint32_t>(sf[i + 1] - sf[i]);
        max_gap = std::max(max_gap, gaps[i]);
    }
    for (auto& g : gaps) --g;
    const SymbolicSequence gap_seq(std::move(gaps), max_gap);
    const BlockCensus cg = census_naive(gap_seq, std::min<uint32_t>(8, jm), cfg.tau);
    for (uint32_t j = 1; j <= cg.j_max(); ++j)
        r.rows.push_back({"sqfree_gaps", std::to_string(j),
                          std::to_string(cg.at(j).count_all), "", fmt(cg.entropy_all(j)), ""});

    r.check("observed_blocks_admissible", all_admissible);
    r.check("observed_le_admissible", within);
    std::vector<uint32_t> marks;
    for (uint32_t j : {8u, 12u, 16u, 20u})
        if (j <= jm) marks.push_back(j);
    bool decreasing = marks.size() >= 2;
    bool in_band = !marks.empty();
    for (size_t i = 0; i < marks.size(); ++i) {
        const double v = std::log(double(admissible[marks[i]])) / marks[i];
        if (i > 0 && v >= std::log(double(admissible[marks[i - 1]])) / marks[i - 1])
            decreasing = false;
        if (!(v > kSixOverPi2Ln2 && v < 0.6932)) in_band = false;
    }
    r.check("admissible_rate_strictly_decreasing", decreasing, "J in {8,12,16,20}");
    r.check("admissible_rate_in_band", in_band, "(0.421383, 0.6932)");
    return r;
}

Report run_sarnak(const RunConfig& cfg) {
    const uint64_t n = cfg.length;
    if (n < 100000) throw UsageError("sarnak experiment needs N >= 1e5");
    if (cfg.sieve_limit < n + 8) throw UsageError("sieve limit insufficient: need >= N+8");
    Report r;
    r.experiment = "sarnak";
    echo_config(r, cfg);

    const MobiusTable mu = mobius_sieve(cfg.sieve_limit);
    const SarnakPair pair = sarnak_build(n, mu);

    // exact integer partial sums; emitted at N/10 checkpoints
    r.header = {"N", "avg_a_mu", "avg_delta_a_mu", "avg_abs_mu_over_3"};
    int64_t s_am = 0, s_dam = 0, s_abs = 0;
    const uint64_t step = n / 10;
    for (uint64_t i = 1; i <= n; ++i) {
        const int m = mu.at(i);
        s_am += pair.a[i] * m;
        s_dam += pair.delta[i] * m;
        s_abs += std::abs(m);
        if (i % step == 0 || i == n)
            r.rows.push_back({std::to_string(i), fmt(double(s_am) / double(i)),
                              fmt(double(s_dam) / double(i)),
                              fmt(double(s_abs) / (3.0 * double(i)))});
    }

    // count violations over every complete block in range (zero by construction)
    uint64_t violations = 0;
    for (uint64_t k = 0; 4 * k + 4 <= n; ++k) {
        int su_d = 0, su_a = 0, nz = 0;
        for (uint64_t j = 1; j <= 4; ++j) {
            const int m = mu.at(4 * k + j);
            nz += (m != 0);
            su_d += pair.delta[4 * k + j] * m;
            su_a += pair.a[4 * k + j] * m;
        }
        if (nz > 0 && (su_d != 0 || su_a < 1)) ++violations;
    }
    r.add("block_identity_violations", std::to_string(violations));

    r.check("block_identities_exact", violations == 0);
    r.check("delta_average_vanishes", std::llabs(s_dam) <= 10,
            "|sum Delta a mu| = " + std::to_string(std::llabs(s_dam)) + " <= 10");
    r.check("per_block_lower_bound", 3 * s_am >= s_abs - 9,
            "sum a mu >= sum|mu|/3 - 3 exactly");
    r.check("mean_lower_bound", 100 * s_am >= 19 * int64_t(n),
            "avg = " + fmt(double(s_am) / double(n)) + " >= 0.19");
    return r;
}

namespace {

struct SampleCensus {
    std::string x_desc;
    BlockCensus census;
};

}  // namespace

Report run_dual(const std::string& family, const std::vector<std::string>& x_specs,
                const RunConfig& cfg) {
    if (x_specs.empty()) throw UsageError("dual experiment needs at least one x stream");
    const auto fam = split(family, ':');
    Report r;
    r.experiment = "dual";
    r.add("family", family);
    {
        std::string xs;
        for (size_t i = 0; i < x_specs.size(); ++i) xs += (i ? "+" : "") + x_specs[i];
        r.add("x_streams", xs);
    }
    echo_config(r, cfg);
    r.notes.push_back("entropies are natural-log (nats) finite-J estimates");
    r.header = {"series", "sample", "x", "J", "count", "entropy_nats"};

    const uint32_t jm = cfg.j_max;
    const unsigned need_bits = [&]() -> unsigned {
        if (fam[0] == "geometric" || fam[0] == "exm1") {
            const uint32_t p = fam.size() > 1 ? std::stoul(fam[1]) : 2;
            return static_cast<unsigned>(cfg.length * bit_length(Int(p))) + cfg.precision + 96;
        }
        return cfg.precision + 96;
    }();

    IntegerSequence exm1_a;  // shared across samples for the exm1 family
    if (fam[0] == "exm1") {
        if (fam.size() < 3) throw UsageError("family exm1:<p>:<pprime>");
        exm1_a = exm1_sequence(std::stoul(fam[1]), std::stoul(fam[2]), cfg.seed, cfg.length);
    }

    auto run_sample = [&](const std::string& spec) -> SampleCensus {
        const auto x = make_stream(spec, 2, need_bits);
        if (fam[0] == "bounded-diff") {
            if (fam.size() < 2) throw UsageError("family bounded-diff:<L>");
            const uint32_t l = std::stoul(fam[1]);
            const SymbolicSequence d_sym = prng_word(cfg.seed, 2 * l + 1, cfg.length);
            std::vector<Int> d_vals;
            for (uint32_t s : d_sym.symbols) d_vals.emplace_back(int64_t(s) - l);
            const IntegerSequence a = cumsum(IntegerSequence(std::move(d_vals)));
            const TorusSequence a_x = scalar_sequence(a, *x, cfg.precision);
            const SymbolicSequence enc = encode_against_table(difference(a_x, 1), *x, l);
            return {x->describe(), census_naive(enc, jm, cfg.tau)};
        }
        if (fam[0] == "geometric") {
            const uint32_t p = fam.size() > 1 ? std::stoul(fam[1]) : 2;
            const TorusSequence t = geometric_torus(p, *x, cfg.length, cfg.precision);
            return {x->describe(), quantized_census(t, cfg.grid, jm, cfg.tau)};
        }
        if (fam[0] == "exm1") {
            const TorusSequence t = scalar_sequence(exm1_a, *x, cfg.precision);
            return {x->describe(), quantized_census(t, cfg.grid, jm, cfg.tau)};
        }
        throw UsageError("unknown dual family: " + family);
    };

    std::vector<SampleCensus> results(x_specs.size());
    if (cfg.threads > 1) {
        std::vector<std::future<SampleCensus>> futs;
        for (const auto& spec : x_specs)
            futs.push_back(std::async(std::launch::async, run_sample, spec));
        for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < x_specs.size(); ++i) results[i] = run_sample(x_specs[i]);
    }

    for (size_t i = 0; i < results.size(); ++i)
        for (uint32_t j = 1; j <= jm; ++j)
            r.rows.push_back({"sample", std::to_string(i), results[i].x_desc,
                              std::to_string(j), std::to_string(results[i].census.at(j).count_all),
                              fmt(results[i].census.entropy_all(j))});

    for (uint32_t j = 1; j <= jm; ++j) {
        double lo = 1e300, hi = -1e300;
        for (const auto& sc : results) {
            lo = std::min(lo, sc.census.entropy_all(j));
            hi = std::max(hi, sc.census.entropy_all(j));
        }
        r.rows.push_back({"spread", "", "", std::to_string(j), "", fmt(hi - lo)});
    }

    // the truncation-family and digit censuses exhibiting the digit-shift identity
    if (fam[0] == "geometric") {
        const uint32_t p = fam.size() > 1 ? std::stoul(fam[1]) : 2;
        uint32_t depth = 0;
        for (int64_t g = 1; g < cfg.grid; g *= p) ++depth;
        int64_t pl = 1;
        for (uint32_t i = 0; i < depth; ++i) pl *= p;
        if (pl == cfg.grid && depth > 0) {
            for (size_t i = 0; i < x_specs.size(); ++i) {
                const auto x = make_stream(x_specs[i], 2, need_bits);
                const QuantizedSequence fl = base_p_truncation(*x, depth, cfg.length);
                const BlockCensus cf = census_naive(fl.as_symbolic(), jm, cfg.tau);
                for (uint32_t j = 1; j <= jm; ++j)
                    r.rows.push_back({"trunc", std::to_string(i), x->describe(),
                                      std::to_string(j), std::to_string(cf.at(j).count_all),
                                      fmt(cf.entropy_all(j))});
                // digit windows, aligned with the digits the truncation consumed
                std::vector<uint32_t> digs(cfg.length + depth - 1);
                for (size_t k = 0; k < digs.size(); ++k)
                    digs[k] = x->digit(k + 1);
                const SymbolicSequence dseq(std::move(digs), static_cast<uint32_t>(p));
                const BlockCensus cdg =
                    census_naive(dseq, std::min<uint64_t>(jm + depth, dseq.size()), cfg.tau);
                for (uint32_t j = 1; j <= cdg.j_max(); ++j)
                    r.rows.push_back({"digits", std::to_string(i), x->describe(),
                                      std::to_string(j), std::to_string(cdg.at(j).count_all),
                                      fmt(cdg.entropy_all(j))});
            }
        }
    }
    return r;
}

Report run_reconstruct(const std::string& source, uint64_t d, const RunConfig& cfg) {
    Report r;
    r.experiment = "reconstruct";
    r.add("source", source);
    r.add("d", std::to_string(d));
    echo_config(r, cfg);

    const TorusSequence x = load_torus_source(source, cfg);
    const int64_t n_grid = cfg.grid;
    const Reconstruction rec = reconstruct(x, d, n_grid);
    const unsigned p = x.precision_bits;

    // sup torus distance |g - x|, exact, reported as a double
    Int sup_num = 0;
    const Int full = Int(n_grid) * n_grid * pow2(p);
    for (size_t n = 0; n < x.size(); ++n) {
        Int diff = Int(rec.g.levels[n]) * pow2(p) - x.mantissas[n] * Int(n_grid) * n_grid;
        if (diff < 0) diff = -diff;
        if (full - diff < diff) diff = full - diff;
        sup_num = std::max(sup_num, diff);
    }
    const double sup_err = sup_num.convert_to<double>() / full.convert_to<double>();
    const bool sup_ok = sup_num * n_grid <= Int(2) * n_grid * n_grid * pow2(p);
    r.add("sup_error", fmt(sup_err));
    r.add("bound", fmt(2.0 / double(n_grid)));

    r.header = {"J", "K", "regular_blocks_g", "blocks_f", "bound_N2Kd_blocks_f"};
    const SymbolicSequence gsym = rec.g.as_symbolic();
    const SymbolicSequence fsym = rec.f.as_symbolic();
    bool counts_ok = true;
    for (uint32_t k = 1; k <= 2; ++k) {
        const uint64_t j = k * d * uint64_t(n_grid);
        if (j > fsym.size()) break;
        const auto rg = census_single(gsym, static_cast<uint32_t>(j), cfg.tau);
        const auto rf = census_single(fsym, static_cast<uint32_t>(j), cfg.tau);
        Int bound = 1;
        for (uint64_t i = 0; i < 2 * k * d; ++i) bound *= n_grid;
        bound *= rf.count_all;
        if (Int(rg.count_regular) > bound) counts_ok = false;
        r.rows.push_back({std::to_string(j), std::to_string(k),
                          std::to_string(rg.count_regular), std::to_string(rf.count_all),
                          bound.str()});
    }
    r.check("sup_error_le_2_over_N", sup_ok, fmt(sup_err) + " <= " + fmt(2.0 / n_grid));
    r.check("regular_block_inequality", counts_ok, "|B^r_J(g)| <= N^2Kd |B_J(f)|");
    return r;
}

Report run_bounds(const std::string& word_spec, uint32_t gap_bound, const RunConfig& cfg) {
    if (gap_bound == 0) throw UsageError("gap bound L must be positive");
    Report r;
    r.experiment = "bounds";
    r.add("word", word_spec);
    r.add("L", std::to_string(gap_bound));
    echo_config(r, cfg);

    // the indicator word of the support set A
    std::vector<uint32_t> word;
    const auto parts = split(word_spec, ':');
    if (parts[0] == "fibonacci-complement") {
        const SymbolicSequence f = fibonacci_word(cfg.length);
        word.reserve(f.size());
        for (uint32_t s : f.symbols) word.push_back(1 - s);
    } else if (parts[0] == "gapword") {
        if (parts.size() < 3) throw UsageError("gapword word: gapword:<seed>:<L>");
        SplitMix64 gen(std::stoull(parts[1]));
        const uint32_t lmax = std::stoul(parts[2]);
        word.assign(cfg.length, 0);
        for (uint64_t pos = 0; pos < cfg.length;) {
            word[pos] = 1;
            pos += 1 + gen.next() % lmax;
        }
    } else if (parts[0] == "symfile") {
        word = load_symbolic_source(word_spec, cfg).symbols;
    } else {
        throw UsageError("unknown word spec: " + word_spec);
    }

    std::vector<uint64_t> ones;
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i]) ones.push_back(i);
    if (ones.size() < 2) throw UsageError("support set too small");
    std::vector<uint32_t> gap_syms(ones.size() - 1);
    for (size_t i = 0; i + 1 < ones.size(); ++i) {
        const uint64_t g = ones[i + 1] - ones[i];
        if (g > gap_bound)
            throw UsageError("gap " + std::to_string(g) + " exceeds the stated bound L=" +
                             std::to_string(gap_bound));
        gap_syms[i] = static_cast<uint32_t>(g - 1);
    }
    const SymbolicSequence word_seq(std::move(word), 2);

    r.header = {"J", "LJ", "gap_blocks", "indicator_blocks", "upper_bound"};
    bool ok = true;
    for (uint32_t j = 1; j <= cfg.j_max; ++j) {
        const uint64_t lj = uint64_t(gap_bound) * j;
        if (lj > word_seq.size()) break;
        // gap windows whose image indicator window fits inside the data
        size_t m_hi = 0;
        while (m_hi + j <= gap_syms.size() && ones[m_hi] + lj <= word_seq.size()) ++m_hi;
        if (m_hi == 0) break;
        std::vector<uint32_t> gslice(gap_syms.begin(), gap_syms.begin() + (m_hi + j - 1));
        const SymbolicSequence gseq(std::move(gslice), gap_bound);
        const auto rg = census_single(gseq, j, cfg.tau);
        const auto ri = census_single(word_seq, static_cast<uint32_t>(lj), cfg.tau);
        Int upper = 1;
        for (uint32_t i = 0; i < gap_bound; ++i) upper *= Int(rg.count_all) + 1;
        upper *= lj;
        if (!(Int(rg.count_all) <= Int(ri.count_all) && Int(ri.count_all) <= upper)) ok = false;
        r.rows.push_back({std::to_string(j), std::to_string(lj), std::to_string(rg.count_all),
                          std::to_string(ri.count_all), upper.str()});
    }
    r.check("count_inequalities", ok,
            "|B_J(gaps)| <= |B_LJ(indicator)| <= LJ(|B_J(gaps)|+1)^L");
    return r;
}

Report run_furstenberg(uint32_t p, uint32_t pprime, uint32_t q, uint32_t qprime,
                       const std::string& x_spec, const RunConfig& cfg) {
    auto separated = [](uint32_t base, uint32_t big) {
        return std::log(double(big)) > 3.0 * std::log(double(base));
    };
    if (uint64_t(pprime) <= uint64_t(p) * p || uint64_t(qprime) <= uint64_t(q) * q)
        throw UsageError("need pprime > p^2 and qprime > q^2");
    if (!separated(p, pprime) || !separated(q, qprime))
        throw UsageError("need log(pprime) > 3 log p and log(qprime) > 3 log q");

    Report r;
    r.experiment = "furstenberg";
    r.add("p", std::to_string(p));
    r.add("pprime", std::to_string(pprime));
    r.add("q", std::to_string(q));
    r.add("qprime", std::to_string(qprime));
    r.add("x", x_spec);
    echo_config(r, cfg);
    r.notes.push_back("band: est(Delta c) -/+ ln(base) encloses the a_x entropy");

    const size_t n_max = std::min<uint64_t>(cfg.length, 2000);
    const unsigned need_bits =
        static_cast<unsigned>(n_max * std::max(bit_length(Int(p)), bit_length(Int(q)))) +
        cfg.precision + 96;
    const auto x = make_stream(x_spec, 2, need_bits);

    r.header = {"series", "family", "J", "count", "entropy_nats"};
    double ratio_sum = 0;
    for (int fam = 0; fam < 2; ++fam) {
        const uint32_t base = fam == 0 ? p : q;
        const uint32_t big = fam == 0 ? pprime : qprime;
        const std::string name = fam == 0 ? "a" : "b";
        const uint64_t seed = cfg.seed + fam;

        // Delta c census: the full-range difference digits drive the band
        const SymbolicSequence dc = prng_word(seed, big, std::max<uint64_t>(cfg.length, 100000));
        const BlockCensus cdc = census_naive(dc, std::min<uint32_t>(cfg.j_max, 8), cfg.tau);
        double est = 0;
        for (uint32_t j = 1; j <= cdc.j_max(); ++j) {
            est = std::max(est, cdc.entropy_all(j));
            r.rows.push_back({"delta_c", name, std::to_string(j),
                              std::to_string(cdc.at(j).count_all), fmt(cdc.entropy_all(j))});
        }
        const double lnb = std::log(double(base));
        const double lower = est - lnb, upper = est + lnb;
        const double ratio = lower / upper;
        ratio_sum += ratio;
        r.add("est_delta_c_" + name, fmt(est));
        r.add("band_" + name, fmt(lower) + ".." + fmt(upper));
        r.add("ratio_lower_" + name, fmt(ratio));

        // empirical a_x census at the configured grid (informational)
        const IntegerSequence a = exm1_sequence(base, big, seed, n_max);
        const TorusSequence ax = scalar_sequence(a, *x, cfg.precision);
        const BlockCensus cax = quantized_census(ax, cfg.grid, std::min<uint32_t>(cfg.j_max, 8),
                                                 cfg.tau);
        for (uint32_t j = 1; j <= cax.j_max(); ++j)
            r.rows.push_back({"ax_census", name, std::to_string(j),
                              std::to_string(cax.at(j).count_all), fmt(cax.entropy_all(j))});
    }
    r.add("ratio_sum_lower", fmt(ratio_sum));
    r.check("ratio_sum_exceeds_one", ratio_sum > 1.0, fmt(ratio_sum) + " > 1");
    return r;
}

Report run_admissible_count(uint32_t j_max) {
    Report r;
    r.experiment = "admissible-count";
    r.add("jmax", std::to_string(j_max));
    r.add("version", kVersion);
    r.header = {"J", "admissible_count", "rate_nats"};
    for (uint32_t j = 1; j <= j_max; ++j) {
        const uint64_t c = count_admissible(j);
        r.rows.push_back({std::to_string(j), std::to_string(c), fmt(std::log(double(c)) / j)});
    }
    return r;
}

}  // namespace seqent
