// Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//
// Run `acceptance` for the whole suite or `acceptance <k>` for one
// criterion; `--cli <path>` names the command-line binary used by the
// determinism checks.  Exit code is the number of failing criteria.
//
// Criterion 4 carries a strict digit-window identity at L+J which measures
// as an off-by-one on every aperiodic stream (a J-block of the truncation
// family determines exactly L+J-1 digits, and the censuses confirm it).
// The check is reported exactly as stated, alongside the measured L+J-1
// identity, so its FAIL line is expected and documented in the README.

#include "seqent/experiments.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace seqent;

namespace {

std::string g_cli_path;

struct Outcome {
    bool pass;
    std::string detail;
};

RunConfig base_cfg() {
    RunConfig cfg;
    cfg.timestamp = false;
    return cfg;
}

// ---- 1. engine oracle on 100 fixed-seed sequences plus the Fibonacci word
Outcome c1() {
    SplitMix64 gen(42);
    uint64_t checked = 0;
    for (int i = 0; i < 100; ++i) {
        const uint32_t q = 2 + static_cast<uint32_t>(gen.next() % 15);   // 2..16
        const size_t n = 1000u << (gen.next() % 7);                      // 1e3..64e3
        auto seq = prng_word(gen.next(), q, n);
        const uint32_t jm = 20;
        auto cn = census_naive(seq, jm, 2);
        auto ca = census_automaton(seq, jm);
        for (uint32_t j = 1; j <= jm; ++j, ++checked)
            if (cn.at(j).count_all != ca.at(j).count_all)
                return {false, "mismatch at q=" + std::to_string(q) + " n=" +
                                   std::to_string(n) + " J=" + std::to_string(j)};
    }
    auto fib = fibonacci_word(100000);
    auto cn = census_naive(fib, 20, 2);
    auto ca = census_automaton(fib, 20);
    for (uint32_t j = 1; j <= 20; ++j, ++checked)
        if (cn.at(j).count_all != ca.at(j).count_all)
            return {false, "mismatch on the Fibonacci word at J=" + std::to_string(j)};
    return {true, std::to_string(checked) + " (sequence, J) pairs, exact agreement"};
}

// ---- 2. factor-complexity oracle on the Fibonacci word
Outcome c2() {
    auto fib = fibonacci_word(100000);
    auto c = census_automaton(fib, 50);
    auto spot = census_naive(fib, 50, 2);
    for (uint32_t j = 1; j <= 50; ++j) {
        if (c.at(j).count_all != j + 1)
            return {false, "count_all(" + std::to_string(j) + ") = " +
                               std::to_string(c.at(j).count_all) + ", expected " +
                               std::to_string(j + 1)};
        if (spot.at(j).count_all != j + 1)
            return {false, "naive engine disagrees at J=" + std::to_string(j)};
    }
    return {true, "count_all(J) = J+1 for all J <= 50"};
}

// ---- 3. vdc bijection at L in {1,2,3}, length 1e6
Outcome c3() {
    for (uint32_t l : {1u, 2u, 3u}) {
        RunConfig cfg = base_cfg();
        cfg.length = 1000000;
        cfg.j_max = 12;
        auto r = run_vdc(l, "quadratic:2", cfg);
        if (!r.pass()) return {false, "vdc verdict FAIL at L=" + std::to_string(l)};
        for (const auto& row : r.rows)
            if (row[1] != row[2])
                return {false, "count mismatch at L=" + std::to_string(l) + " J=" + row[0]};
    }
    return {true, "identical per-J counts for L=1,2,3 at length 1e6"};
}

// ---- 4. digit identity as stated, plus the measured form and the ln 2 clause
Outcome c4() {
    const uint32_t depth = 8;
    const size_t n_max = 100000;
    bool stated_ok = true, measured_ok = true;
    std::string first_gap;

    for (const std::string spec : {std::string("fibonacci"), std::string("prng:1")}) {
        auto x = make_stream(spec, 2, 0);
        auto fl = base_p_truncation(*x, depth, n_max);
        auto cf = census_naive(fl.as_symbolic(), 12, 2);

        std::vector<uint32_t> full(n_max + depth);      // stream prefix, digit 0 included
        for (size_t k = 0; k < full.size(); ++k) full[k] = x->digit(k);
        std::vector<uint32_t> consumed(full.begin() + 1, full.end());  // digits 1..n_max+L-1
        auto c_full = census_naive(SymbolicSequence(std::move(full), 2), 12 + depth, 2);
        auto c_used = census_naive(SymbolicSequence(std::move(consumed), 2), 12 + depth - 1, 2);

        for (uint32_t j = 1; j <= 12; ++j) {
            const uint64_t lhs = cf.at(j).count_all;
            const uint64_t stated = c_full.at(j + depth).count_all;
            const uint64_t measured = c_used.at(j + depth - 1).count_all;
            if (lhs != stated) {
                stated_ok = false;
                if (first_gap.empty())
                    first_gap = spec + " J=" + std::to_string(j) + ": |B_J(f_L)|=" +
                                std::to_string(lhs) + " vs |B_(L+J)|=" + std::to_string(stated);
            }
            if (lhs != measured) measured_ok = false;
        }
    }

    RunConfig cfg = base_cfg();
    cfg.length = 100000;
    cfg.j_max = 10;
    cfg.grid = 2;
    auto r = run_dual("geometric:2", {"prng:1"}, cfg);
    bool ln2_ok = false;
    for (const auto& row : r.rows)
        if (row[0] == "sample" && row[3] == "10")
            ln2_ok = std::abs(std::stod(row[5]) - std::log(2.0)) < 1e-6;

    std::printf("    4a stated identity |B_J(f_L)| = |B_(L+J)(digits)|: %s (%s)\n",
                stated_ok ? "PASS" : "FAIL", stated_ok ? "-" : first_gap.c_str());
    std::printf("    4b measured identity |B_J(f_L)| = |B_(L+J-1)(digits)|: %s\n",
                measured_ok ? "PASS" : "FAIL");
    std::printf("    4c entropy(10) of the quantized doubling sequence = ln 2 +- 1e-6: %s\n",
                ln2_ok ? "PASS" : "FAIL");
    return {stated_ok && ln2_ok,
            measured_ok ? "window identity measured at L+J-1, not L+J" : "identity broken"};
}

// ---- 5. reconstruction bounds over (d,N) in {1,3}x{5,10,20}
Outcome c5() {
    for (const std::string src : {std::string("rotation:2"), std::string("random:7")}) {
        for (uint64_t d : {1ull, 3ull}) {
            for (int64_t n : {5ll, 10ll, 20ll}) {
                RunConfig cfg = base_cfg();
                cfg.length = 10000;
                cfg.grid = n;
                auto r = run_reconstruct(src, d, cfg);
                if (!r.pass())
                    return {false, src + " d=" + std::to_string(d) + " N=" + std::to_string(n)};
            }
        }
    }
    return {true, "sup error <= 2/N and regular-block inequality, all 12 cases"};
}

// ---- 6. square-free suite at sieve 1e7
Outcome c6() {
    if (count_admissible(3) != 8 || count_admissible(4) != 15 || count_admissible(8) != 175)
        return {false, "exact admissible counts C(3)/C(4)/C(8) off"};
    RunConfig cfg = base_cfg();
    cfg.sieve_limit = 10000000;
    cfg.j_max = 20;
    auto r = run_sqfree(cfg);
    bool has_ref = false;
    for (const auto& n : r.notes) has_ref = has_ref || n.find("0.421383") != std::string::npos;
    if (!has_ref) return {false, "reference value line missing"};
    for (const auto& c : r.checks)
        if (!c.pass) return {false, "check failed: " + c.name};
    return {true, "admissibility, counts, and the decreasing rate on {8,12,16,20}"};
}

// ---- 7. counterexample partial sums at N = 4e6
Outcome c7() {
    RunConfig cfg = base_cfg();
    cfg.length = 4000000;
    cfg.sieve_limit = 10000000;
    auto r = run_sarnak(cfg);
    for (const auto& c : r.checks)
        if (!c.pass) return {false, "check failed: " + c.name + " " + c.detail};
    return {true, "identities exact, |avg Delta a mu| <= 10/N, avg a mu >= 0.19"};
}

// ---- 8. count inequalities on the Fibonacci support and 10 random sets
Outcome c8() {
    RunConfig cfg = base_cfg();
    cfg.length = 100000;
    cfg.j_max = 10;
    auto r = run_bounds("fibonacci-complement", 2, cfg);
    if (!r.pass()) return {false, "fibonacci support set"};
    for (uint64_t seed = 101; seed <= 110; ++seed) {
        const uint32_t l = 2 + seed % 2;
        auto rr = run_bounds("gapword:" + std::to_string(seed) + ":" + std::to_string(l),
                             l, cfg);
        if (!rr.pass()) return {false, "gapword seed " + std::to_string(seed)};
    }
    return {true, "exact inequalities on 11 support sets, J <= 10"};
}

// ---- 9. gap-block constructor on 20 random interval lists
Outcome c9() {
    auto x = quadratic_digits(2, 320);
    const Int xm = x->mantissa(320);
    SplitMix64 gen(2024);
    for (int rep = 0; rep < 20; ++rep) {
        const size_t len = 1 + gen.next() % 8;
        std::vector<std::pair<double, double>> intervals;
        for (size_t i = 0; i < len; ++i) {
            const double w = 0.05 + (gen.next() % 1000) / 4000.0;  // widths in [0.05, 0.3)
            const double y = (gen.next() % 1000) / 1000.0 * (1.0 - w);
            intervals.push_back({y, y + w});
        }
        GapBlock gb;
        try {
            gb = gap_block_construct(*x, intervals, 200000, 320);
        } catch (const std::exception& e) {
            return {false, "rep " + std::to_string(rep) + ": " + e.what()};
        }
        if (!is_admissible(gb.support_block()))
            return {false, "rep " + std::to_string(rep) + ": block not admissible"};
        for (size_t j = 0; j < intervals.size(); ++j) {
            Int frac = (gb.gaps[j] * xm) % pow2(320);
            if (compare_fixed_to_double(frac, 320, intervals[j].first) <= 0 ||
                compare_fixed_to_double(frac, 320, intervals[j].second) >= 0)
                return {false, "rep " + std::to_string(rep) + ": membership violated"};
        }
    }
    return {true, "20 interval lists: admissible blocks, all memberships hold"};
}

// ---- 10. byte-identical reruns and thread invariance via the CLI
Outcome c10() {
    if (g_cli_path.empty()) return {false, "no --cli path given"};
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "seqent_accept";
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto run = [&](const std::string& args, const fs::path& out) {
        const std::string cmd = g_cli_path + " " + args + " --no-timestamp --out " +
                                out.string();
        return std::system(cmd.c_str()) == 0;
    };

    const std::string vdc = "vdc -L 2 --length 200000 --jmax 10";
    if (!run(vdc, dir / "v1") || !run(vdc, dir / "v2")) return {false, "vdc rerun failed"};
    if (slurp(dir / "v1") != slurp(dir / "v2")) return {false, "vdc outputs differ"};

    const std::string sq = "sqfree --limit 1000000 --jmax 16";
    if (!run(sq, dir / "s1") || !run(sq, dir / "s2")) return {false, "sqfree rerun failed"};
    if (slurp(dir / "s1") != slurp(dir / "s2")) return {false, "sqfree outputs differ"};

    const std::string dual = "dual --family bounded-diff:2 --length 20000 --jmax 8";
    if (!run(dual + " --threads 1", dir / "d1") || !run(dual + " --threads 4", dir / "d2"))
        return {false, "dual rerun failed"};
    std::string d1 = slurp(dir / "d1"), d2 = slurp(dir / "d2");
    // the echoed thread count is the only permitted difference
    auto scrub = [](std::string s) {
        const auto pos = s.find("threads=");
        if (pos != std::string::npos) s.erase(pos, s.find(' ', pos) - pos);
        return s;
    };
    if (scrub(d1) != scrub(d2)) return {false, "threaded dual outputs differ"};
    return {true, "byte-identical reruns; thread-count invariant rows"};
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            g_cli_path = argv[++i];
        else
            which = std::atoi(a.c_str());
    }

    using Fn = Outcome (*)();
    const std::pair<const char*, Fn> suite[] = {
        {"engine oracle", c1},
        {"factor complexity", c2},
        {"difference bijection", c3},
        {"digit identity", c4},
        {"reconstruction", c5},
        {"square-free suite", c6},
        {"counterexample sums", c7},
        {"count inequalities", c8},
        {"gap-block constructor", c9},
        {"determinism", c10},
    };

    int fails = 0;
    for (int k = 1; k <= 10; ++k) {
        if (which != 0 && which != k) continue;
        const auto& [name, fn] = suite[k - 1];
        Outcome o = fn();
        std::printf("criterion %d (%s): %s — %s\n", k, name, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++fails;
    }
    return fails;
}
