// seqent: block-entropy censuses and sequence experiments.
//
// Subcommands wire deterministic generators through the sequence operators
// and block censuses into named experiments with CSV (or JSON) output.
// Verdict-bearing commands exit 0 on PASS, 1 on FAIL, 2 on usage errors.

#include "seqent/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace seqent;

namespace {

struct CliOptions {
    RunConfig cfg;
    std::string out;
    std::string config_path;
    bool json = false;
    bool no_timestamp = false;
};

void add_shared(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--seed", o.cfg.seed, "PRNG seed");
    cmd->add_option("--length", o.cfg.length, "sequence length / partial-sum limit N");
    cmd->add_option("--jmax", o.cfg.j_max, "largest block length J");
    cmd->add_option("--grid", o.cfg.grid, "quantization grid N");
    cmd->add_option("--precision", o.cfg.precision, "fixed-point precision P in bits");
    cmd->add_option("--limit", o.cfg.sieve_limit, "sieve limit");
    cmd->add_option("--tau", o.cfg.tau, "effective-block occurrence threshold");
    cmd->add_option("--threads", o.cfg.threads, "worker threads for independent samples");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_flag("--json", o.json, "emit JSON instead of CSV");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp metadata field");
    cmd->add_option("--config", o.config_path,
                    "plain `key = value` file; command-line flags override it");
}

// plain `key = value` lines; '#' starts a comment
std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

// config supplies a value only where the command line did not
template <typename T>
void apply_config(const std::map<std::string, std::string>& kv, CLI::App* cmd,
                  const std::string& key, T& var) {
    const auto it = kv.find(key);
    if (it == kv.end()) return;
    if (cmd->count("--" + key) > 0) return;
    std::istringstream ss(it->second);
    T v{};
    if (!(ss >> v)) throw UsageError("bad config value for " + key + ": " + it->second);
    var = v;
}

int emit(const Report& r, const CliOptions& o) {
    if (o.out.empty()) {
        if (o.json)
            std::cout << r.to_json() << '\n';
        else
            r.write_csv(std::cout);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw UsageError("cannot open output file: " + o.out);
        if (o.json)
            f << r.to_json() << '\n';
        else
            r.write_csv(f);
    }
    if (r.has_verdict() && !r.pass()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-entropy censuses and sequence experiments"};
    app.require_subcommand(1);

    CliOptions o;

    std::string source = "fibonacci-word";
    std::string engine = "naive";
    std::string x_spec = "quadratic:2";
    std::string family = "bounded-diff:2";
    std::vector<std::string> x_streams;
    std::string word_spec = "fibonacci-complement";
    uint32_t gap_bound = 2;
    uint64_t diff_step = 1;
    uint32_t fp = 2, fpp = 11, fq = 3, fqp = 29;

    auto* c_entropy = app.add_subcommand("entropy", "block census and entropy curve");
    c_entropy->add_option("--source", source, "fibonacci-word | prng:<seed>:<q> | "
                                              "constant:<q>:<sym> | debruijn3 | symfile:<path>");
    c_entropy->add_option("--engine", engine, "naive | automaton");
    add_shared(c_entropy, o);

    auto* c_vdc = app.add_subcommand("vdc", "difference sequence entropy pipeline check");
    c_vdc->add_option("-L,--gap-bound", gap_bound, "difference alphabet is {-L..L}");
    c_vdc->add_option("--x", x_spec, "irrational x digit stream");
    add_shared(c_vdc, o);

    auto* c_sqfree = app.add_subcommand("sqfree", "square-free census vs admissible counts");
    add_shared(c_sqfree, o);

    auto* c_sarnak = app.add_subcommand("sarnak", "counterexample pair partial sums");
    add_shared(c_sarnak, o);

    auto* c_dual = app.add_subcommand("dual", "dual entropy estimation over sampled x");
    c_dual->add_option("--family", family, "bounded-diff:<L> | geometric:<p> | exm1:<p>:<p'>");
    c_dual->add_option("--x-streams", x_streams, "x stream specs (repeatable)");
    add_shared(c_dual, o);

    auto* c_rec = app.add_subcommand("reconstruct", "difference / quantize / rebuild bounds");
    c_rec->add_option("--source", source, "rotation:<m> | random:<seed> | constant:<v>");
    c_rec->add_option("-d,--step", diff_step, "difference step d");
    add_shared(c_rec, o);

    auto* c_bounds = app.add_subcommand("bounds", "gap vs indicator census inequalities");
    c_bounds->add_option("--word", word_spec,
                         "fibonacci-complement | gapword:<seed>:<L> | symfile:<path>");
    c_bounds->add_option("-L,--gap-bound", gap_bound, "gap bound L");
    add_shared(c_bounds, o);

    auto* c_furst = app.add_subcommand("furstenberg", "entropy-band ratio sum");
    c_furst->add_option("-p", fp, "first base p");
    c_furst->add_option("--pprime", fpp, "first difference range p'");
    c_furst->add_option("-q", fq, "second base q");
    c_furst->add_option("--qprime", fqp, "second difference range q'");
    c_furst->add_option("--x", x_spec, "irrational x digit stream");
    add_shared(c_furst, o);

    auto* c_adm = app.add_subcommand("admissible-count", "exact admissible block counts");
    add_shared(c_adm, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    CLI::App* cmd = app.get_subcommands().front();

    try {
        // per-command defaults where they differ from the shared ones
        if (c_vdc->parsed()) {
            if (!c_vdc->count("--length")) o.cfg.length = 1000000;
            if (!c_vdc->count("--jmax")) o.cfg.j_max = 12;
        } else if (c_sarnak->parsed()) {
            if (!c_sarnak->count("--length")) o.cfg.length = 4000000;
        } else if (c_rec->parsed()) {
            if (!c_rec->count("--source")) source = "rotation:2";
            if (!c_rec->count("--length")) o.cfg.length = 10000;
            if (!c_rec->count("--grid")) o.cfg.grid = 10;
        } else if (c_bounds->parsed()) {
            if (!c_bounds->count("--jmax")) o.cfg.j_max = 10;
        } else if (c_furst->parsed()) {
            if (!c_furst->count("--length")) o.cfg.length = 2000;
        }

        if (!o.config_path.empty()) {
            const auto kv = load_config(o.config_path);
            apply_config(kv, cmd, "seed", o.cfg.seed);
            apply_config(kv, cmd, "length", o.cfg.length);
            apply_config(kv, cmd, "jmax", o.cfg.j_max);
            apply_config(kv, cmd, "grid", o.cfg.grid);
            apply_config(kv, cmd, "precision", o.cfg.precision);
            apply_config(kv, cmd, "limit", o.cfg.sieve_limit);
            apply_config(kv, cmd, "tau", o.cfg.tau);
            apply_config(kv, cmd, "threads", o.cfg.threads);
            apply_config(kv, cmd, "out", o.out);
            apply_config(kv, cmd, "source", source);
            apply_config(kv, cmd, "engine", engine);
            apply_config(kv, cmd, "x", x_spec);
            apply_config(kv, cmd, "family", family);
            apply_config(kv, cmd, "word", word_spec);
            apply_config(kv, cmd, "gap-bound", gap_bound);
            apply_config(kv, cmd, "step", diff_step);
            apply_config(kv, cmd, "p", fp);
            apply_config(kv, cmd, "pprime", fpp);
            apply_config(kv, cmd, "q", fq);
            apply_config(kv, cmd, "qprime", fqp);
            if (kv.count("x-streams") && x_streams.empty()) {
                std::stringstream ss(kv.at("x-streams"));
                std::string item;
                while (std::getline(ss, item, ',')) x_streams.push_back(item);
            }
        }
        o.cfg.timestamp = !o.no_timestamp;

        Report r;
        if (c_entropy->parsed()) {
            r = run_entropy(source, o.cfg, engine);
        } else if (c_vdc->parsed()) {
            r = run_vdc(gap_bound, x_spec, o.cfg);
        } else if (c_sqfree->parsed()) {
            r = run_sqfree(o.cfg);
        } else if (c_sarnak->parsed()) {
            r = run_sarnak(o.cfg);
        } else if (c_dual->parsed()) {
            if (x_streams.empty())
                x_streams = {"quadratic:2", "quadratic:3", "quadratic:5", "quadratic:6",
                             "quadratic:7"};
            r = run_dual(family, x_streams, o.cfg);
        } else if (c_rec->parsed()) {
            r = run_reconstruct(source, diff_step, o.cfg);
        } else if (c_bounds->parsed()) {
            r = run_bounds(word_spec, gap_bound, o.cfg);
        } else if (c_furst->parsed()) {
            r = run_furstenberg(fp, fpp, fq, fqp, x_spec, o.cfg);
        } else if (c_adm->parsed()) {
            r = run_admissible_count(std::min<uint32_t>(o.cfg.j_max, 24));
        }
        return emit(r, o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
