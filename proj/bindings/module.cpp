#include "seqent/experiments.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace seqent;

namespace {

std::vector<py::dict> census_py(const std::vector<uint32_t>& symbols, uint32_t q,
                                uint32_t j_max, uint32_t tau, const std::string& engine) {
    const SymbolicSequence seq(symbols, q);
    const BlockCensus c = engine == "automaton" ? census_automaton(seq, j_max)
                                                : census_naive(seq, j_max, tau);
    std::vector<py::dict> out;
    for (uint32_t j = 1; j <= c.j_max(); ++j) {
        py::dict d;
        d["J"] = j;
        d["count_all"] = c.at(j).count_all;
        d["entropy_all"] = c.entropy_all(j);
        if (!c.all_only) {
            d["count_regular"] = c.at(j).count_regular;
            d["count_effective"] = c.at(j).count_effective;
            d["entropy_regular"] = c.entropy_regular(j);
        }
        out.push_back(std::move(d));
    }
    return out;
}

RunConfig config_from_kwargs(const py::dict& opts) {
    RunConfig cfg;
    cfg.timestamp = false;
    if (opts.contains("seed")) cfg.seed = opts["seed"].cast<uint64_t>();
    if (opts.contains("length")) cfg.length = opts["length"].cast<uint64_t>();
    if (opts.contains("jmax")) cfg.j_max = opts["jmax"].cast<uint32_t>();
    if (opts.contains("grid")) cfg.grid = opts["grid"].cast<int64_t>();
    if (opts.contains("precision")) cfg.precision = opts["precision"].cast<unsigned>();
    if (opts.contains("limit")) cfg.sieve_limit = opts["limit"].cast<uint64_t>();
    if (opts.contains("tau")) cfg.tau = opts["tau"].cast<uint32_t>();
    if (opts.contains("threads")) cfg.threads = opts["threads"].cast<unsigned>();
    return cfg;
}

std::string run_py(const std::string& experiment, const py::dict& opts) {
    const RunConfig cfg = config_from_kwargs(opts);
    auto str = [&](const char* key, const std::string& dflt) {
        return opts.contains(key) ? opts[key].cast<std::string>() : dflt;
    };
    Report r;
    if (experiment == "entropy")
        r = run_entropy(str("source", "fibonacci-word"), cfg, str("engine", "naive"));
    else if (experiment == "vdc")
        r = run_vdc(opts.contains("L") ? opts["L"].cast<uint32_t>() : 2,
                    str("x", "quadratic:2"), cfg);
    else if (experiment == "sqfree")
        r = run_sqfree(cfg);
    else if (experiment == "sarnak")
        r = run_sarnak(cfg);
    else if (experiment == "dual")
        r = run_dual(str("family", "bounded-diff:2"),
                     opts.contains("x_streams")
                         ? opts["x_streams"].cast<std::vector<std::string>>()
                         : std::vector<std::string>{"quadratic:2", "quadratic:3"},
                     cfg);
    else if (experiment == "reconstruct")
        r = run_reconstruct(str("source", "rotation:2"),
                            opts.contains("d") ? opts["d"].cast<uint64_t>() : 1, cfg);
    else if (experiment == "bounds")
        r = run_bounds(str("word", "fibonacci-complement"),
                       opts.contains("L") ? opts["L"].cast<uint32_t>() : 2, cfg);
    else if (experiment == "furstenberg")
        r = run_furstenberg(opts.contains("p") ? opts["p"].cast<uint32_t>() : 2,
                            opts.contains("pprime") ? opts["pprime"].cast<uint32_t>() : 11,
                            opts.contains("q") ? opts["q"].cast<uint32_t>() : 3,
                            opts.contains("qprime") ? opts["qprime"].cast<uint32_t>() : 29,
                            str("x", "quadratic:2"), cfg);
    else if (experiment == "admissible-count")
        r = run_admissible_count(std::min<uint32_t>(cfg.j_max, 24));
    else
        throw UsageError("unknown experiment: " + experiment);
    return r.to_json();
}

}  // namespace

PYBIND11_MODULE(_seqent, m) {
    m.doc() = "block-entropy censuses and sequence experiments";

    py::register_exception<UsageError>(m, "SeqentUsageError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "SeqentBudgetError", PyExc_RuntimeError);

    m.def("fibonacci_word",
          [](size_t n) { return fibonacci_word(n).symbols; },
          py::arg("n"), "prefix of the fixed point of 0->01, 1->0");

    m.def("prng_digits",
          [](uint64_t seed, uint32_t base, size_t n) {
              auto s = prng_stream(seed, base);
              std::vector<uint32_t> out(n);
              for (size_t i = 0; i < n; ++i) out[i] = s->digit(i);
              return out;
          },
          py::arg("seed"), py::arg("base"), py::arg("n"),
          "SplitMix64 digit stream reduced mod base");

    m.def("quadratic_digits",
          [](uint64_t msq, unsigned bits, size_t n) {
              auto s = quadratic_digits(msq, bits);
              std::vector<uint32_t> out(n);
              for (size_t i = 0; i < n; ++i) out[i] = s->digit(i);
              return out;
          },
          py::arg("m"), py::arg("bits"), py::arg("n"),
          "binary digits of frac(sqrt(m))");

    m.def("census", &census_py, py::arg("symbols"), py::arg("alphabet_size"),
          py::arg("j_max"), py::arg("tau") = 2, py::arg("engine") = "naive",
          "distinct-block counts and entropies per window length");

    m.def("mobius",
          [](uint64_t limit) {
              auto t = mobius_sieve(limit);
              return std::vector<int>(t.mu.begin(), t.mu.end());
          },
          py::arg("limit"), "sieved Mobius values on [0, limit]");

    m.def("squarefree", &squarefree_list, py::arg("limit"));

    m.def("is_admissible",
          [](const std::vector<int>& block) {
              std::vector<uint8_t> b(block.begin(), block.end());
              return is_admissible(b);
          },
          py::arg("block"));

    m.def("count_admissible", &count_admissible, py::arg("j"));

    m.def("gap_block",
          [](const std::string& x_spec, const std::vector<std::pair<double, double>>& ivs,
             uint64_t max_scan, unsigned precision) {
              auto x = make_stream(x_spec, 2, precision);
              return gap_block_construct(*x, ivs, max_scan, precision).gaps;
          },
          py::arg("x_spec"), py::arg("intervals"), py::arg("max_scan") = 100000,
          py::arg("precision") = 256,
          "gap list of an admissible block with frac(d_j x) inside interval j");

    m.def("quantize_values",
          [](const std::vector<double>& values, int64_t grid, unsigned precision) {
              std::vector<Int> ms;
              for (double v : values) {
                  if (!(v >= 0.0 && v < 1.0)) throw UsageError("values must lie in [0,1)");
                  int e = 0;
                  double f = std::frexp(v, &e);
                  Int mm = static_cast<long long>(std::ldexp(f, 53));
                  int shift = int(precision) + e - 53;
                  if (v == 0.0) mm = 0;
                  else if (shift >= 0) mm <<= shift;
                  else mm >>= -shift;
                  ms.push_back(mm);
              }
              auto q = quantize(TorusSequence(std::move(ms), precision), grid);
              return q.levels;
          },
          py::arg("values"), py::arg("grid"), py::arg("precision") = 64,
          "nearest grid index under torus distance, lower-index tie break");

    m.def("run", &run_py, py::arg("experiment"), py::arg("options") = py::dict(),
          "run a named experiment; returns the JSON report");
}
