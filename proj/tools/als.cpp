#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "als/aiger_io.hpp"
#include "als/cnf.hpp"
#include "als/flow.hpp"
#include "als/gen.hpp"
#include "als/lac.hpp"
#include "als/metrics.hpp"
#include "als/miter.hpp"
#include "als/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitInternal = 4;

struct MetricFlags {
    std::string max_ed;
    std::string max_hd;
    uint32_t max_ed_frac = 0;
    bool msb_first = false;

    void attach(CLI::App* cmd) {
        auto* ed = cmd->add_option("--max-ed", max_ed,
                                   "MaxED bound (decimal or scientific, e.g. 5.8E+07)");
        auto* hd = cmd->add_option("--max-hd", max_hd, "MaxHD bound");
        auto* frac = cmd->add_option("--max-ed-frac", max_ed_frac,
                                     "MaxED bound floor(2^(O/d)) for the given d");
        ed->excludes(hd)->excludes(frac);
        hd->excludes(frac);
        cmd->add_flag("--msb-first", msb_first, "PO index 0 is the most significant bit");
    }

    als::ErrorSpec resolve(uint32_t num_pos) const {
        als::ErrorSpec spec;
        spec.msb_first = msb_first;
        int chosen = (!max_ed.empty()) + (!max_hd.empty()) + (max_ed_frac > 0);
        if (chosen != 1)
            throw CLI::ValidationError(
                "exactly one of --max-ed / --max-hd / --max-ed-frac is required");
        if (!max_ed.empty()) {
            spec.metric = als::Metric::MaxED;
            spec.bound = als::parse_bound(max_ed);
        } else if (!max_hd.empty()) {
            spec.metric = als::Metric::MaxHD;
            spec.bound = als::parse_bound(max_hd);
        } else {
            spec.metric = als::Metric::MaxED;
            spec.bound = als::pow2_frac_floor(num_pos, max_ed_frac);
        }
        return spec;
    }
};

std::vector<als::Phase> parse_phases(const std::string& arg) {
    std::vector<als::Phase> phases;
    size_t start = 0;
    while (start <= arg.size()) {
        size_t comma = arg.find(',', start);
        std::string name = arg.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!name.empty()) {
            auto p = als::phase_from_name(name);
            if (!p) throw CLI::ValidationError("unknown phase '" + name + "'");
            phases.push_back(*p);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (phases.empty()) throw CLI::ValidationError("empty phase list");
    return phases;
}

void dump_miter_dimacs(const als::AigNetwork& golden, const als::AigNetwork& approx,
                       const als::ErrorSpec& spec, const std::string& path) {
    als::Cnf cnf = als::aig_to_cnf(als::build_miter(golden, approx, spec));
    std::ofstream out(path);
    als::write_dimacs(cnf, out);
}

std::string pattern_string(const std::vector<bool>& bits) {
    std::string s;
    for (bool b : bits) s += b ? '1' : '0';
    return s;
}

mpz_class deviation_of_pattern(const als::AigNetwork& golden, const als::AigNetwork& approx,
                               const als::ErrorSpec& spec, const std::vector<bool>& pattern) {
    als::PatternPool pool = als::PatternPool::from_patterns(golden.num_pis(), {pattern});
    als::SimState gs = als::simulate(golden, pool);
    als::SimState as = als::simulate(approx, pool);
    return als::lb_max_error(gs.po_vals, as.po_vals, 1, spec);
}

int run_synth(const std::string& in_path, const std::string& out_path,
              const std::string& report_path, const MetricFlags& metric,
              als::FlowConfig config, const std::string& phases_arg, bool allow_unverified,
              const std::string& dimacs_path, const std::string& patterns_out) {
    als::AigNetwork golden = als::read_aiger_file(in_path);
    als::ErrorSpec spec = metric.resolve(golden.po_count());
    if (!phases_arg.empty()) config.phases = parse_phases(phases_arg);

    als::RunResult result = als::run(golden, spec, config);

    if (!dimacs_path.empty()) dump_miter_dimacs(golden, result.net, spec, dimacs_path);
    if (!patterns_out.empty()) {
        als::PatternPool pool = als::gen_patterns(golden.num_pis(), config.m, config.seed);
        std::ofstream out(patterns_out);
        pool.dump(out);
    }
    if (!out_path.empty()) als::write_aiger_file(result.net, out_path);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << result.report.to_json() << '\n';
    }

    fmt::print("{}: {} -> {} AND nodes ({:.1f}%), {} iterations, {} SAT calls, {}\n",
               golden.name, result.report.initial_ands, result.report.final_ands,
               result.report.initial_ands == 0
                   ? 100.0
                   : 100.0 * static_cast<double>(result.report.final_ands) /
                         static_cast<double>(result.report.initial_ands),
               result.report.iterations.size(), result.report.total_sat_calls,
               result.report.certification == "unsat" ? "certified" : "UNVERIFIED");

    if (result.report.certification != "unsat" && !allow_unverified) return kExitUndecided;
    return kExitOk;
}

int run_verify(const std::string& golden_path, const std::string& approx_path,
               const MetricFlags& metric, double timeout, uint64_t conflicts,
               const std::string& dimacs_path) {
    als::AigNetwork golden = als::read_aiger_file(golden_path);
    als::AigNetwork approx = als::read_aiger_file(approx_path);
    if (golden.num_pis() != approx.num_pis() || golden.po_count() != approx.po_count()) {
        fmt::print(stderr, "interface mismatch: {}/{} PIs, {}/{} POs\n", golden.num_pis(),
                   approx.num_pis(), golden.po_count(), approx.po_count());
        return kExitUsage;
    }
    als::ErrorSpec spec = metric.resolve(golden.po_count());
    if (!dimacs_path.empty()) dump_miter_dimacs(golden, approx, spec, dimacs_path);

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (timeout > 0.0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(timeout));
    als::SatVerdict verdict = als::check_bound(golden, approx, spec, conflicts, deadline);
    switch (verdict.kind) {
        case als::sat::Result::Unsat:
            fmt::print("bound holds: max {} <= {} ({} conflicts)\n", spec.metric == als::Metric::MaxED ? "ED" : "HD",
                       spec.bound.get_str(), verdict.conflicts_used);
            return kExitOk;
        case als::sat::Result::Sat: {
            mpz_class dev = deviation_of_pattern(golden, approx, spec, verdict.counterexample);
            fmt::print("bound violated: pattern {} deviates by {} (> {})\n",
                       pattern_string(verdict.counterexample), dev.get_str(),
                       spec.bound.get_str());
            return kExitViolated;
        }
        case als::sat::Result::Unknown:
            fmt::print("undecided within limits ({} conflicts)\n", verdict.conflicts_used);
            return kExitUndecided;
    }
    return kExitInternal;
}

int run_eval(const std::string& golden_path, const std::string& approx_path,
             const MetricFlags& metric, size_t m, uint64_t seed,
             const std::string& patterns_path, bool exact, double timeout,
             const std::string& patterns_out) {
    als::AigNetwork golden = als::read_aiger_file(golden_path);
    als::AigNetwork approx = als::read_aiger_file(approx_path);
    if (golden.num_pis() != approx.num_pis() || golden.po_count() != approx.po_count()) {
        fmt::print(stderr, "interface mismatch\n");
        return kExitUsage;
    }
    als::ErrorSpec spec = metric.resolve(golden.po_count());

    als::PatternPool pool;
    if (!patterns_path.empty()) {
        std::ifstream in(patterns_path);
        if (!in) {
            fmt::print(stderr, "cannot open '{}'\n", patterns_path);
            return kExitUsage;
        }
        pool = als::PatternPool::load(in, golden.num_pis());
    } else {
        pool = als::gen_patterns(golden.num_pis(), m, seed);
    }
    if (!patterns_out.empty()) {
        std::ofstream out(patterns_out);
        pool.dump(out);
    }

    als::SimState gs = als::simulate(golden, pool);
    als::SimState as = als::simulate(approx, pool);
    mpz_class lb = als::lb_max_error(gs.po_vals, as.po_vals, pool.columns(), spec);
    fmt::print("simulation lower bound over {} patterns: {}\n", pool.columns(), lb.get_str());

    if (exact) {
        als::ExactResult res = als::exact_max_error(golden, approx, spec, timeout);
        if (res.exact)
            fmt::print("exact maximum error: {}\n", res.lo.get_str());
        else
            fmt::print("exact maximum error in [{}, {}] (inexact: solver limit hit)\n",
                       res.lo.get_str(), res.hi.get_str());
    }
    return kExitOk;
}

int run_gen(const std::string& family, uint32_t width, uint32_t nodes, uint64_t seed,
            const std::string& out_path) {
    als::AigNetwork net;
    if (family == "half-adder")
        net = als::gen_half_adder();
    else if (family == "ripple-adder")
        net = als::gen_ripple_adder(width);
    else if (family == "array-multiplier")
        net = als::gen_array_multiplier(width);
    else if (family == "random-aig")
        net = als::gen_random_aig(nodes, seed);
    else
        throw CLI::ValidationError("unknown family '" + family + "'");
    if (out_path.empty() || out_path == "-")
        std::cout << als::write_aiger(net);
    else
        als::write_aiger_file(net, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate logic synthesis under maximum error bounds"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "simplify a circuit under an error bound");
    std::string in_path, out_path, report_path, phases_arg, cand_tsv, dimacs_path, patterns_out;
    bool allow_unverified = false;
    als::FlowConfig config;
    MetricFlags synth_metric;
    synth->add_option("--in", in_path, "input AIGER file")->required();
    synth->add_option("--out", out_path, "output AIGER file");
    synth->add_option("--report", report_path, "JSON run report path");
    synth_metric.attach(synth);
    synth->add_option("--m", config.m, "simulation patterns (default 8192)");
    synth->add_option("--m-small", config.m_small, "round-one patterns (default 1024)");
    synth->add_option("--k", config.k, "top candidates per iteration (default 100)");
    synth->add_option("--conflicts", config.conflict_limit,
                      "SAT conflict budget per check (default 262144)");
    synth->add_option("--seed", config.seed, "PRNG seed (fixed default for reproducibility)");
    synth->add_option("--phases", phases_arg,
                      "comma list of const-po,const-internal,substitution,mixed");
    bool no_complement = false, no_prune = false, no_cex_reuse = false;
    synth->add_flag("--no-complement", no_complement, "disable complemented substitution sources");
    uint64_t similarity_cap = 0;
    auto* cap_opt = synth->add_option("--similarity-cap", similarity_cap,
                                      "max signature distance for substitution pairs");
    synth->add_flag("--no-prune", no_prune, "disable simulation-guided pruning (ablation)");
    synth->add_flag("--no-cex-reuse", no_cex_reuse, "disable counter-example reuse (ablation)");
    synth->add_option("--cex-cap", config.cex_cap, "cap on stored counterexamples (0 = none)");
    synth->add_option("--max-iters", config.max_iterations, "iteration backstop");
    synth->add_option("--threads", config.threads, "worker threads for simulation stages");
    synth->add_flag("--allow-unverified", allow_unverified,
                    "exit 0 even if the final check is undecided");
    synth->add_option("--cand-tsv", cand_tsv, "dump per-iteration top-k candidates as TSV");
    synth->add_option("--dimacs", dimacs_path, "dump the final certification CNF");
    synth->add_option("--dump-patterns", patterns_out, "dump the base pattern pool as hex");

    // verify
    auto* verify = app.add_subcommand("verify", "check an error bound between two circuits");
    std::string golden_path, approx_path, verify_dimacs;
    double verify_timeout = 0.0;
    uint64_t verify_conflicts = uint64_t{1} << 62;
    MetricFlags verify_metric;
    verify->add_option("--golden", golden_path, "accurate circuit")->required();
    verify->add_option("--approx", approx_path, "approximate circuit")->required();
    verify_metric.attach(verify);
    verify->add_option("--timeout", verify_timeout, "wall-clock limit in seconds (0 = none)");
    verify->add_option("--conflicts", verify_conflicts, "conflict budget (default unlimited)");
    verify->add_option("--dimacs", verify_dimacs, "dump the miter CNF");

    // eval
    auto* eval = app.add_subcommand("eval", "measure error between two circuits");
    std::string eval_golden, eval_approx, eval_patterns, eval_patterns_out;
    size_t eval_m = size_t{1} << 13;
    uint64_t eval_seed = 1;
    bool eval_exact = false;
    double eval_timeout = 0.0;
    MetricFlags eval_metric;
    eval->add_option("--golden", eval_golden, "accurate circuit")->required();
    eval->add_option("--approx", eval_approx, "approximate circuit")->required();
    eval_metric.attach(eval);
    eval->add_option("--m", eval_m, "random patterns for the lower bound");
    eval->add_option("--seed", eval_seed, "PRNG seed");
    eval->add_option("--patterns", eval_patterns, "hex pattern file instead of random patterns");
    eval->add_flag("--exact", eval_exact, "binary-search the exact maximum error");
    eval->add_option("--timeout", eval_timeout, "wall-clock limit for --exact (seconds)");
    eval->add_option("--dump-patterns", eval_patterns_out, "dump the pattern pool as hex");

    // gen
    auto* gen = app.add_subcommand("gen", "emit reference circuits as AIGER");
    std::string gen_family, gen_out;
    uint32_t gen_width = 4, gen_nodes = 50;
    uint64_t gen_seed = 1;
    gen->add_option("--family", gen_family,
                    "half-adder | ripple-adder | array-multiplier | random-aig")
        ->required();
    gen->add_option("--width", gen_width, "bit width for arithmetic families");
    gen->add_option("--nodes", gen_nodes, "node count for random-aig");
    gen->add_option("--seed", gen_seed, "seed for random-aig");
    gen->add_option("--out", gen_out, "output path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (synth->parsed()) {
            config.allow_complement = !no_complement;
            config.use_pruning = !no_prune;
            config.use_cex_reuse = !no_cex_reuse;
            if (cap_opt->count() > 0) config.similarity_cap = similarity_cap;
            config.candidate_tsv_path = cand_tsv;
            return run_synth(in_path, out_path, report_path, synth_metric, config, phases_arg,
                             allow_unverified, dimacs_path, patterns_out);
        }
        if (verify->parsed())
            return run_verify(golden_path, approx_path, verify_metric, verify_timeout,
                              verify_conflicts, verify_dimacs);
        if (eval->parsed())
            return run_eval(eval_golden, eval_approx, eval_metric, eval_m, eval_seed,
                            eval_patterns, eval_exact, eval_timeout, eval_patterns_out);
        if (gen->parsed()) return run_gen(gen_family, gen_width, gen_nodes, gen_seed, gen_out);
    } catch (const als::CertificationError& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return kExitInternal;
    } catch (const CLI::ValidationError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
