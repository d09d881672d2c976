#include "als/flow.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "als/cpm.hpp"
#include "als/prng.hpp"

namespace als {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::ConstPo: return "const-po";
        case Phase::ConstInternal: return "const-internal";
        case Phase::Substitution: return "substitution";
        case Phase::Mixed: return "mixed";
    }
    return "?";
}

std::optional<Phase> phase_from_name(const std::string& name) {
    if (name == "const-po") return Phase::ConstPo;
    if (name == "const-internal") return Phase::ConstInternal;
    if (name == "substitution") return Phase::Substitution;
    if (name == "mixed") return Phase::Mixed;
    return std::nullopt;
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["tool"] = "als";
    j["prng"] = prng;
    auto& cfg = j["config"];
    cfg["metric"] = metric;
    cfg["bound"] = bound;
    cfg["msb_first"] = msb_first;
    cfg["m_small"] = m_small;
    cfg["m"] = m;
    cfg["k"] = k;
    cfg["conflict_limit"] = conflict_limit;
    cfg["seed"] = seed;
    std::vector<std::string> names;
    for (Phase p : phases) names.emplace_back(phase_name(p));
    cfg["phases"] = names;
    cfg["allow_complement"] = allow_complement;
    if (similarity_cap)
        cfg["similarity_cap"] = *similarity_cap;
    else
        cfg["similarity_cap"] = nullptr;
    cfg["pruning"] = pruning;
    cfg["cex_reuse"] = cex_reuse;
    cfg["cex_cap"] = cex_cap;
    cfg["threads"] = threads;

    auto& in = j["input"];
    in["name"] = input_name;
    in["pis"] = num_pis;
    in["pos"] = num_pos;
    in["ands"] = initial_ands;

    j["iterations"] = nlohmann::json::array();
    for (const IterationRecord& r : iterations) {
        nlohmann::json ji;
        ji["index"] = r.index;
        ji["phase"] = phase_name(r.phase);
        ji["candidates"] = r.candidates_generated;
        ji["after_round1"] = r.after_round1;
        ji["after_round2"] = r.after_round2;
        ji["top_k"] = r.top_k;
        ji["sat_calls"] = r.sat_calls;
        ji["sat"] = r.sat;
        ji["unsat"] = r.unsat;
        ji["unknown"] = r.unknown;
        ji["cex_skips"] = r.cex_skips;
        ji["loop_skips"] = r.loop_skips;
        ji["conflict_skips"] = r.conflict_skips;
        ji["blacklist_skips"] = r.blacklist_skips;
        ji["applied"] = r.applied;
        ji["live_ands"] = r.live_ands;
        j["iterations"].push_back(std::move(ji));
    }

    auto& tot = j["totals"];
    tot["iterations"] = iterations.size();
    tot["sat_calls"] = total_sat_calls;
    tot["sat"] = total_sat;
    tot["unsat"] = total_unsat;
    tot["unknown"] = total_unknown;
    tot["cex_skips"] = total_cex_skips;
    tot["applied"] = total_applied;
    tot["counterexamples"] = counterexamples_stored;

    auto& res = j["result"];
    res["initial_ands"] = initial_ands;
    res["final_ands"] = final_ands;
    res["certification"] = certification;
    res["final_check_conflicts"] = final_check_conflicts;

    j["timing"]["wall_seconds"] = wall_seconds;
    return j.dump(2);
}

namespace {

std::vector<Phase> auto_phases(const AigNetwork& net) {
    if (net.and_count() > 2000)
        return {Phase::ConstPo, Phase::ConstInternal, Phase::Substitution};
    return {Phase::Mixed};
}

std::optional<uint64_t> auto_similarity_cap(const AigNetwork& net, const FlowConfig& config) {
    if (config.similarity_cap) return config.similarity_cap;
    if (net.and_count() > 5000) return config.m / 8;
    return std::nullopt;
}

CandidateSet generate_candidates(Phase phase, const AigNetwork& net, const SimState& sim,
                                 bool allow_complement, std::optional<uint64_t> sim_cap) {
    switch (phase) {
        case Phase::ConstPo: return gen_constant_lacs(net, ConstScope::PoDrivers);
        case Phase::ConstInternal: return gen_constant_lacs(net, ConstScope::Internal);
        case Phase::Substitution:
            return gen_substitution_lacs(net, sim, allow_complement, sim_cap);
        case Phase::Mixed: {
            CandidateSet set = gen_constant_lacs(net, ConstScope::All);
            CandidateSet subs = gen_substitution_lacs(net, sim, allow_complement, sim_cap);
            set.lacs.insert(set.lacs.end(), std::make_move_iterator(subs.lacs.begin()),
                            std::make_move_iterator(subs.lacs.end()));
            return set;
        }
    }
    return {};
}

void store_counterexample(FlowState& state, const std::vector<bool>& pattern,
                          size_t cex_cap) {
    if (!state.cex_seen.insert(pattern).second) return;
    state.pool.counterexamples.push_back(pattern);
    if (cex_cap > 0 && state.pool.counterexamples.size() > cex_cap) {
        state.cex_seen.erase(state.pool.counterexamples.front());
        state.pool.counterexamples.erase(state.pool.counterexamples.begin());
    }
}

}  // namespace

std::vector<Lac> select_and_apply(FlowState& state, const AigNetwork& golden,
                                  const CandidateSet& sorted_cands, const ErrorSpec& spec,
                                  const FlowConfig& config) {
    if (state.report.iterations.empty()) state.report.iterations.emplace_back();
    IterationRecord& rec = state.report.iterations.back();

    // Candidates speak the ids of the pass-entry circuit; track both its uids
    // (blacklist identity) and the composed id map into the evolving circuit.
    std::vector<uint64_t> entry_uids(state.current.num_vars());
    for (Var v = 0; v < state.current.num_vars(); ++v) entry_uids[v] = state.current.uid(v);
    std::vector<Var> cur_map(state.current.num_vars());
    for (Var v = 0; v < cur_map.size(); ++v) cur_map[v] = v;

    std::set<Var> applied_targets;
    std::vector<Lac> applied;

    for (const Lac& lac : sorted_cands.lacs) {
        if (applied.size() >= config.k) break;

        BlacklistKey key{entry_uids[lac.target], lac.kind,
                         lac.kind == LacKind::Substitute ? entry_uids[lac.source.var()] : 0,
                         lac.kind == LacKind::Substitute && lac.source.complemented()};
        if (state.blacklist.count(key)) {
            ++rec.blacklist_skips;
            continue;
        }
        if (applied_targets.count(lac.target)) {
            ++rec.conflict_skips;
            continue;
        }

        Lac translated = lac;
        translated.target = cur_map[lac.target];
        if (lac.kind == LacKind::Substitute)
            translated.source = Literal::of(cur_map[lac.source.var()], lac.source.complemented());
        if (introduces_loop(state.current, translated)) {
            ++rec.loop_skips;
            continue;
        }

        ApplyResult cand = apply_lac_mapped(state.current, translated);

        if (config.use_cex_reuse && !state.pool.counterexamples.empty()) {
            mpz_class dev = eval_on_counterexamples(golden, cand.net, state.pool, spec);
            if (dev > spec.bound) {
                ++rec.cex_skips;
                continue;
            }
        }

        SatVerdict verdict = check_bound(golden, cand.net, spec, config.conflict_limit);
        ++rec.sat_calls;
        switch (verdict.kind) {
            case sat::Result::Unsat: {
                ++rec.unsat;
                state.current = std::move(cand.net);
                for (Var v = 0; v < cur_map.size(); ++v) cur_map[v] = cand.var_map[cur_map[v]];
                applied_targets.insert(lac.target);
                applied.push_back(lac);
                break;
            }
            case sat::Result::Sat: {
                ++rec.sat;
                store_counterexample(state, verdict.counterexample, config.cex_cap);
                break;
            }
            case sat::Result::Unknown: {
                ++rec.unknown;
                state.blacklist.insert(key);
                break;
            }
        }
    }
    rec.applied = applied.size();
    return applied;
}

RunResult run(const AigNetwork& golden, const ErrorSpec& spec, const FlowConfig& config) {
    if (config.m_small > config.m)
        throw std::invalid_argument("flow config: m_small must be <= m");
    if (config.k == 0) throw std::invalid_argument("flow config: k must be >= 1");
    if (spec.bound < 0) throw std::invalid_argument("error bound must be nonnegative");

    auto t0 = std::chrono::steady_clock::now();

    std::vector<Phase> phases = config.phases.empty() ? auto_phases(golden) : config.phases;
    std::optional<uint64_t> sim_cap = auto_similarity_cap(golden, config);

    FlowState state;
    state.current = golden;
    state.pool = gen_patterns(golden.num_pis(), config.m, config.seed);

    RunReport& report = state.report;
    report.metric = metric_name(spec.metric);
    report.bound = spec.bound.get_str();
    report.msb_first = spec.msb_first;
    report.m_small = config.m_small;
    report.m = config.m;
    report.k = config.k;
    report.conflict_limit = config.conflict_limit;
    report.seed = config.seed;
    report.phases = phases;
    report.allow_complement = config.allow_complement;
    report.similarity_cap = sim_cap;
    report.pruning = config.use_pruning;
    report.cex_reuse = config.use_cex_reuse;
    report.cex_cap = config.cex_cap;
    report.threads = config.threads;
    report.prng = SplitMix64::name();
    report.input_name = golden.name;
    report.num_pis = golden.num_pis();
    report.num_pos = golden.po_count();
    report.initial_ands = golden.and_count();

    std::ofstream tsv;
    if (!config.candidate_tsv_path.empty()) {
        tsv.open(config.candidate_tsv_path, std::ios::trunc);
        tsv << "iteration\ttarget\tkind\tsource\tlb\tgain\n";
    }

    size_t phase_idx = 0;
    while (state.iteration < config.max_iterations) {
        ++state.iteration;
        IterationRecord rec;
        rec.index = state.iteration;
        rec.phase = phases[phase_idx];

        SimState golden_sim = simulate(golden, state.pool);
        SimState approx_sim = simulate(state.current, state.pool);

        CandidateSet cands = generate_candidates(rec.phase, state.current, approx_sim,
                                                 config.allow_complement, sim_cap);
        rec.candidates_generated = cands.size();

        if (config.use_pruning) {
            Cpm cpm = build_cpm(state.current, approx_sim, config.threads);
            size_t prefix = std::min(config.m_small, approx_sim.columns);
            estimate_lbs(cands, golden_sim, approx_sim, cpm, spec, prefix, config.threads);
            cands = prune(std::move(cands), spec);
            rec.after_round1 = cands.size();
            estimate_lbs(cands, golden_sim, approx_sim, cpm, spec, std::nullopt,
                         config.threads);
            cands = prune(std::move(cands), spec);
            rec.after_round2 = cands.size();
            cands = sort_and_truncate(std::move(cands), config.k);
        } else {
            // Ablation mode: no lb information; order by estimated gain and
            // walk the whole list, applying the first k valid candidates.
            size_t all = cands.size();
            rec.after_round1 = rec.after_round2 = all;
            cands.stage = CandidateStage::Pruned;
            cands = sort_and_truncate(std::move(cands), all);
        }
        rec.top_k = cands.size();

        if (tsv.is_open()) dump_candidates_tsv(cands, tsv, state.iteration);

        state.report.iterations.push_back(std::move(rec));
        std::vector<Lac> applied = select_and_apply(state, golden, cands, spec, config);
        IterationRecord& done = state.report.iterations.back();
        done.live_ands = cleanup(state.current).and_count();

        if (applied.empty()) {
            ++phase_idx;
            if (phase_idx >= phases.size()) break;
        }
    }

    AigNetwork result = cleanup(state.current);
    result.name = golden.name;

    SatVerdict final_check =
        check_bound(golden, result, spec, uint64_t{1} << 62);
    report.final_check_conflicts = final_check.conflicts_used;
    switch (final_check.kind) {
        case sat::Result::Unsat:
            report.certification = "unsat";
            break;
        case sat::Result::Sat:
            throw CertificationError(
                "final certification found a bound violation; refusing to emit netlist");
        case sat::Result::Unknown:
            report.certification = "unknown";
            break;
    }

    if (golden.num_pis() <= config.exhaustive_verify_limit) {
        mpz_class exact = brute_force_max_error(golden, result, spec,
                                                config.exhaustive_verify_limit);
        if (exact > spec.bound)
            throw CertificationError("exhaustive recheck found deviation " + exact.get_str() +
                                     " above bound " + spec.bound.get_str());
    }

    for (const IterationRecord& r : report.iterations) {
        report.total_sat_calls += r.sat_calls;
        report.total_sat += r.sat;
        report.total_unsat += r.unsat;
        report.total_unknown += r.unknown;
        report.total_cex_skips += r.cex_skips;
        report.total_applied += r.applied;
    }
    report.counterexamples_stored = state.pool.counterexamples.size();
    report.final_ands = result.and_count();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    return {std::move(result), std::move(state.report)};
}

ExactResult exact_max_error(const AigNetwork& golden, const AigNetwork& approx,
                            const ErrorSpec& spec, double timeout_seconds,
                            uint64_t conflict_limit) {
    if (golden.num_pis() != approx.num_pis() || golden.po_count() != approx.po_count())
        throw std::invalid_argument("exact_max_error: interface mismatch");

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (timeout_seconds > 0.0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(timeout_seconds));

    mpz_class lo = 0, hi;
    if (spec.metric == Metric::MaxED) {
        mpz_ui_pow_ui(hi.get_mpz_t(), 2, golden.po_count());
        hi -= 1;
    } else {
        hi = golden.po_count();
    }

    while (lo < hi) {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            return {lo, hi, false};
        mpz_class mid = (lo + hi) / 2;
        ErrorSpec probe{spec.metric, mid, spec.msb_first};
        SatVerdict v = check_bound(golden, approx, probe, conflict_limit, deadline);
        if (v.kind == sat::Result::Sat)
            lo = mid + 1;
        else if (v.kind == sat::Result::Unsat)
            hi = mid;
        else
            return {lo, hi, false};
    }
    return {lo, hi, true};
}

}  // namespace als
