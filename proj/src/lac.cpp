#include "als/lac.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <ostream>
#include <stdexcept>

namespace als {

namespace {

std::vector<Var> live_signals(const AigNetwork& net) {
    std::vector<char> live = live_mask(net);
    std::vector<Var> out;
    for (Var v = 1; v < net.num_vars(); ++v)
        if (live[v]) out.push_back(v);
    return out;
}

}  // namespace

CandidateSet gen_constant_lacs(const AigNetwork& net, ConstScope scope) {
    std::vector<char> drivers(net.num_vars(), 0);
    for (Literal po : net.pos())
        if (!po.is_constant()) drivers[po.var()] = 1;

    std::vector<uint32_t> gains = all_mffc_sizes(net);
    CandidateSet set;
    for (Var v : live_signals(net)) {
        bool is_driver = drivers[v] != 0;
        if (scope == ConstScope::PoDrivers && !is_driver) continue;
        if (scope == ConstScope::Internal && is_driver) continue;
        for (LacKind kind : {LacKind::Const0, LacKind::Const1}) {
            Lac lac;
            lac.target = v;
            lac.kind = kind;
            lac.gain = gains[v];
            set.lacs.push_back(std::move(lac));
        }
    }
    return set;
}

CandidateSet gen_substitution_lacs(const AigNetwork& net, const SimState& state,
                                   bool allow_complement,
                                   std::optional<uint64_t> similarity_cap) {
    std::vector<Var> signals = live_signals(net);
    std::vector<uint32_t> gains = all_mffc_sizes(net);

    auto sig_distance = [&](Var a, Var b, bool complemented) {
        const auto& av = state.node_vals[a];
        const auto& bv = state.node_vals[b];
        uint64_t dist = 0;
        for (size_t w = 0; w < state.words; ++w) {
            uint64_t diff = av[w] ^ bv[w];
            if (complemented) diff = ~diff;
            if (w + 1 == state.words) diff &= state.tail_mask;
            dist += static_cast<uint64_t>(std::popcount(diff));
        }
        return dist;
    };

    CandidateSet set;
    for (Var target : signals) {
        Tfo cone = tfo(net, target);
        for (Var source : signals) {
            if (source == target || cone.contains(source)) continue;
            for (bool comp : {false, true}) {
                if (comp && !allow_complement) continue;
                if (similarity_cap && sig_distance(target, source, comp) > *similarity_cap)
                    continue;
                Lac lac;
                lac.target = target;
                lac.kind = LacKind::Substitute;
                lac.source = Literal::of(source, comp);
                lac.gain = gains[target];
                set.lacs.push_back(std::move(lac));
            }
        }
    }
    return set;
}

namespace {

// Per-call context for lb estimation: per-pattern golden/base-approx words
// and base deviations, so candidates only pay for the patterns they touch.
struct LbContext {
    size_t eval_columns = 0;
    size_t eval_words = 0;
    uint32_t width = 0;
    bool fast = false;  // width <= 64

    // Fast lane (width <= 64).
    std::vector<uint64_t> golden_word;   // per pattern
    std::vector<uint64_t> approx_word;   // per pattern
    std::vector<uint64_t> dev_base;      // per pattern
    std::vector<uint64_t> word_max_base; // per 64-pattern word

    // General lane.
    const SimState* golden = nullptr;
};

uint64_t fast_dev(const ErrorSpec& spec, uint64_t y, uint64_t yh) {
    if (spec.metric == Metric::MaxHD) return std::popcount(y ^ yh);
    return y > yh ? y - yh : yh - y;
}

LbContext make_context(const SimState& golden_sim, const SimState& approx_sim,
                       const ErrorSpec& spec, std::optional<size_t> prefix) {
    LbContext ctx;
    ctx.width = static_cast<uint32_t>(golden_sim.po_vals.size());
    ctx.eval_columns = std::min(prefix.value_or(golden_sim.columns), golden_sim.columns);
    ctx.eval_words = (ctx.eval_columns + 63) / 64;
    ctx.fast = ctx.width <= 64;
    ctx.golden = &golden_sim;
    if (!ctx.fast) return ctx;

    ctx.golden_word.assign(ctx.eval_columns, 0);
    ctx.approx_word.assign(ctx.eval_columns, 0);
    for (uint32_t k = 0; k < ctx.width; ++k) {
        uint32_t pos = spec.msb_first ? ctx.width - 1 - k : k;
        const auto& gk = golden_sim.po_vals[k];
        const auto& ak = approx_sim.po_vals[k];
        for (size_t i = 0; i < ctx.eval_columns; ++i) {
            ctx.golden_word[i] |= ((gk[i >> 6] >> (i & 63)) & 1u) << pos;
            ctx.approx_word[i] |= ((ak[i >> 6] >> (i & 63)) & 1u) << pos;
        }
    }
    ctx.dev_base.assign(ctx.eval_columns, 0);
    ctx.word_max_base.assign(ctx.eval_words, 0);
    for (size_t i = 0; i < ctx.eval_columns; ++i) {
        uint64_t d = fast_dev(spec, ctx.golden_word[i], ctx.approx_word[i]);
        ctx.dev_base[i] = d;
        ctx.word_max_base[i >> 6] = std::max(ctx.word_max_base[i >> 6], d);
    }
    return ctx;
}

mpz_class estimate_one(const LbContext& ctx, const SimState& approx_sim, const Cpm& cpm,
                       const ErrorSpec& spec, const Lac& lac) {
    const size_t words = approx_sim.words;
    std::vector<uint64_t> diff(words);
    const auto& n_vals = approx_sim.node_vals[lac.target];
    switch (lac.kind) {
        case LacKind::Const0:
            for (size_t w = 0; w < words; ++w) diff[w] = n_vals[w];
            break;
        case LacKind::Const1:
            for (size_t w = 0; w < words; ++w) diff[w] = ~n_vals[w];
            break;
        case LacKind::Substitute: {
            const auto& s_vals = approx_sim.node_vals[lac.source.var()];
            uint64_t c = lac.source.complemented() ? ~uint64_t{0} : 0;
            for (size_t w = 0; w < words; ++w) diff[w] = n_vals[w] ^ s_vals[w] ^ c;
            break;
        }
    }
    if (words > 0) diff[words - 1] &= approx_sim.tail_mask;

    if (ctx.fast) {
        uint64_t best = 0;
        uint64_t delta[64];
        for (size_t w = 0; w < ctx.eval_words; ++w) {
            uint64_t any = 0;
            size_t lo = w * 64;
            size_t hi = std::min(ctx.eval_columns, lo + 64);
            bool full_word = hi - lo == 64;
            std::fill(delta, delta + 64, 0);
            for (uint32_t k = 0; k < ctx.width; ++k) {
                uint64_t impact = diff[w] & cpm.row(lac.target, k)[w];
                if (!full_word) impact &= (uint64_t{1} << (hi - lo)) - 1;
                any |= impact;
                uint32_t pos = spec.msb_first ? ctx.width - 1 - k : k;
                while (impact) {
                    uint32_t j = std::countr_zero(impact);
                    impact &= impact - 1;
                    delta[j] |= uint64_t{1} << pos;
                }
            }
            if (any == 0) {
                if (full_word) {
                    best = std::max(best, ctx.word_max_base[w]);
                } else {
                    for (size_t i = lo; i < hi; ++i) best = std::max(best, ctx.dev_base[i]);
                }
                continue;
            }
            for (size_t i = lo; i < hi; ++i) {
                uint64_t d = delta[i - lo];
                uint64_t dev = d == 0 ? ctx.dev_base[i]
                                      : fast_dev(spec, ctx.golden_word[i],
                                                 ctx.approx_word[i] ^ d);
                best = std::max(best, dev);
            }
        }
        return mpz_class(static_cast<unsigned long>(best));
    }

    // General lane: exact at any PO width.
    auto updated = po_values_under_lac(approx_sim, cpm, lac);
    return lb_max_error(ctx.golden->po_vals, updated, ctx.eval_columns, spec);
}

}  // namespace

void estimate_lbs(CandidateSet& cands, const SimState& golden_sim, const SimState& approx_sim,
                  const Cpm& cpm, const ErrorSpec& spec, std::optional<size_t> prefix,
                  unsigned threads) {
    if (golden_sim.columns != approx_sim.columns)
        throw std::invalid_argument("estimate_lbs: pattern pool mismatch between sim states");
    if (golden_sim.po_vals.size() != approx_sim.po_vals.size())
        throw std::invalid_argument("estimate_lbs: PO count mismatch");

    LbContext ctx = make_context(golden_sim, approx_sim, spec, prefix);
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            Lac& lac = cands.lacs[i];
            lac.lb = estimate_one(ctx, approx_sim, cpm, spec, lac);
            lac.lb_columns = ctx.eval_columns;
        }
    };
    if (threads <= 1 || cands.lacs.size() < 2 * threads) {
        work(0, cands.lacs.size());
        return;
    }
    std::vector<std::thread> workers;
    size_t chunk = (cands.lacs.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = t * chunk;
        size_t hi = std::min(cands.lacs.size(), lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(work, lo, hi);
    }
    for (auto& w : workers) w.join();
}

CandidateSet prune(CandidateSet cands, const ErrorSpec& spec) {
    std::vector<Lac> kept;
    kept.reserve(cands.lacs.size());
    for (Lac& lac : cands.lacs) {
        assert(lac.lb && "prune requires estimated lbs");
        if (*lac.lb <= spec.bound) kept.push_back(std::move(lac));
    }
    cands.lacs = std::move(kept);
    cands.stage = CandidateStage::Pruned;
    return cands;
}

CandidateSet sort_and_truncate(CandidateSet cands, size_t k) {
    static const mpz_class kZero = 0;
    std::stable_sort(cands.lacs.begin(), cands.lacs.end(), [](const Lac& a, const Lac& b) {
        const mpz_class& la = a.lb ? *a.lb : kZero;
        const mpz_class& lb = b.lb ? *b.lb : kZero;
        int c = cmp(la, lb);
        if (c != 0) return c < 0;
        if (a.gain != b.gain) return a.gain > b.gain;
        if (a.target != b.target) return a.target < b.target;
        return a.replacement_code() < b.replacement_code();
    });
    if (cands.lacs.size() > k) cands.lacs.resize(k);
    cands.stage = CandidateStage::Sorted;
    return cands;
}

void dump_candidates_tsv(const CandidateSet& cands, std::ostream& out,
                         std::optional<uint32_t> iteration) {
    for (const Lac& lac : cands.lacs) {
        if (iteration) out << *iteration << '\t';
        out << lac.target << '\t';
        switch (lac.kind) {
            case LacKind::Const0: out << "const0\t-"; break;
            case LacKind::Const1: out << "const1\t-"; break;
            case LacKind::Substitute:
                out << "subst\t" << (lac.source.complemented() ? "!" : "") << lac.source.var();
                break;
        }
        out << '\t' << (lac.lb ? lac.lb->get_str() : std::string("-")) << '\t' << lac.gain
            << '\n';
    }
}

}  // namespace als
