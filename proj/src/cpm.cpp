#include "als/cpm.hpp"

#include <functional>
#include <thread>

namespace als {

namespace {

// Deterministic parallel-for: contiguous index chunks, one per worker.
void parallel_chunks(size_t count, unsigned threads, const std::function<void(size_t, size_t)>& fn) {
    if (threads <= 1 || count < 2 * threads) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> workers;
    size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = t * chunk;
        size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(fn, lo, hi);
    }
    for (auto& w : workers) w.join();
}

}  // namespace

Cpm build_cpm_for(const AigNetwork& net, const SimState& state, std::span<const Var> vars,
                  unsigned threads) {
    Cpm cpm(state.columns, state.words, net.po_count(), net.num_vars(),
            std::vector<Var>(vars.begin(), vars.end()));
    parallel_chunks(vars.size(), threads, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
            cpm.fill_row(vars[i], resimulate_flip(state, net, vars[i]));
    });
    cpm.cone_resims = vars.size();
    return cpm;
}

Cpm build_cpm(const AigNetwork& net, const SimState& state, unsigned threads) {
    std::vector<char> live = live_mask(net);
    std::vector<Var> vars;
    for (Var v = 1; v < net.num_vars(); ++v)
        if (live[v]) vars.push_back(v);
    return build_cpm_for(net, state, vars, threads);
}

std::vector<std::vector<uint64_t>> po_values_under_lac(const SimState& state, const Cpm& cpm,
                                                       const Lac& lac) {
    const size_t words = state.words;
    // Difference word n xor n': where the replacement changes the node value.
    std::vector<uint64_t> diff(words);
    const auto& n_vals = state.node_vals[lac.target];
    switch (lac.kind) {
        case LacKind::Const0:
            for (size_t w = 0; w < words; ++w) diff[w] = n_vals[w];
            break;
        case LacKind::Const1:
            for (size_t w = 0; w < words; ++w) diff[w] = ~n_vals[w];
            break;
        case LacKind::Substitute: {
            const auto& s_vals = state.node_vals[lac.source.var()];
            uint64_t c = lac.source.complemented() ? ~uint64_t{0} : 0;
            for (size_t w = 0; w < words; ++w) diff[w] = n_vals[w] ^ s_vals[w] ^ c;
            break;
        }
    }
    if (words > 0) diff[words - 1] &= state.tail_mask;

    std::vector<std::vector<uint64_t>> out(cpm.num_pos(), std::vector<uint64_t>(words));
    for (uint32_t k = 0; k < cpm.num_pos(); ++k) {
        auto prop = cpm.row(lac.target, k);
        const auto& base = state.po_vals[k];
        auto& dst = out[k];
        for (size_t w = 0; w < words; ++w) dst[w] = base[w] ^ (diff[w] & prop[w]);
    }
    return out;
}

}  // namespace als
