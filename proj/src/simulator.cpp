#include "als/simulator.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "als/metrics.hpp"
#include "als/prng.hpp"

namespace als {

namespace {

size_t words_for_columns(size_t columns) { return (columns + 63) / 64; }

uint64_t tail_mask_for(size_t columns) {
    size_t rem = columns & 63;
    return rem == 0 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

}  // namespace

bool PatternPool::pi_value(uint32_t pi, size_t column) const {
    if (column < base_count) return (base[pi][column >> 6] >> (column & 63)) & 1u;
    return counterexamples[column - base_count][pi];
}

PatternPool PatternPool::exhaustive(uint32_t num_pis) {
    return counting(num_pis, 0, uint64_t{1} << num_pis);
}

PatternPool PatternPool::counting(uint32_t num_pis, uint64_t first, uint64_t count) {
    PatternPool pool;
    pool.num_pis = num_pis;
    pool.base_count = count;
    size_t words = words_for_columns(count);
    pool.base.assign(num_pis, std::vector<uint64_t>(words, 0));
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t value = first + i;
        for (uint32_t p = 0; p < num_pis; ++p)
            if ((value >> p) & 1u) pool.base[p][i >> 6] |= uint64_t{1} << (i & 63);
    }
    return pool;
}

PatternPool PatternPool::from_patterns(uint32_t num_pis,
                                       const std::vector<std::vector<bool>>& patterns) {
    PatternPool pool;
    pool.num_pis = num_pis;
    pool.base_count = patterns.size();
    size_t words = words_for_columns(patterns.size());
    pool.base.assign(num_pis, std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < patterns.size(); ++i) {
        if (patterns[i].size() != num_pis)
            throw std::invalid_argument("pattern width mismatch");
        for (uint32_t p = 0; p < num_pis; ++p)
            if (patterns[i][p]) pool.base[p][i >> 6] |= uint64_t{1} << (i & 63);
    }
    return pool;
}

void PatternPool::dump(std::ostream& out) const {
    size_t nibbles = (num_pis + 3) / 4;
    for (size_t i = 0; i < columns(); ++i) {
        std::string line(nibbles, '0');
        for (uint32_t p = 0; p < num_pis; ++p) {
            if (!pi_value(p, i)) continue;
            size_t nib = nibbles - 1 - p / 4;
            int digit = (line[nib] <= '9' ? line[nib] - '0' : line[nib] - 'a' + 10);
            digit |= 1 << (p % 4);
            line[nib] = digit < 10 ? char('0' + digit) : char('a' + digit - 10);
        }
        out << line << '\n';
    }
}

PatternPool PatternPool::load(std::istream& in, uint32_t num_pis) {
    std::vector<std::vector<bool>> patterns;
    std::string line;
    while (in >> line) {
        std::vector<bool> bits(num_pis, false);
        for (size_t c = 0; c < line.size(); ++c) {
            char ch = line[line.size() - 1 - c];
            int digit;
            if (ch >= '0' && ch <= '9') digit = ch - '0';
            else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
            else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
            else throw std::invalid_argument("bad hex digit in pattern file");
            for (int b = 0; b < 4; ++b) {
                size_t pi = c * 4 + b;
                if (pi < num_pis && ((digit >> b) & 1)) bits[pi] = true;
            }
        }
        patterns.push_back(std::move(bits));
    }
    return from_patterns(num_pis, patterns);
}

PatternPool gen_patterns(uint32_t num_pis, size_t m, uint64_t seed) {
    if (m == 0) throw std::invalid_argument("gen_patterns: m must be >= 1");
    PatternPool pool;
    pool.num_pis = num_pis;
    pool.seed = seed;
    pool.base_count = m;
    size_t words = words_for_columns(m);
    uint64_t mask = tail_mask_for(m);
    pool.base.assign(num_pis, std::vector<uint64_t>(words, 0));
    for (uint32_t p = 0; p < num_pis; ++p) {
        SplitMix64 rng = SplitMix64::stream(seed, p);
        for (size_t w = 0; w < words; ++w) pool.base[p][w] = rng.next();
        if (words > 0) pool.base[p][words - 1] &= mask;
    }
    return pool;
}

SimState simulate(const AigNetwork& net, const PatternPool& pool) {
    if (pool.num_pis != net.num_pis())
        throw std::invalid_argument("simulate: PI count mismatch");

    SimState state;
    state.columns = pool.columns();
    state.words = words_for_columns(state.columns);
    state.tail_mask = tail_mask_for(state.columns);
    const size_t words = state.words;

    state.node_vals.assign(net.num_vars(), std::vector<uint64_t>(words, 0));
    // PIs: base segment words, then counterexample bits appended.
    for (uint32_t p = 0; p < net.num_pis(); ++p) {
        auto& vals = state.node_vals[p + 1];
        size_t base_words = pool.base_count / 64;
        for (size_t w = 0; w < base_words; ++w) vals[w] = pool.base[p][w];
        for (size_t i = base_words * 64; i < state.columns; ++i)
            if (pool.pi_value(p, i)) vals[i >> 6] |= uint64_t{1} << (i & 63);
    }

    for (uint32_t i = 0; i < net.and_count(); ++i) {
        const AndNode& n = net.ands()[i];
        const auto& lv = state.node_vals[n.left.var()];
        const auto& rv = state.node_vals[n.right.var()];
        auto& out = state.node_vals[net.and_var(i)];
        uint64_t lc = n.left.complemented() ? ~uint64_t{0} : 0;
        uint64_t rc = n.right.complemented() ? ~uint64_t{0} : 0;
        for (size_t w = 0; w < words; ++w) out[w] = (lv[w] ^ lc) & (rv[w] ^ rc);
        if (words > 0) out[words - 1] &= state.tail_mask;
    }

    state.po_vals.assign(net.po_count(), std::vector<uint64_t>(words, 0));
    for (uint32_t k = 0; k < net.po_count(); ++k) {
        Literal po = net.po(k);
        const auto& src = state.node_vals[po.var()];
        auto& out = state.po_vals[k];
        uint64_t c = po.complemented() ? ~uint64_t{0} : 0;
        for (size_t w = 0; w < words; ++w) out[w] = src[w] ^ c;
        if (words > 0) out[words - 1] &= state.tail_mask;
    }
    return state;
}

std::vector<std::vector<uint64_t>> resimulate_flip(const SimState& state,
                                                   const AigNetwork& net, Var node) {
    assert(node >= 1 && node < net.num_vars());
    const size_t words = state.words;

    // Overlay of recomputed value vectors, indexed by variable.
    std::vector<int32_t> slot(net.num_vars(), -1);
    std::vector<std::vector<uint64_t>> overlay;

    overlay.emplace_back(words);
    {
        const auto& orig = state.node_vals[node];
        auto& flipped = overlay.back();
        for (size_t w = 0; w < words; ++w) flipped[w] = ~orig[w];
        if (words > 0) flipped[words - 1] &= state.tail_mask;
        slot[node] = 0;
    }

    for (Var v = node + 1; v < net.num_vars(); ++v) {
        if (!net.is_and(v)) continue;
        const AndNode& n = net.node(v);
        int32_t ls = slot[n.left.var()], rs = slot[n.right.var()];
        if (ls < 0 && rs < 0) continue;  // outside the TFO cone
        const auto& lv = ls < 0 ? state.node_vals[n.left.var()] : overlay[ls];
        const auto& rv = rs < 0 ? state.node_vals[n.right.var()] : overlay[rs];
        std::vector<uint64_t> out(words);
        uint64_t lc = n.left.complemented() ? ~uint64_t{0} : 0;
        uint64_t rc = n.right.complemented() ? ~uint64_t{0} : 0;
        for (size_t w = 0; w < words; ++w) out[w] = (lv[w] ^ lc) & (rv[w] ^ rc);
        if (words > 0) out[words - 1] &= state.tail_mask;
        slot[v] = static_cast<int32_t>(overlay.size());
        overlay.push_back(std::move(out));
    }

    std::vector<std::vector<uint64_t>> indicators(net.po_count(),
                                                  std::vector<uint64_t>(words, 0));
    for (uint32_t k = 0; k < net.po_count(); ++k) {
        Var v = net.po(k).var();
        if (slot[v] < 0) continue;
        const auto& nv = overlay[slot[v]];
        const auto& ov = state.node_vals[v];
        auto& ind = indicators[k];
        for (size_t w = 0; w < words; ++w) ind[w] = nv[w] ^ ov[w];
    }
    return indicators;
}

mpz_class eval_on_counterexamples(const AigNetwork& golden, const AigNetwork& candidate,
                                  const PatternPool& pool, const ErrorSpec& spec) {
    if (golden.num_pis() != candidate.num_pis())
        throw std::invalid_argument("eval_on_counterexamples: PI count mismatch");
    if (pool.counterexamples.empty()) return 0;
    PatternPool cex = PatternPool::from_patterns(pool.num_pis, pool.counterexamples);
    SimState gs = simulate(golden, cex);
    SimState cs = simulate(candidate, cex);
    return lb_max_error(gs.po_vals, cs.po_vals, cex.columns(), spec);
}

}  // namespace als
