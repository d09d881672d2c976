#include "oracle.hpp"

#include <cstdlib>
#include <stdexcept>

namespace oracle {

using als::AigNetwork;
using als::Literal;
using als::Var;

std::vector<bool> pattern_bits(uint64_t idx, uint32_t num_pis) {
    std::vector<bool> bits(num_pis);
    for (uint32_t p = 0; p < num_pis; ++p) bits[p] = (idx >> p) & 1u;
    return bits;
}

std::vector<bool> eval_all(const AigNetwork& net, const std::vector<bool>& inputs) {
    std::vector<bool> value(net.num_vars(), false);
    for (uint32_t p = 0; p < net.num_pis(); ++p) value[p + 1] = inputs[p];
    auto lit_val = [&](Literal l) { return value[l.var()] != l.complemented(); };
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        const als::AndNode& n = net.ands()[i];
        value[net.and_var(i)] = lit_val(n.left) && lit_val(n.right);
    }
    return value;
}

std::vector<bool> outputs(const AigNetwork& net, const std::vector<bool>& inputs) {
    std::vector<bool> value = eval_all(net, inputs);
    std::vector<bool> out(net.po_count());
    for (uint32_t k = 0; k < net.po_count(); ++k) {
        Literal po = net.po(k);
        out[k] = value[po.var()] != po.complemented();
    }
    return out;
}

mpz_class encoded_int(const std::vector<bool>& bits, bool msb_first) {
    mpz_class result = 0;
    for (size_t k = 0; k < bits.size(); ++k) {
        if (!bits[k]) continue;
        size_t weight = msb_first ? bits.size() - 1 - k : k;
        mpz_class term;
        mpz_ui_pow_ui(term.get_mpz_t(), 2, weight);
        result += term;
    }
    return result;
}

mpz_class deviation(const als::ErrorSpec& spec, const std::vector<bool>& y,
                    const std::vector<bool>& yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("oracle deviation width mismatch");
    if (spec.metric == als::Metric::MaxHD) {
        unsigned long count = 0;
        for (size_t k = 0; k < y.size(); ++k)
            if (y[k] != yhat[k]) ++count;
        return mpz_class(count);
    }
    mpz_class a = encoded_int(y, spec.msb_first);
    mpz_class b = encoded_int(yhat, spec.msb_first);
    return abs(a - b);
}

mpz_class max_error(const AigNetwork& golden, const AigNetwork& approx,
                    const als::ErrorSpec& spec) {
    if (golden.num_pis() > 22) throw std::invalid_argument("oracle: too many PIs");
    mpz_class best = 0;
    for (uint64_t idx = 0; idx < (uint64_t{1} << golden.num_pis()); ++idx) {
        std::vector<bool> bits = pattern_bits(idx, golden.num_pis());
        mpz_class d = deviation(spec, outputs(golden, bits), outputs(approx, bits));
        if (d > best) best = d;
    }
    return best;
}

std::vector<char> reachable_from(const AigNetwork& net, Var node) {
    std::vector<std::vector<Var>> fanouts(net.num_vars());
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        const als::AndNode& n = net.ands()[i];
        fanouts[n.left.var()].push_back(net.and_var(i));
        fanouts[n.right.var()].push_back(net.and_var(i));
    }
    std::vector<char> seen(net.num_vars(), 0);
    std::vector<Var> queue{node};
    while (!queue.empty()) {
        Var v = queue.back();
        queue.pop_back();
        for (Var u : fanouts[v])
            if (!seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
    }
    return seen;
}

bool cnf_satisfied(const als::Cnf& cnf, const std::vector<bool>& assignment) {
    for (const auto& clause : cnf.clauses) {
        bool sat = false;
        for (int lit : clause) {
            uint32_t v = static_cast<uint32_t>(std::abs(lit));
            if (assignment[v] == (lit > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool cnf_satisfiable(const als::Cnf& cnf) {
    if (cnf.num_vars > 24) throw std::invalid_argument("oracle: CNF too large");
    std::vector<bool> assignment(cnf.num_vars + 1, false);
    for (uint64_t mask = 0; mask < (uint64_t{1} << cnf.num_vars); ++mask) {
        for (uint32_t v = 1; v <= cnf.num_vars; ++v) assignment[v] = (mask >> (v - 1)) & 1u;
        if (cnf_satisfied(cnf, assignment)) return true;
    }
    return false;
}

bool equivalent(const AigNetwork& a, const AigNetwork& b) {
    if (a.num_pis() != b.num_pis() || a.po_count() != b.po_count()) return false;
    for (uint64_t idx = 0; idx < (uint64_t{1} << a.num_pis()); ++idx) {
        std::vector<bool> bits = pattern_bits(idx, a.num_pis());
        if (outputs(a, bits) != outputs(b, bits)) return false;
    }
    return true;
}

}  // namespace oracle
