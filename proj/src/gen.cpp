#include "als/gen.hpp"

#include <stdexcept>
#include <string>

#include "als/prng.hpp"

namespace als {

namespace {

// Textbook cells, one fresh node per gate (no hashing across cells).
Literal mk_and(AigNetwork& net, Literal a, Literal b) { return Literal::of(net.add_and(a, b)); }
Literal mk_or(AigNetwork& net, Literal a, Literal b) { return !mk_and(net, !a, !b); }
Literal mk_xor(AigNetwork& net, Literal a, Literal b) {
    return mk_and(net, !mk_and(net, a, b), !mk_and(net, !a, !b));
}

struct HalfAdd {
    Literal sum;
    Literal carry;
};

HalfAdd half_add(AigNetwork& net, Literal a, Literal b) {
    return {mk_xor(net, a, b), mk_and(net, a, b)};
}

struct FullAdd {
    Literal sum;
    Literal carry;
};

FullAdd full_add(AigNetwork& net, Literal a, Literal b, Literal cin) {
    Literal x = mk_xor(net, a, b);
    Literal sum = mk_xor(net, x, cin);
    Literal carry = mk_or(net, mk_and(net, a, b), mk_and(net, x, cin));
    return {sum, carry};
}

}  // namespace

AigNetwork gen_half_adder() {
    AigNetwork net(2);
    Literal a = Literal::of(1), b = Literal::of(2);
    Literal n1 = mk_and(net, !a, !b);
    Literal n2 = mk_and(net, a, b);
    Literal n3 = mk_and(net, !n1, !n2);
    net.add_po(n3);  // sum
    net.add_po(n2);  // carry
    net.name = "half_adder";
    return net;
}

AigNetwork gen_ripple_adder(uint32_t width) {
    if (width < 1 || width > 10)
        throw std::invalid_argument("gen_ripple_adder: width must be in [1, 10]");
    AigNetwork net(2 * width);
    auto a = [&](uint32_t i) { return Literal::of(1 + i); };
    auto b = [&](uint32_t i) { return Literal::of(1 + width + i); };

    HalfAdd first = half_add(net, a(0), b(0));
    net.add_po(first.sum);
    Literal carry = first.carry;
    std::vector<Literal> sums;
    for (uint32_t i = 1; i < width; ++i) {
        FullAdd fa = full_add(net, a(i), b(i), carry);
        sums.push_back(fa.sum);
        carry = fa.carry;
    }
    for (Literal s : sums) net.add_po(s);
    net.add_po(carry);
    net.name = "add" + std::to_string(width);
    return net;
}

AigNetwork gen_array_multiplier(uint32_t width) {
    if (width < 1 || width > 8)
        throw std::invalid_argument("gen_array_multiplier: width must be in [1, 8]");
    AigNetwork net(2 * width);
    auto a = [&](uint32_t i) { return Literal::of(1 + i); };
    auto b = [&](uint32_t i) { return Literal::of(1 + width + i); };

    // Carry-save array: row j adds the partial products a_i * b_j into a
    // running sum; carries shift one column left and ride along as a vector.
    std::vector<Literal> pos(2 * width, Literal::constant(false));

    std::vector<Literal> sum(width, Literal::constant(false));
    std::vector<Literal> carry(width, Literal::constant(false));
    for (uint32_t i = 0; i < width; ++i) sum[i] = mk_and(net, a(i), b(0));
    pos[0] = sum[0];

    for (uint32_t j = 1; j < width; ++j) {
        std::vector<Literal> next_sum(width, Literal::constant(false));
        std::vector<Literal> next_carry(width, Literal::constant(false));
        for (uint32_t i = 0; i < width; ++i) {
            Literal pp = mk_and(net, a(i), b(j));
            Literal above = i + 1 < width ? sum[i + 1] : Literal::constant(false);
            FullAdd fa = full_add(net, pp, above, carry[i]);
            next_sum[i] = fa.sum;
            next_carry[i] = fa.carry;
        }
        pos[j] = next_sum[0];
        sum = std::move(next_sum);
        carry = std::move(next_carry);
    }

    // Final ripple merge of the leftover sum/carry vectors.
    if (width == 1) {
        pos[1] = Literal::constant(false);
    } else {
        Literal ripple = Literal::constant(false);
        for (uint32_t i = 0; i + 1 < width; ++i) {
            FullAdd fa = full_add(net, sum[i + 1], carry[i], ripple);
            pos[width + i] = fa.sum;
            ripple = fa.carry;
        }
        HalfAdd top = half_add(net, carry[width - 1], ripple);
        pos[2 * width - 1] = top.sum;
    }

    for (Literal p : pos) net.add_po(p);
    net.name = "mult" + std::to_string(width);
    return net;
}

AigNetwork gen_random_aig(uint32_t n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random_aig: n must be >= 1");
    uint32_t num_pis = std::max<uint32_t>(2, std::min<uint32_t>(12, 2 + n / 8));
    AigNetwork net(num_pis);
    SplitMix64 rng = SplitMix64::stream(seed, 0xa16);

    for (uint32_t i = 0; i < n; ++i) {
        uint32_t limit = net.num_vars();
        Var lv = static_cast<Var>(1 + rng.below(limit - 1));
        Var rv = static_cast<Var>(1 + rng.below(limit - 1));
        if (rv == lv) rv = static_cast<Var>(1 + (lv % (limit - 1)));
        Literal l = Literal::of(lv, rng.below(2) == 1);
        Literal r = Literal::of(rv, rng.below(2) == 1);
        if (l.var() == r.var()) r = Literal::of(rv == 1 ? std::min(limit - 1, 2u) : 1, false);
        net.add_and(l, r);
    }

    // Every node with no fanout drives a PO, so nothing dangles.
    std::vector<uint32_t> fanouts(net.num_vars(), 0);
    for (const AndNode& nd : net.ands()) {
        ++fanouts[nd.left.var()];
        ++fanouts[nd.right.var()];
    }
    for (Var v = net.num_pis() + 1; v < net.num_vars(); ++v)
        if (fanouts[v] == 0) net.add_po(Literal::of(v, rng.below(2) == 1));
    if (net.po_count() == 0) net.add_po(Literal::of(net.num_vars() - 1));
    net.name = "rand" + std::to_string(n) + "_" + std::to_string(seed);
    return net;
}

}  // namespace als
