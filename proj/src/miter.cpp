#include "als/miter.hpp"

#include <stdexcept>

#include "als/builder.hpp"

namespace als {

namespace {

// Maps a network's live cone into the builder; returns its PO literals.
std::vector<Literal> copy_into(AigBuilder& b, const AigNetwork& net) {
    std::vector<char> live = live_mask(net);
    std::vector<Literal> map(net.num_vars(), Literal::constant(false));
    for (Var v = 1; v <= net.num_pis(); ++v) map[v] = b.pi(v - 1);
    for (Var v = net.num_pis() + 1; v < net.num_vars(); ++v) {
        if (!live[v]) continue;
        const AndNode& n = net.node(v);
        map[v] = b.and_(map[n.left.var()].xor_complement(n.left.complemented()),
                        map[n.right.var()].xor_complement(n.right.complemented()));
    }
    std::vector<Literal> pos;
    pos.reserve(net.po_count());
    for (Literal po : net.pos())
        pos.push_back(map[po.var()].xor_complement(po.complemented()));
    return pos;
}

struct AddOut {
    Literal sum;
    Literal carry;
};

AddOut full_add(AigBuilder& b, Literal a, Literal x, Literal cin) {
    Literal axb = b.xor_(a, x);
    return {b.xor_(axb, cin), b.or_(b.and_(a, x), b.and_(axb, cin))};
}

// Unsigned comparator against a constant: 1 iff value > bound.
Literal greater_than_const(AigBuilder& b, const std::vector<Literal>& value,
                           const mpz_class& bound) {
    Literal gt = b.constant(false);
    for (size_t i = 0; i < value.size(); ++i) {
        if (mpz_tstbit(bound.get_mpz_t(), i))
            gt = b.and_(value[i], gt);
        else
            gt = b.or_(value[i], gt);
    }
    return gt;
}

Literal maxed_exceeds(AigBuilder& b, const std::vector<Literal>& y,
                      const std::vector<Literal>& yh, const mpz_class& bound) {
    const size_t width = y.size();
    // diff = y - yh over width+1 bits two's complement: y + ~yh + 1.
    std::vector<Literal> diff(width + 1);
    Literal carry = b.constant(true);
    for (size_t i = 0; i <= width; ++i) {
        Literal a = i < width ? y[i] : b.constant(false);
        Literal x = i < width ? !yh[i] : b.constant(true);
        AddOut out = full_add(b, a, x, carry);
        diff[i] = out.sum;
        carry = out.carry;
    }
    Literal sign = diff[width];
    // |diff| = (diff xor sign) + sign, via an increment chain.
    std::vector<Literal> mag(width + 1);
    carry = sign;
    for (size_t i = 0; i <= width; ++i) {
        Literal x = b.xor_(diff[i], sign);
        mag[i] = b.xor_(x, carry);
        carry = b.and_(x, carry);
    }
    return greater_than_const(b, mag, bound);
}

Literal maxhd_exceeds(AigBuilder& b, const std::vector<Literal>& y,
                      const std::vector<Literal>& yh, const mpz_class& bound) {
    const size_t width = y.size();
    size_t count_bits = 1;
    while ((size_t{1} << count_bits) <= width) ++count_bits;
    std::vector<Literal> sum(count_bits, b.constant(false));
    for (size_t k = 0; k < width; ++k) {
        Literal carry = b.xor_(y[k], yh[k]);
        for (size_t i = 0; i < count_bits && !(carry.is_const(false)); ++i) {
            Literal t = b.xor_(sum[i], carry);
            carry = b.and_(sum[i], carry);
            sum[i] = t;
        }
    }
    return greater_than_const(b, sum, bound);
}

}  // namespace

AigNetwork build_miter(const AigNetwork& golden, const AigNetwork& approx,
                       const ErrorSpec& spec) {
    if (golden.num_pis() != approx.num_pis() || golden.po_count() != approx.po_count())
        throw std::invalid_argument("build_miter: interface mismatch");

    const uint32_t width = golden.po_count();
    AigBuilder b(golden.num_pis());

    // Trivial bound: no deviation can exceed it.
    mpz_class max_dev;
    if (spec.metric == Metric::MaxED) {
        mpz_ui_pow_ui(max_dev.get_mpz_t(), 2, width);
        max_dev -= 1;
    } else {
        max_dev = width;
    }

    Literal f;
    if (spec.bound >= max_dev || width == 0) {
        f = b.constant(false);
    } else {
        std::vector<Literal> y = copy_into(b, golden);
        std::vector<Literal> yh = copy_into(b, approx);
        if (spec.msb_first) {
            std::reverse(y.begin(), y.end());
            std::reverse(yh.begin(), yh.end());
        }
        f = spec.metric == Metric::MaxED ? maxed_exceeds(b, y, yh, spec.bound)
                                         : maxhd_exceeds(b, y, yh, spec.bound);
    }
    b.po(f);
    // Folding against constant bound bits strands intermediate nodes; sweep.
    AigNetwork net = cleanup(b.take());
    net.name = "miter";
    return net;
}

SatVerdict check_lac(const AigNetwork& golden, const AigNetwork& current, const Lac& lac,
                     const ErrorSpec& spec, uint64_t conflict_limit) {
    AigNetwork candidate = apply_lac(current, lac);
    return check_bound(golden, candidate, spec, conflict_limit);
}

SatVerdict check_bound(const AigNetwork& golden, const AigNetwork& approx,
                       const ErrorSpec& spec, uint64_t conflict_limit,
                       std::optional<std::chrono::steady_clock::time_point> deadline) {
    AigNetwork miter = build_miter(golden, approx, spec);
    Cnf cnf = aig_to_cnf(miter);
    return solve(cnf, conflict_limit, deadline);
}

}  // namespace als
