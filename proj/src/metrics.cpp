#include "als/metrics.hpp"

#include <bit>
#include <stdexcept>

#include "als/simulator.hpp"

namespace als {

const char* metric_name(Metric m) {
    return m == Metric::MaxED ? "max-ed" : "max-hd";
}

namespace {

size_t words_for(uint32_t bits) { return (bits + 63) / 64; }

mpz_class encode(std::span<const uint64_t> v, uint32_t width, bool msb_first) {
    mpz_class out = 0;
    for (uint32_t k = 0; k < width; ++k) {
        if ((v[k >> 6] >> (k & 63)) & 1u)
            mpz_setbit(out.get_mpz_t(), msb_first ? width - 1 - k : k);
    }
    return out;
}

}  // namespace

mpz_class deviation(const ErrorSpec& spec, std::span<const uint64_t> y,
                    std::span<const uint64_t> yhat, uint32_t width) {
    if (y.size() < words_for(width) || yhat.size() < words_for(width))
        throw std::invalid_argument("deviation: word span narrower than PO width");
    if (spec.metric == Metric::MaxHD) {
        uint64_t count = 0;
        for (uint32_t k = 0; k < width; ++k) {
            uint64_t diff = (y[k >> 6] ^ yhat[k >> 6]) >> (k & 63);
            count += diff & 1u;
        }
        return mpz_class(static_cast<unsigned long>(count));
    }
    mpz_class a = encode(y, width, spec.msb_first);
    mpz_class b = encode(yhat, width, spec.msb_first);
    return abs(a - b);
}

mpz_class deviation(const ErrorSpec& spec, uint64_t y, uint64_t yhat, uint32_t width) {
    uint64_t ys[1] = {y};
    uint64_t hs[1] = {yhat};
    return deviation(spec, ys, hs, width);
}

mpz_class lb_max_error(std::span<const std::vector<uint64_t>> golden_po_values,
                       std::span<const std::vector<uint64_t>> approx_po_values,
                       size_t columns, const ErrorSpec& spec) {
    if (golden_po_values.size() != approx_po_values.size())
        throw std::invalid_argument("lb_max_error: PO width mismatch");
    const uint32_t width = static_cast<uint32_t>(golden_po_values.size());
    mpz_class best = 0;
    std::vector<uint64_t> y(words_for(width)), yh(words_for(width));
    for (size_t i = 0; i < columns; ++i) {
        size_t w = i >> 6;
        uint32_t b = i & 63;
        std::fill(y.begin(), y.end(), 0);
        std::fill(yh.begin(), yh.end(), 0);
        for (uint32_t k = 0; k < width; ++k) {
            y[k >> 6] |= ((golden_po_values[k][w] >> b) & 1u) << (k & 63);
            yh[k >> 6] |= ((approx_po_values[k][w] >> b) & 1u) << (k & 63);
        }
        mpz_class d = deviation(spec, y, yh, width);
        if (d > best) best = d;
    }
    return best;
}

mpz_class brute_force_max_error(const AigNetwork& golden, const AigNetwork& approx,
                                const ErrorSpec& spec, uint32_t pi_limit) {
    if (golden.num_pis() != approx.num_pis())
        throw std::invalid_argument("brute_force_max_error: PI count mismatch");
    if (golden.po_count() != approx.po_count())
        throw std::invalid_argument("brute_force_max_error: PO count mismatch");
    if (golden.num_pis() > pi_limit)
        throw std::invalid_argument("brute_force_max_error: PI count over exhaustive limit");

    const uint32_t num_pis = golden.num_pis();
    const uint32_t width = golden.po_count();
    const uint64_t total = uint64_t{1} << num_pis;
    const uint64_t chunk = std::min<uint64_t>(total, 4096);

    mpz_class best = 0;
    uint64_t fast_best = 0;
    const bool fast = width <= 64 && spec.metric == Metric::MaxED;

    for (uint64_t base = 0; base < total; base += chunk) {
        uint64_t count = std::min(chunk, total - base);
        PatternPool pool = PatternPool::counting(num_pis, base, count);
        SimState gs = simulate(golden, pool);
        SimState as = simulate(approx, pool);
        if (fast) {
            for (uint64_t i = 0; i < count; ++i) {
                uint64_t y = 0, yh = 0;
                size_t w = i >> 6;
                uint32_t b = i & 63;
                for (uint32_t k = 0; k < width; ++k) {
                    uint32_t pos = spec.msb_first ? width - 1 - k : k;
                    y |= ((gs.po_vals[k][w] >> b) & 1u) << pos;
                    yh |= ((as.po_vals[k][w] >> b) & 1u) << pos;
                }
                uint64_t d = y > yh ? y - yh : yh - y;
                if (d > fast_best) fast_best = d;
            }
        } else {
            mpz_class d = lb_max_error(gs.po_vals, as.po_vals, count, spec);
            if (d > best) best = d;
        }
    }
    if (fast) return mpz_class(static_cast<unsigned long>(fast_best));
    return best;
}

mpz_class parse_bound(const std::string& text) {
    std::string digits;
    long exp10 = 0;
    size_t i = 0;
    bool any = false;
    if (i < text.size() && text[i] == '+') ++i;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        digits += text[i];
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            digits += text[i];
            --exp10;
            any = true;
        }
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        long e = 0;
        bool any_e = false;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            e = e * 10 + (text[i] - '0');
            if (e > 1000000) throw std::invalid_argument("bound exponent too large");
            any_e = true;
        }
        if (!any_e) throw std::invalid_argument("malformed bound: '" + text + "'");
        exp10 += neg ? -e : e;
    }
    if (!any || i != text.size())
        throw std::invalid_argument("malformed bound: '" + text + "'");

    mpz_class mant(digits.empty() ? "0" : digits, 10);
    if (exp10 >= 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
        return mant * scale;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mant.get_mpz_t(), scale.get_mpz_t());
    if (r != 0)
        throw std::invalid_argument("bound is not an integer: '" + text + "'");
    return q;
}

mpz_class pow2_frac_floor(uint32_t o, uint32_t d) {
    if (d == 0) throw std::invalid_argument("pow2_frac_floor: zero denominator");
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, o);
    mpz_class r;
    mpz_root(r.get_mpz_t(), p.get_mpz_t(), d);
    return r;
}

}  // namespace als
