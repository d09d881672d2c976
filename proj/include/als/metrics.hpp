#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "als/aig.hpp"

namespace als {

enum class Metric : uint8_t { MaxED, MaxHD };

// Error metric plus bound B. PO bit k carries weight 2^k by default
// (pos[0] least significant); msb_first flips the significance order for
// corpora encoded the other way around.
struct ErrorSpec {
    Metric metric = Metric::MaxED;
    mpz_class bound = 0;
    bool msb_first = false;
};

const char* metric_name(Metric m);

// Deviation between two PO words of `width` bits, packed 64 bits per word.
// MaxED: |int(y) - int(yhat)|; MaxHD: popcount(y ^ yhat). Exact at any width.
mpz_class deviation(const ErrorSpec& spec, std::span<const uint64_t> y,
                    std::span<const uint64_t> yhat, uint32_t width);

// Convenience overload for width <= 64.
mpz_class deviation(const ErrorSpec& spec, uint64_t y, uint64_t yhat, uint32_t width);

// Maximum deviation over the first `columns` patterns of two per-PO bitvector
// sets (golden[k] and approx[k] hold PO k's values, bit i = pattern i).
// This is the simulated lower bound on the true maximum error.
mpz_class lb_max_error(std::span<const std::vector<uint64_t>> golden_po_values,
                       std::span<const std::vector<uint64_t>> approx_po_values,
                       size_t columns, const ErrorSpec& spec);

// Exact maximum error by enumerating all 2^I input patterns.
// Throws std::invalid_argument beyond `pi_limit` PIs.
mpz_class brute_force_max_error(const AigNetwork& golden, const AigNetwork& approx,
                                const ErrorSpec& spec, uint32_t pi_limit = 20);

// Bound string parsing: plain decimal or scientific notation ("5.8E+07"),
// normalized to an exact nonnegative integer. Throws on non-integers.
mpz_class parse_bound(const std::string& text);

// floor(2^(o/d)) computed exactly as the integer d-th root of 2^o.
mpz_class pow2_frac_floor(uint32_t o, uint32_t d);

}  // namespace als
