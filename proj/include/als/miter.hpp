#pragma once

#include "als/aig.hpp"
#include "als/cnf.hpp"
#include "als/metrics.hpp"

namespace als {

// Error miter: a single-PO AIG over shared PIs whose output is 1 iff the
// deviation between the two circuits' outputs exceeds spec.bound. MaxED uses
// an (O+1)-bit two's-complement subtract, a conditional negate, and an
// unsigned greater-than comparator against the constant bound; MaxHD uses
// per-bit XORs, an adder-chain popcount, and the same comparator.
AigNetwork build_miter(const AigNetwork& golden, const AigNetwork& approx,
                       const ErrorSpec& spec);

// Applies the lac to `current`, miters the result against `golden`, and
// solves with the given conflict budget. A Sat verdict carries the
// counter-example input pattern.
SatVerdict check_lac(const AigNetwork& golden, const AigNetwork& current, const Lac& lac,
                     const ErrorSpec& spec, uint64_t conflict_limit);

// Miter + solve without applying anything (verify-style check).
SatVerdict check_bound(const AigNetwork& golden, const AigNetwork& approx,
                       const ErrorSpec& spec, uint64_t conflict_limit,
                       std::optional<std::chrono::steady_clock::time_point> deadline =
                           std::nullopt);

}  // namespace als
