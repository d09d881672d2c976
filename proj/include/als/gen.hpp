#pragma once

#include <cstdint>

#include "als/aig.hpp"

namespace als {

// Reference circuit generators for tests and the `gen` subcommand. The
// arithmetic circuits are built cell by cell from textbook half/full adders
// without cross-cell structural sharing, so node counts are stable and the
// synthesis flow's own cleanup sees realistic redundancy.

// Unsigned ripple-carry adder: 2*width PIs (a bits then b bits, LSB first),
// width+1 POs with int(y) = a + b. width 1 is the canonical half adder.
AigNetwork gen_ripple_adder(uint32_t width);

// Unsigned carry-save array multiplier: 2*width PIs, 2*width POs,
// int(y) = a * b.
AigNetwork gen_array_multiplier(uint32_t width);

// Deterministic random AIG with n AND nodes; every node reachable from some
// PO.
AigNetwork gen_random_aig(uint32_t n, uint64_t seed);

// The canonical 2-PI half adder used across the test suites
// (n1 = !a&!b, n2 = a&b, n3 = !n1&!n2; POs: sum = n3, carry = n2).
AigNetwork gen_half_adder();

}  // namespace als
