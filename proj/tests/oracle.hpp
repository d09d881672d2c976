#pragma once

// Independent reference implementations for the test suites. Everything here
// evaluates circuits one pattern at a time with plain scalar code, on purpose
// disjoint from the library's bit-parallel/word-level paths.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "als/aig.hpp"
#include "als/cnf.hpp"
#include "als/metrics.hpp"

namespace oracle {

// PI assignment for pattern index: PI p = bit p of idx.
std::vector<bool> pattern_bits(uint64_t idx, uint32_t num_pis);

// Scalar evaluation of every variable under one PI assignment.
std::vector<bool> eval_all(const als::AigNetwork& net, const std::vector<bool>& inputs);

// PO values under one PI assignment.
std::vector<bool> outputs(const als::AigNetwork& net, const std::vector<bool>& inputs);

// Direct integer encoding / deviation (bit loop, no word packing).
mpz_class encoded_int(const std::vector<bool>& bits, bool msb_first);
mpz_class deviation(const als::ErrorSpec& spec, const std::vector<bool>& y,
                    const std::vector<bool>& yhat);

// Exhaustive maximum error by scalar enumeration of all 2^I patterns.
mpz_class max_error(const als::AigNetwork& golden, const als::AigNetwork& approx,
                    const als::ErrorSpec& spec);

// Reachability from a node along explicit fanout edges (BFS).
std::vector<char> reachable_from(const als::AigNetwork& net, als::Var node);

// Truth of a CNF under a full assignment (assignment[v] for var v, 1-based).
bool cnf_satisfied(const als::Cnf& cnf, const std::vector<bool>& assignment);

// Exhaustive satisfiability check for small CNFs.
bool cnf_satisfiable(const als::Cnf& cnf);

// Functional equivalence of two equal-interface networks by enumeration.
bool equivalent(const als::AigNetwork& a, const als::AigNetwork& b);

}  // namespace oracle
