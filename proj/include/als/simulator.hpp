#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "als/aig.hpp"

namespace als {

struct ErrorSpec;

// Simulation patterns, 64 per machine word. The pool holds a seeded random
// base segment plus counter-example patterns harvested from SAT; both are fed
// to simulation as one sequence of columns (base first).
struct PatternPool {
    uint32_t num_pis = 0;
    uint64_t seed = 0;
    size_t base_count = 0;
    // base[pi][word]; bit i of word w = PI value under pattern 64*w + i.
    std::vector<std::vector<uint64_t>> base;
    // Each counterexample holds num_pis bits.
    std::vector<std::vector<bool>> counterexamples;

    size_t columns() const { return base_count + counterexamples.size(); }

    bool pi_value(uint32_t pi, size_t column) const;

    // Exhaustive pool over all 2^num_pis patterns; pattern i sets PI p to
    // bit p of i.
    static PatternPool exhaustive(uint32_t num_pis);
    // `count` consecutive counting patterns starting at `first`.
    static PatternPool counting(uint32_t num_pis, uint64_t first, uint64_t count);
    // Pool built from explicit patterns (each num_pis bits).
    static PatternPool from_patterns(uint32_t num_pis,
                                     const std::vector<std::vector<bool>>& patterns);

    // Hex dump/load, one pattern per line (PI 0 = least significant bit).
    void dump(std::ostream& out) const;
    static PatternPool load(std::istream& in, uint32_t num_pis);
};

// m uniform pseudo-random patterns per PI, deterministic in seed (splitmix64).
PatternPool gen_patterns(uint32_t num_pis, size_t m, uint64_t seed);

// Bit-parallel node values over a pattern pool. Tail bits beyond `columns`
// are kept zero in every vector.
struct SimState {
    size_t columns = 0;
    size_t words = 0;
    uint64_t tail_mask = ~uint64_t{0};
    std::vector<std::vector<uint64_t>> node_vals;  // [var][word]
    std::vector<std::vector<uint64_t>> po_vals;    // [po][word]

    bool node_value(Var v, size_t column) const {
        return (node_vals[v][column >> 6] >> (column & 63)) & 1u;
    }
};

SimState simulate(const AigNetwork& net, const PatternPool& pool);

// Per-PO flip indicators: bit i of result[k] = 1 iff forcing `node` to its
// complement under pattern i flips PO k. Event-driven over the TFO cone only;
// the input state is untouched.
std::vector<std::vector<uint64_t>> resimulate_flip(const SimState& state,
                                                   const AigNetwork& net, Var node);

// Maximum deviation over the pool's counterexample segment only (0 if empty).
mpz_class eval_on_counterexamples(const AigNetwork& golden, const AigNetwork& candidate,
                                  const PatternPool& pool, const ErrorSpec& spec);

}  // namespace als
