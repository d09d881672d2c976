#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "als/aig.hpp"
#include "als/sat_solver.hpp"

namespace als {

// Tseitin CNF of a single-PO network. Variable numbering: CNF var = AIG var
// + 1, so the constant-false variable is CNF var 1 (asserted by a unit clause
// only when referenced). Satisfiable iff some input makes the PO true.
struct Cnf {
    uint32_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<uint32_t> pi_var_map;  // PI index -> CNF variable
};

Cnf aig_to_cnf(const AigNetwork& net);

void write_dimacs(const Cnf& cnf, std::ostream& out);

// SAT/UNSAT/UNDEFINED outcome of one maximum-error check.
struct SatVerdict {
    sat::Result kind = sat::Result::Unknown;
    std::vector<bool> counterexample;  // PI assignment, present iff Sat
    uint64_t conflicts_used = 0;
};

// Budget-limited solve; Unknown iff the conflict budget (or deadline) ran
// out. A Sat verdict carries the model projected onto the PIs, don't-care
// variables read as 0.
SatVerdict solve(const Cnf& cnf, uint64_t conflict_limit,
                 std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

}  // namespace als
