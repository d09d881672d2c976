#include "als/cnf.hpp"

#include <ostream>
#include <stdexcept>

namespace als {

namespace {

int to_dimacs(Literal lit) {
    int v = static_cast<int>(lit.var()) + 1;
    return lit.complemented() ? -v : v;
}

}  // namespace

Cnf aig_to_cnf(const AigNetwork& net) {
    if (net.po_count() != 1)
        throw std::invalid_argument("aig_to_cnf expects a single-PO network");

    Cnf cnf;
    cnf.num_vars = net.num_vars();
    cnf.pi_var_map.resize(net.num_pis());
    for (uint32_t i = 0; i < net.num_pis(); ++i) cnf.pi_var_map[i] = i + 2;

    bool const_used = net.po(0).var() == 0;
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        const AndNode& n = net.ands()[i];
        int c = static_cast<int>(net.and_var(i)) + 1;
        int a = to_dimacs(n.left);
        int b = to_dimacs(n.right);
        cnf.clauses.push_back({-c, a});
        cnf.clauses.push_back({-c, b});
        cnf.clauses.push_back({c, -a, -b});
        if (n.left.var() == 0 || n.right.var() == 0) const_used = true;
    }
    if (const_used) cnf.clauses.push_back({-1});
    cnf.clauses.push_back({to_dimacs(net.po(0))});
    return cnf;
}

void write_dimacs(const Cnf& cnf, std::ostream& out) {
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

SatVerdict solve(const Cnf& cnf, uint64_t conflict_limit,
                 std::optional<std::chrono::steady_clock::time_point> deadline) {
    sat::Solver solver(cnf.num_vars);
    for (const auto& clause : cnf.clauses) solver.add_clause(clause);

    SatVerdict verdict;
    verdict.kind = solver.solve(conflict_limit, deadline);
    verdict.conflicts_used = solver.conflicts();
    if (verdict.kind == sat::Result::Sat) {
        verdict.counterexample.resize(cnf.pi_var_map.size());
        for (size_t i = 0; i < cnf.pi_var_map.size(); ++i)
            verdict.counterexample[i] = solver.model_value(cnf.pi_var_map[i]);
    }
    return verdict;
}

}  // namespace als
