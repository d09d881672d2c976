#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace als::sat {

enum class Result : uint8_t { Sat, Unsat, Unknown };

// CDCL solver: two-watched-literal propagation, first-UIP learning, VSIDS
// with phase saving, Luby restarts, activity-based learnt clause reduction.
// Fully deterministic for a fixed clause sequence and budget.
//
// Literals are DIMACS-style nonzero signed ints over variables 1..num_vars.
class Solver {
public:
    explicit Solver(uint32_t num_vars);

    uint32_t num_vars() const { return static_cast<uint32_t>(assign_.size()); }

    void add_clause(const std::vector<int>& lits);

    // Runs until Sat/Unsat or until more than `conflict_limit` conflicts were
    // spent (then Unknown). An optional wall-clock deadline also yields
    // Unknown; verdicts reached before either limit are exact.
    Result solve(uint64_t conflict_limit,
                 std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

    // Model access after Sat; unassigned (unconstrained) variables read false.
    bool model_value(uint32_t var) const;

    uint64_t conflicts() const { return conflicts_; }

private:
    using Lit = uint32_t;  // 2*var + sign, var 0-based internally
    static constexpr uint32_t kNoReason = ~uint32_t{0};

    static Lit from_dimacs(int lit) {
        uint32_t v = static_cast<uint32_t>(lit > 0 ? lit : -lit) - 1;
        return 2 * v + (lit < 0 ? 1u : 0u);
    }
    static Lit negate(Lit l) { return l ^ 1u; }
    static uint32_t var_of(Lit l) { return l >> 1; }

    struct Clause {
        std::vector<Lit> lits;
        double activity = 0.0;
        bool learnt = false;
        bool deleted = false;
    };

    struct Watcher {
        uint32_t cref;
        Lit blocker;
    };

    // -1 unassigned, 0 false, 1 true (for the positive literal of the var).
    int8_t value_of(Lit l) const {
        int8_t a = assign_[var_of(l)];
        if (a < 0) return -1;
        return static_cast<int8_t>(a ^ static_cast<int8_t>(l & 1u));
    }

    void watch_clause(uint32_t cref);
    void enqueue(Lit l, uint32_t reason);
    uint32_t propagate();  // returns conflicting clause or kNoReason
    void analyze(uint32_t confl, std::vector<Lit>& learnt, uint32_t& backtrack_level);
    void backtrack(uint32_t level);
    void bump_var(uint32_t v);
    void bump_clause(Clause& c);
    void decay_activities();
    Lit pick_branch();
    void reduce_db();
    void rebuild_watches();

    // Indexed max-heap over variable activity.
    void heap_insert(uint32_t v);
    void heap_update(uint32_t v);
    uint32_t heap_pop();
    bool heap_empty() const { return heap_.empty(); }
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);
    bool heap_less(uint32_t a, uint32_t b) const {
        if (activity_[a] != activity_[b]) return activity_[a] < activity_[b];
        return a > b;  // lower index wins ties
    }

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;  // per literal
    std::vector<int8_t> assign_;                 // per var
    std::vector<uint8_t> phase_;                 // saved polarity, per var
    std::vector<uint32_t> level_;                // per var
    std::vector<uint32_t> reason_;               // per var
    std::vector<double> activity_;               // per var
    std::vector<Lit> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;

    std::vector<uint32_t> heap_;
    std::vector<uint32_t> heap_pos_;  // per var; kNoReason when absent

    std::vector<uint8_t> seen_;  // analyze scratch

    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
    uint64_t conflicts_ = 0;
    size_t num_learnts_ = 0;
    bool unsat_ = false;
};

// Luby restart sequence value for index i (1-based), used with a base interval.
uint64_t luby(uint64_t i);

}  // namespace als::sat
