#include "als/sat_solver.hpp"

#include <algorithm>
#include <cassert>

namespace als::sat {

uint64_t luby(uint64_t i) {
    // Find the finite subsequence containing index i and its position.
    uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) / 2;
        --seq;
        i = i % size;
    }
    return uint64_t{1} << seq;
}

Solver::Solver(uint32_t num_vars)
    : watches_(2 * num_vars),
      assign_(num_vars, -1),
      phase_(num_vars, 0),
      level_(num_vars, 0),
      reason_(num_vars, kNoReason),
      activity_(num_vars, 0.0),
      heap_pos_(num_vars, kNoReason),
      seen_(num_vars, 0) {
    for (uint32_t v = 0; v < num_vars; ++v) heap_insert(v);
}

void Solver::add_clause(const std::vector<int>& lits) {
    if (unsat_) return;
    std::vector<Lit> clause;
    clause.reserve(lits.size());
    for (int l : lits) {
        assert(l != 0 && static_cast<uint32_t>(l > 0 ? l : -l) <= num_vars());
        clause.push_back(from_dimacs(l));
    }
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (size_t i = 0; i + 1 < clause.size(); ++i)
        if (clause[i] == negate(clause[i + 1])) return;  // tautology

    // Top-level simplification against already-fixed assignments.
    std::vector<Lit> kept;
    for (Lit l : clause) {
        int8_t v = value_of(l);
        if (v == 1 && level_[var_of(l)] == 0) return;     // satisfied forever
        if (v == 0 && level_[var_of(l)] == 0) continue;   // falsified forever
        kept.push_back(l);
    }
    if (kept.empty()) {
        unsat_ = true;
        return;
    }
    if (kept.size() == 1) {
        if (value_of(kept[0]) == 0) {
            unsat_ = true;
            return;
        }
        if (value_of(kept[0]) == -1) enqueue(kept[0], kNoReason);
        if (propagate() != kNoReason) unsat_ = true;
        return;
    }
    clauses_.push_back({std::move(kept), 0.0, false, false});
    watch_clause(static_cast<uint32_t>(clauses_.size() - 1));
}

void Solver::watch_clause(uint32_t cref) {
    const auto& c = clauses_[cref].lits;
    watches_[negate(c[0])].push_back({cref, c[1]});
    watches_[negate(c[1])].push_back({cref, c[0]});
}

void Solver::enqueue(Lit l, uint32_t reason) {
    uint32_t v = var_of(l);
    assert(assign_[v] == -1);
    assign_[v] = static_cast<int8_t>(1 ^ (l & 1u));
    level_[v] = static_cast<uint32_t>(trail_lim_.size());
    reason_[v] = reason;
    trail_.push_back(l);
}

uint32_t Solver::propagate() {
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];  // p just became true; visit clauses watching ~p
        auto& ws = watches_[p];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            Watcher w = ws[i];
            if (value_of(w.blocker) == 1) {
                ws[keep++] = w;
                continue;
            }
            Clause& c = clauses_[w.cref];
            auto& lits = c.lits;
            Lit false_lit = negate(p);
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            assert(lits[1] == false_lit);
            if (value_of(lits[0]) == 1) {
                ws[keep++] = {w.cref, lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t j = 2; j < lits.size(); ++j) {
                if (value_of(lits[j]) != 0) {
                    std::swap(lits[1], lits[j]);
                    watches_[negate(lits[1])].push_back({w.cref, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = {w.cref, lits[0]};
            if (value_of(lits[0]) == 0) {
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                return w.cref;
            }
            enqueue(lits[0], w.cref);
        }
        ws.resize(keep);
    }
    return kNoReason;
}

void Solver::analyze(uint32_t confl, std::vector<Lit>& learnt, uint32_t& backtrack_level) {
    learnt.clear();
    learnt.push_back(0);  // slot for the asserting literal
    uint32_t counter = 0;
    Lit p = 0;
    bool have_p = false;
    size_t index = trail_.size();
    uint32_t current_level = static_cast<uint32_t>(trail_lim_.size());

    for (;;) {
        assert(confl != kNoReason);
        Clause& c = clauses_[confl];
        if (c.learnt) bump_clause(c);
        for (size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j) {
            Lit q = c.lits[j];
            uint32_t v = var_of(q);
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump_var(v);
            if (level_[v] >= current_level) {
                ++counter;
            } else {
                learnt.push_back(q);
            }
        }
        // Next literal on the trail that contributed to the conflict.
        while (!seen_[var_of(trail_[index - 1])]) --index;
        p = trail_[--index];
        have_p = true;
        uint32_t v = var_of(p);
        seen_[v] = 0;
        confl = reason_[v];
        if (--counter == 0) break;
        // The first iteration consumes the whole conflict clause; afterwards
        // reasons are examined with their asserting literal skipped.
    }
    learnt[0] = negate(p);

    backtrack_level = 0;
    if (learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
        std::swap(learnt[1], learnt[max_i]);
        backtrack_level = level_[var_of(learnt[1])];
    }
    for (Lit l : learnt) seen_[var_of(l)] = 0;
}

void Solver::backtrack(uint32_t target) {
    if (trail_lim_.size() <= target) return;
    size_t bound = trail_lim_[target];
    for (size_t i = trail_.size(); i-- > bound;) {
        uint32_t v = var_of(trail_[i]);
        phase_[v] = static_cast<uint8_t>(assign_[v]);
        assign_[v] = -1;
        reason_[v] = kNoReason;
        if (heap_pos_[v] == kNoReason) heap_insert(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(target);
    qhead_ = bound;
}

void Solver::bump_var(uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] != kNoReason) heap_update(v);
}

void Solver::bump_clause(Clause& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
        for (Clause& cl : clauses_)
            if (cl.learnt) cl.activity *= 1e-20;
        clause_inc_ *= 1e-20;
    }
}

void Solver::decay_activities() {
    var_inc_ /= 0.95;
    clause_inc_ /= 0.999;
}

Solver::Lit Solver::pick_branch() {
    while (!heap_.empty()) {
        uint32_t v = heap_pop();
        if (assign_[v] == -1) return 2 * v + (phase_[v] ? 0u : 1u);
    }
    return kNoReason;
}

void Solver::reduce_db() {
    // Drop the least active half of the learnt clauses, keeping reasons.
    std::vector<uint32_t> learnts;
    for (uint32_t i = 0; i < clauses_.size(); ++i)
        if (clauses_[i].learnt && !clauses_[i].deleted) learnts.push_back(i);
    if (learnts.size() < 100) return;
    std::stable_sort(learnts.begin(), learnts.end(), [&](uint32_t a, uint32_t b) {
        return clauses_[a].activity < clauses_[b].activity;
    });
    std::vector<char> is_reason(clauses_.size(), 0);
    for (Lit l : trail_) {
        uint32_t r = reason_[var_of(l)];
        if (r != kNoReason) is_reason[r] = 1;
    }
    size_t to_delete = learnts.size() / 2;
    size_t deleted = 0;
    for (uint32_t idx : learnts) {
        if (deleted >= to_delete) break;
        if (is_reason[idx] || clauses_[idx].lits.size() <= 2) continue;
        clauses_[idx].deleted = true;
        clauses_[idx].lits.clear();
        clauses_[idx].lits.shrink_to_fit();
        ++deleted;
        --num_learnts_;
    }
    rebuild_watches();
}

void Solver::rebuild_watches() {
    for (auto& ws : watches_) ws.clear();
    for (uint32_t i = 0; i < clauses_.size(); ++i)
        if (!clauses_[i].deleted) watch_clause(i);
}

void Solver::heap_insert(uint32_t v) {
    heap_pos_[v] = static_cast<uint32_t>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void Solver::heap_update(uint32_t v) { heap_sift_up(heap_pos_[v]); }

uint32_t Solver::heap_pop() {
    uint32_t top = heap_[0];
    heap_pos_[top] = kNoReason;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_sift_down(0);
    }
    return top;
}

void Solver::heap_sift_up(size_t i) {
    uint32_t v = heap_[i];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (!heap_less(heap_[parent], v)) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = static_cast<uint32_t>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<uint32_t>(i);
}

void Solver::heap_sift_down(size_t i) {
    uint32_t v = heap_[i];
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && heap_less(heap_[child], heap_[child + 1])) ++child;
        if (!heap_less(v, heap_[child])) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = static_cast<uint32_t>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<uint32_t>(i);
}

Result Solver::solve(uint64_t conflict_limit,
                     std::optional<std::chrono::steady_clock::time_point> deadline) {
    if (unsat_) return Result::Unsat;
    if (propagate() != kNoReason) {
        unsat_ = true;
        return Result::Unsat;
    }

    conflicts_ = 0;
    uint64_t restart_index = 1;
    uint64_t restart_budget = 100 * luby(restart_index);
    uint64_t conflicts_at_restart = 0;
    uint64_t reduce_at = 2000;
    std::vector<Lit> learnt;

    for (;;) {
        uint32_t confl = propagate();
        if (confl != kNoReason) {
            ++conflicts_;
            if (trail_lim_.empty()) {
                unsat_ = true;
                return Result::Unsat;
            }
            if (conflicts_ > conflict_limit) return Result::Unknown;
            if (deadline && (conflicts_ & 1023) == 0 &&
                std::chrono::steady_clock::now() > *deadline)
                return Result::Unknown;

            uint32_t back_level = 0;
            analyze(confl, learnt, back_level);
            backtrack(back_level);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                clauses_.push_back({learnt, clause_inc_, true, false});
                ++num_learnts_;
                watch_clause(static_cast<uint32_t>(clauses_.size() - 1));
                enqueue(learnt[0], static_cast<uint32_t>(clauses_.size() - 1));
            }
            decay_activities();

            if (conflicts_ - conflicts_at_restart >= restart_budget) {
                conflicts_at_restart = conflicts_;
                restart_budget = 100 * luby(++restart_index);
                backtrack(0);
            }
            if (num_learnts_ >= reduce_at) {
                reduce_db();
                reduce_at += 500;
            }
        } else {
            Lit next = pick_branch();
            if (next == kNoReason) return Result::Sat;
            trail_lim_.push_back(trail_.size());
            enqueue(next, kNoReason);
        }
    }
}

bool Solver::model_value(uint32_t var) const {
    assert(var >= 1 && var <= num_vars());
    return assign_[var - 1] == 1;
}

}  // namespace als::sat
