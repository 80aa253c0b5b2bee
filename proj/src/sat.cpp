#include "trycolor/sat.hpp"

#include <algorithm>
#include <cmath>

#include "trycolor/errors.hpp"

namespace trycolor {

CdclSolver::CdclSolver(int num_vars)
    : num_vars_(num_vars),
      watches_(2 * num_vars),
      assign_(num_vars, kUndef),
      level_(num_vars, 0),
      reason_(num_vars, -1),
      activity_(num_vars, 0.0),
      phase_(num_vars, 0),
      seen_(num_vars, 0),
      model_(num_vars, 0) {}

bool CdclSolver::add_clause(std::vector<int> lits) {
    // Root-level simplification: drop false literals, skip satisfied or
    // tautological clauses, deduplicate.
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<int> kept;
    for (int lit : lits) {
        if (std::find(kept.begin(), kept.end(), lit ^ 1) != kept.end()) return true;  // taut
        int v = value(lit);
        if (v == kTrue && level_[lit >> 1] == 0) return true;
        if (v == kFalse && level_[lit >> 1] == 0) continue;
        kept.push_back(lit);
    }
    if (kept.empty()) {
        unsat_root_ = true;
        return false;
    }
    if (kept.size() == 1) {
        if (value(kept[0]) == kFalse) {
            unsat_root_ = true;
            return false;
        }
        if (value(kept[0]) == kUndef) enqueue(kept[0], -1);
        return true;
    }
    int id = static_cast<int>(clauses_.size());
    watches_[kept[0]].push_back(id);
    watches_[kept[1]].push_back(id);
    clauses_.push_back(std::move(kept));
    return true;
}

void CdclSolver::enqueue(int lit, int reason) {
    int var = lit >> 1;
    assign_[var] = (lit & 1) ? kFalse : kTrue;
    level_[var] = static_cast<int>(trail_lim_.size());
    reason_[var] = reason;
    trail_.push_back(lit);
}

int CdclSolver::propagate() {
    while (qhead_ < trail_.size()) {
        int p = trail_[qhead_++];        // p became true
        int false_lit = p ^ 1;
        std::vector<int>& watch = watches_[false_lit];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < watch.size(); ++i) {
            int ci = watch[i];
            std::vector<int>& c = clauses_[ci];
            // Normalize: the watched false literal sits at position 1.
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            if (value(c[0]) == kTrue) {
                watch[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t j = 2; j < c.size(); ++j) {
                if (value(c[j]) != kFalse) {
                    std::swap(c[1], c[j]);
                    watches_[c[1]].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            watch[keep++] = ci;  // stays watched
            if (value(c[0]) == kFalse) {
                // Conflict: restore untraversed watches and report.
                for (std::size_t j = i + 1; j < watch.size(); ++j) watch[keep++] = watch[j];
                watch.resize(keep);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        watch.resize(keep);
    }
    return -1;
}

void CdclSolver::bump(int var) {
    activity_[var] += activity_inc_;
    if (activity_[var] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        activity_inc_ *= 1e-100;
    }
}

void CdclSolver::analyze(int conflict, std::vector<int>& learned, int& backjump) {
    // First-UIP scheme.
    learned.clear();
    learned.push_back(0);  // slot for the asserting literal
    int counter = 0;
    int p = -1;
    int index = static_cast<int>(trail_.size()) - 1;
    int ci = conflict;
    const int cur_level = static_cast<int>(trail_lim_.size());

    do {
        const std::vector<int>& c = clauses_[ci];
        for (std::size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
            int q = c[j];
            int var = q >> 1;
            if (seen_[var] || level_[var] == 0) continue;
            seen_[var] = 1;
            bump(var);
            if (level_[var] == cur_level)
                ++counter;
            else
                learned.push_back(q);
        }
        while (!seen_[trail_[index] >> 1]) --index;
        p = trail_[index];
        seen_[p >> 1] = 0;
        --index;
        --counter;
        if (counter > 0) {
            ci = reason_[p >> 1];
            // Normalize the reason clause so its first literal is p.
            std::vector<int>& rc = clauses_[ci];
            if (rc[0] != p) {
                auto it = std::find(rc.begin(), rc.end(), p);
                std::iter_swap(rc.begin(), it);
            }
        }
    } while (counter > 0);
    learned[0] = p ^ 1;

    backjump = 0;
    for (std::size_t j = 1; j < learned.size(); ++j)
        backjump = std::max(backjump, level_[learned[j] >> 1]);
    // Move a literal of the backjump level into the second watch slot.
    if (learned.size() > 1) {
        std::size_t best = 1;
        for (std::size_t j = 2; j < learned.size(); ++j)
            if (level_[learned[j] >> 1] > level_[learned[best] >> 1]) best = j;
        std::swap(learned[1], learned[best]);
    }
    for (std::size_t j = 0; j < learned.size(); ++j) seen_[learned[j] >> 1] = 0;
}

void CdclSolver::backtrack(int target_level) {
    while (static_cast<int>(trail_lim_.size()) > target_level) {
        int mark = trail_lim_.back();
        trail_lim_.pop_back();
        while (static_cast<int>(trail_.size()) > mark) {
            int lit = trail_.back();
            trail_.pop_back();
            int var = lit >> 1;
            phase_[var] = assign_[var] == kTrue;
            assign_[var] = kUndef;
            reason_[var] = -1;
        }
    }
    qhead_ = trail_.size();
}

int CdclSolver::pick_branch_var() {
    int best = -1;
    for (int v = 0; v < num_vars_; ++v) {
        if (assign_[v] != kUndef) continue;
        if (best < 0 || activity_[v] > activity_[best]) best = v;
    }
    return best;
}

CdclSolver::Verdict CdclSolver::solve(long long conflict_budget) {
    if (unsat_root_) return Verdict::unsatisfiable;
    if (propagate() != -1) return Verdict::unsatisfiable;

    long long restart_limit = 100;
    long long conflicts_at_restart = 0;
    std::vector<int> learned;

    while (true) {
        int conflict = propagate();
        if (conflict != -1) {
            ++conflicts_;
            if (trail_lim_.empty()) return Verdict::unsatisfiable;
            if (conflicts_ >= conflict_budget) return Verdict::budget_exceeded;
            int backjump = 0;
            analyze(conflict, learned, backjump);
            backtrack(backjump);
            int id = static_cast<int>(clauses_.size());
            if (learned.size() == 1) {
                enqueue(learned[0], -1);
            } else {
                clauses_.push_back(learned);
                watches_[learned[0]].push_back(id);
                watches_[learned[1]].push_back(id);
                enqueue(learned[0], id);
            }
            activity_inc_ *= 1.0 / 0.95;
            continue;
        }

        if (conflicts_ - conflicts_at_restart >= restart_limit && !trail_lim_.empty()) {
            conflicts_at_restart = conflicts_;
            restart_limit = static_cast<long long>(restart_limit * 1.3) + 1;
            backtrack(0);
            continue;
        }

        int var = pick_branch_var();
        if (var < 0) {
            for (int v = 0; v < num_vars_; ++v) model_[v] = assign_[v] == kTrue;
            return Verdict::satisfiable;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(phase_[var] ? pos(var) : neg(var), -1);
    }
}

}  // namespace trycolor
