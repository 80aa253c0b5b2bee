#pragma once

#include <cstdint>
#include <vector>

namespace trycolor {

// Small conflict-driven clause-learning solver backing the exact coloring
// oracle. Deterministic: fixed heuristics, no randomization, stable
// tie-breaks, so verdicts and models are reproducible.
class CdclSolver {
public:
    explicit CdclSolver(int num_vars);

    // Literal encoding: 2*var for the positive, 2*var+1 for the negation.
    static int pos(int var) { return 2 * var; }
    static int neg(int var) { return 2 * var + 1; }

    // False literals are dropped, satisfied clauses skipped. Returns false if
    // the clause is empty after simplification (instant unsatisfiability).
    bool add_clause(std::vector<int> lits);

    enum class Verdict { satisfiable, unsatisfiable, budget_exceeded };

    Verdict solve(long long conflict_budget);

    bool model_value(int var) const { return model_[var]; }
    long long conflicts() const { return conflicts_; }

private:
    static constexpr int kUndef = 0, kTrue = 1, kFalse = -1;

    int value(int lit) const {
        int v = assign_[lit >> 1];
        return (lit & 1) ? -v : v;
    }

    void enqueue(int lit, int reason);
    int propagate();  // returns conflicting clause index or -1
    void analyze(int conflict, std::vector<int>& learned, int& backjump);
    void backtrack(int level);
    int pick_branch_var();
    void bump(int var);

    int num_vars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;  // per literal: clause indices
    std::vector<int> assign_;                // per var
    std::vector<int> level_;
    std::vector<int> reason_;                // clause index or -1
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<double> activity_;
    double activity_inc_ = 1.0;
    std::vector<char> phase_;
    std::vector<char> seen_;
    std::vector<char> model_;
    long long conflicts_ = 0;
    bool unsat_root_ = false;
};

}  // namespace trycolor
