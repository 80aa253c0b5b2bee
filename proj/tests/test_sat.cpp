#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "trycolor/graph.hpp"
#include "trycolor/sat.hpp"

using namespace trycolor;

namespace {

// Exhaustive truth-table oracle for tiny formulas.
bool brute_force_sat(int num_vars, const std::vector<std::vector<int>>& clauses) {
    for (std::uint64_t m = 0; m < (1ull << num_vars); ++m) {
        bool ok = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (int lit : c) {
                int var = lit >> 1;
                bool val = (m >> var) & 1;
                if ((lit & 1) == 0 ? val : !val) sat = true;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("hand-picked formulas") {
    {
        CdclSolver s(2);  // (a | b) & (!a | b) & (a | !b) => a & b
        s.add_clause({CdclSolver::pos(0), CdclSolver::pos(1)});
        s.add_clause({CdclSolver::neg(0), CdclSolver::pos(1)});
        s.add_clause({CdclSolver::pos(0), CdclSolver::neg(1)});
        CHECK(s.solve(1000) == CdclSolver::Verdict::satisfiable);
        CHECK(s.model_value(0));
        CHECK(s.model_value(1));
    }
    {
        CdclSolver s(2);  // all four binary clauses: unsat
        s.add_clause({CdclSolver::pos(0), CdclSolver::pos(1)});
        s.add_clause({CdclSolver::neg(0), CdclSolver::pos(1)});
        s.add_clause({CdclSolver::pos(0), CdclSolver::neg(1)});
        s.add_clause({CdclSolver::neg(0), CdclSolver::neg(1)});
        CHECK(s.solve(1000) == CdclSolver::Verdict::unsatisfiable);
    }
    {
        CdclSolver s(1);
        s.add_clause({CdclSolver::pos(0)});
        CHECK_FALSE(s.add_clause({CdclSolver::neg(0)}));  // contradicts the unit
        CHECK(s.solve(1000) == CdclSolver::Verdict::unsatisfiable);
    }
}

TEST_CASE("pigeonhole 4 into 3 is unsatisfiable") {
    const int holes = 3, pigeons = 4;
    CdclSolver s(pigeons * holes);
    auto var = [&](int p, int h) { return p * holes + h; };
    for (int p = 0; p < pigeons; ++p) {
        std::vector<int> alo;
        for (int h = 0; h < holes; ++h) alo.push_back(CdclSolver::pos(var(p, h)));
        s.add_clause(alo);
    }
    for (int h = 0; h < holes; ++h)
        for (int p = 0; p < pigeons; ++p)
            for (int q = p + 1; q < pigeons; ++q)
                s.add_clause({CdclSolver::neg(var(p, h)), CdclSolver::neg(var(q, h))});
    CHECK(s.solve(100000) == CdclSolver::Verdict::unsatisfiable);
}

TEST_CASE("agrees with the truth-table oracle on random 3-CNF") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        int num_vars = 4 + static_cast<int>(bounded_draw(rng, 9));       // 4..12
        int num_clauses = 3 + static_cast<int>(bounded_draw(rng, 50));   // 3..52
        std::vector<std::vector<int>> clauses;
        for (int i = 0; i < num_clauses; ++i) {
            std::vector<int> c;
            int len = 1 + static_cast<int>(bounded_draw(rng, 3));
            for (int j = 0; j < len; ++j) {
                int var = static_cast<int>(bounded_draw(rng, num_vars));
                bool sign = bounded_draw(rng, 2) != 0;
                c.push_back(2 * var + (sign ? 1 : 0));
            }
            clauses.push_back(c);
        }
        CdclSolver solver(num_vars);
        bool consistent = true;
        for (const auto& c : clauses)
            if (!solver.add_clause(c)) consistent = false;
        CdclSolver::Verdict verdict =
            consistent ? solver.solve(1'000'000) : CdclSolver::Verdict::unsatisfiable;
        bool expect = brute_force_sat(num_vars, clauses);
        if (expect) {
            REQUIRE(verdict == CdclSolver::Verdict::satisfiable);
            // model check
            for (const auto& c : clauses) {
                bool sat = false;
                for (int lit : c) {
                    bool val = solver.model_value(lit >> 1);
                    if ((lit & 1) == 0 ? val : !val) sat = true;
                }
                CHECK(sat);
            }
        } else {
            REQUIRE(verdict == CdclSolver::Verdict::unsatisfiable);
        }
    }
}

TEST_CASE("budget exhaustion reports honestly") {
    // A formula needing some search with a budget of one conflict.
    const int holes = 4, pigeons = 5;
    CdclSolver s(pigeons * holes);
    auto var = [&](int p, int h) { return p * holes + h; };
    for (int p = 0; p < pigeons; ++p) {
        std::vector<int> alo;
        for (int h = 0; h < holes; ++h) alo.push_back(CdclSolver::pos(var(p, h)));
        s.add_clause(alo);
    }
    for (int h = 0; h < holes; ++h)
        for (int p = 0; p < pigeons; ++p)
            for (int q = p + 1; q < pigeons; ++q)
                s.add_clause({CdclSolver::neg(var(p, h)), CdclSolver::neg(var(q, h))});
    CHECK(s.solve(1) == CdclSolver::Verdict::budget_exceeded);
}
