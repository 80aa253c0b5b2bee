// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Every tolerance is pinned here; wall-clock timings go to stderr.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "trycolor/mother.hpp"
#include "trycolor/oneround.hpp"
#include "trycolor/palette.hpp"
#include "trycolor/report.hpp"
#include "trycolor/ruling.hpp"
#include "trycolor/verify.hpp"

using namespace trycolor;

namespace {

struct AuditSample {
    int max_bits = 0;
    int budget = 0;
    long long violations = 0;
};

std::vector<AuditSample> g_audit;  // filled by criteria 1-5, checked by criterion 8
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

// ---------------------------------------------------------------- criterion 1
bool criterion1() {
    for (int delta : {4, 8, 16, 32}) {
        int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(delta))));
        for (int d : {0, root}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                Graph g = generate(GraphKind::random_bounded_degree, 1000, delta, seed);
                Coloring phi = greedy_input_coloring(g);
                MotherBounds base = derive_bounds({phi.palette_size, delta, d, 1});
                for (int k : {1, 2, 4, static_cast<int>(base.x)}) {
                    MotherParams p{phi.palette_size, delta, d, k};
                    MotherOutput out = run_mother(g, phi, p);
                    if (out.iterations_used > out.bounds.batch_rounds) return false;
                    if (out.psi.palette_size > out.bounds.q * std::min<long long>(k, out.bounds.q))
                        return false;
                    if (out.psi.palette_size > out.bounds.c) return false;
                    if (d == 0 && !verify_proper(g, out.psi).pass()) return false;
                    if (!verify_defect(g, out.psi, d).pass()) return false;
                    if (!verify_outdegree(g, out.psi, out.orientation, d).pass()) return false;
                    if (!verify_partition(g, out.psi, out.partition, d).pass()) return false;
                    g_audit.push_back({out.trace.max_message_bits, out.audit.bit_budget,
                                       static_cast<long long>(out.audit.violations.size())});
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2() {
    for (int delta : {4, 8, 16}) {
        long long m = 1;
        for (int i = 0; i < 4; ++i) m *= delta;
        Graph g = generate(GraphKind::random_bounded_degree, 500, delta, 42);
        Coloring phi = spread_coloring(greedy_input_coloring(g), static_cast<int>(m), 9);
        DerivedResult r = run_preset(g, phi, 1, 0, 0);
        if (r.stage_log[0].rounds != 1) return false;
        if (r.coloring.palette_size > 256ll * delta * delta) return false;
        if (!verify_proper(g, r.coloring).pass()) return false;
        g_audit.push_back({r.max_message_bits, r.bit_budget, r.audit_violations});
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3() {
    const int delta = 16;
    Graph g = generate(GraphKind::random_bounded_degree, 1000, delta, 4);
    Coloring phi = greedy_input_coloring(g);
    MotherBounds base = derive_bounds({phi.palette_size, delta, 0, 1});
    std::vector<int> ks;
    for (long long k = 1; k <= base.x; k *= 2) ks.push_back(static_cast<int>(k));
    if (ks.back() != base.x) ks.push_back(static_cast<int>(base.x));
    for (int k : ks) {
        MotherParams p{phi.palette_size, delta, 0, k};
        MotherBounds b = derive_bounds(p);
        if (b.batch_rounds != (b.q + k - 1) / k) return false;  // schedule, exact
        MotherOutput out = run_mother(g, phi, p);
        if (out.iterations_used > b.batch_rounds) return false;
        if (out.psi.palette_size > 16ll * delta * k) return false;
        if (!verify_proper(g, out.psi).pass()) return false;
        g_audit.push_back({out.trace.max_message_bits, out.audit.bit_budget,
                           static_cast<long long>(out.audit.violations.size())});
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4() {
    for (auto [delta, d] : std::vector<std::pair<int, int>>{{16, 4}, {25, 5}, {36, 6}}) {
        Graph g = generate(GraphKind::random_bounded_degree, 1000, delta, 8);
        Coloring phi = greedy_input_coloring(g);
        DerivedResult beta = run_preset(g, phi, 4, d, 0);
        if (!verify_outdegree(g, beta.coloring, *beta.orientation, d).pass()) return false;
        g_audit.push_back({beta.max_message_bits, beta.bit_budget, beta.audit_violations});
        DerivedResult def = run_preset(g, phi, 5, d, 0);
        if (def.stage_log[0].rounds != 1) return false;
        if (!verify_defect(g, def.coloring, d).pass()) return false;
        g_audit.push_back({def.max_message_bits, def.bit_budget, def.audit_violations});
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5() {
    for (int delta = 3; delta <= 16; ++delta) {
        for (int k = 1; k <= std::min(delta - 1, (delta + 3) / 2); ++k) {
            const int m = k * (delta - k + 3);
            const int l = k * (delta - k + 2);
            auto check = [&](const Graph& g, const Coloring& phi) {
                OneRoundResult r = reduce_one_round(g, phi, k);
                if (r.trace.rounds_used != 1) return false;
                if (r.coloring.palette_size != l) return false;
                if (!verify_proper(g, r.coloring).pass()) return false;
                g_audit.push_back({r.trace.max_message_bits, r.audit.bit_budget,
                                   static_cast<long long>(r.audit.violations.size())});
                return true;
            };

            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                Graph g = generate(GraphKind::random_bounded_degree, 80, delta, seed);
                Coloring phi = spread_coloring(greedy_input_coloring(g), m, seed + 1000);
                if (!check(g, phi)) return false;
            }
            {
                // Star: the center holds the top recoloring color, leaves mix
                // the other recoloring colors with low colors.
                Graph g = generate(GraphKind::star, delta + 1, delta, 0);
                Coloring phi{m, std::vector<int>(delta + 1, 0)};
                phi.color[0] = m - 1;
                int next_recolor = l;
                int next_low = 0;
                for (int v = 1; v <= delta; ++v)
                    phi.color[v] = next_recolor < m - 1 ? next_recolor++ : next_low++;
                if (!check(g, phi)) return false;
            }
            {
                // Clique on delta + 1 nodes covering every recoloring color.
                Graph g = generate(GraphKind::complete, delta + 1, delta, 0);
                Coloring phi{m, std::vector<int>(delta + 1, 0)};
                for (int v = 0; v < std::min(k, delta + 1); ++v) phi.color[v] = l + v;
                for (int v = k; v <= delta; ++v) phi.color[v] = v - k;
                if (!check(g, phi)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6() {
    auto expect = [&](int delta, int m, int k, bool check_cross) {
        TightnessReport t = tightness_check(delta, m);
        note("tightness(" + std::to_string(delta) + "," + std::to_string(m) +
             "): k=" + std::to_string(t.k) + " sat@" + std::to_string(t.q_sat) + "=" +
             (t.sat_ok ? "yes" : "NO") + " unsat@" + std::to_string(t.q_unsat) + "=" +
             (t.unsat_ok ? "yes" : "NO") + " conflicts=" + std::to_string(t.expansions_unsat));
        return t.k == k && t.sat_ok && t.unsat_ok && (!check_cross || t.cross_adjacency_complete);
    };
    if (!expect(2, 4, 1, true)) return false;
    if (!expect(2, 3, 0, false)) return false;
    if (!expect(3, 5, 1, true)) return false;
    if (!expect(3, 8, 2, true)) return false;
    return true;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7() {
    for (auto [q, f] : std::vector<std::pair<long long, int>>{{11, 2}, {37, 1}, {131, 4}}) {
        PrimeField field(q);
        std::mt19937_64 rng(4242);
        int done = 0;
        while (done < 10000) {
            Polynomial a, b;
            a.coefficients.resize(f + 1);
            b.coefficients.resize(f + 1);
            for (int i = 0; i <= f; ++i) {
                a.coefficients[i] = static_cast<long long>(bounded_draw(rng, q));
                b.coefficients[i] = static_cast<long long>(bounded_draw(rng, q));
            }
            if (a == b) continue;
            ++done;
            if (count_intersections(a, b, field) > std::max(a.degree(), b.degree()))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool criterion8() {
    if (g_audit.empty()) return false;
    long long violations = 0;
    int worst_bits = 0;
    for (const auto& s : g_audit) {
        violations += s.violations;
        worst_bits = std::max(worst_bits, s.max_bits);
        if (s.max_bits > s.budget) return false;
    }
    note("audit: " + std::to_string(g_audit.size()) + " runs, worst payload " +
         std::to_string(worst_bits) + " bits, violations " + std::to_string(violations));
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 9
bool criterion9() {
    // Frozen regression constant: colors_used <= c * delta^(3/2) with c = 4
    // (measured ratios 1.72 at delta 16, 1.35 at delta 25; see README).
    const double c = 4.0;
    for (int delta : {16, 25}) {
        Graph g = generate(GraphKind::random_bounded_degree, 1000, delta, 11);
        Coloring phi = identity_coloring(g);
        DerivedResult r = epsilon_coloring(g, phi, Ratio{1, 2});
        int d = epsilon_defect(delta, Ratio{1, 2});
        if (!verify_proper(g, r.coloring).pass()) return false;
        if (!r.stage_classes || !verify_defect(g, *r.stage_classes, d).pass()) return false;
        if (r.colors_used > c * std::pow(delta, 1.5)) return false;
        note("epsilon delta=" + std::to_string(delta) + ": colors_used=" +
             std::to_string(r.colors_used) + " rounds=" + std::to_string(r.rounds_used) +
             " (round bound not asserted: inner subroutine substituted)");
    }
    return true;
}

// --------------------------------------------------------------- criterion 10
bool criterion10() {
    const int c = 2;  // documented round-bound constant
    for (int r : {2, 3}) {
        for (int delta : {16, 27}) {
            Graph g = generate(GraphKind::random_bounded_degree, 1000, delta, 7);
            BalancedRulingRun run = balanced_ruling_set(g, identity_coloring(g), r);
            if (!verify_ruling(g, run.ruling.set).pass()) return false;
            if (run.ruling.set.measured_rounds > c * run.ruling.B * r) return false;
            note("ruling r=" + std::to_string(r) + " delta=" + std::to_string(delta) +
                 ": |S|=" + std::to_string(run.ruling.set.members.size()) +
                 " B=" + std::to_string(run.ruling.B) +
                 " rounds=" + std::to_string(run.ruling.set.measured_rounds));
        }
    }
    return true;
}

// --------------------------------------------------------------- criterion 11
bool criterion11() {
    const int delta = 8;
    Graph g = generate(GraphKind::random_bounded_degree, 500, delta, 21);
    Coloring phi = spread_coloring(greedy_input_coloring(g), 4096, 5);  // delta^4
    DerivedResult one = run_preset(g, phi, 1, 0, 0);
    const int m = one.coloring.palette_size;

    DerivedResult greedy = greedy_to_target(g, one.coloring, delta + 1);
    if (greedy.coloring.palette_size != delta + 1) return false;
    if (!verify_proper(g, greedy.coloring).pass()) return false;

    DerivedResult chop = chop_to_deltaplus1(g, one.coloring, Ratio{1, 1});
    if (chop.coloring.palette_size != delta + 1) return false;
    if (!verify_proper(g, chop.coloring).pass()) return false;
    int phases = chop_phase_count(chop);
    int bound = static_cast<int>(std::ceil(std::log2(static_cast<double>(m) / (delta + 1)))) + 1;
    note("finishers from palette " + std::to_string(m) + ": greedy rounds=" +
         std::to_string(greedy.rounds_used) + ", chop phases=" + std::to_string(phases) +
         " (bound " + std::to_string(bound) + ")");
    return phases <= bound;
}

// --------------------------------------------------------------- criterion 12
bool criterion12() {
    auto mother_report = [] {
        Graph g = generate(GraphKind::random_bounded_degree, 300, 16, 3);
        Coloring phi = greedy_input_coloring(g);
        MotherOutput out = run_mother(g, phi, {phi.palette_size, 16, 4, 2});
        Json j = to_json(out.trace, out.audit);
        j["palette"] = out.psi.palette_size;
        j["colors"] = out.psi.color;
        return j.dump();
    };
    auto tight_report = [] { return to_json(tightness_check(2, 4)).dump(); };
    auto ruling_report = [] {
        Graph g = generate(GraphKind::random_bounded_degree, 300, 16, 5);
        return to_json(balanced_ruling_set(g, identity_coloring(g), 2).ruling).dump();
    };
    auto eps_report = [] {
        Graph g = generate(GraphKind::random_bounded_degree, 400, 16, 9);
        return to_json(epsilon_coloring(g, identity_coloring(g), Ratio{1, 2})).dump();
    };
    if (mother_report() != mother_report()) return false;
    if (tight_report() != tight_report()) return false;
    if (ruling_report() != ruling_report()) return false;
    if (eps_report() != eps_report()) return false;
    return true;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        bool (*fn)();
    };
    const Entry entries[] = {
        {"criterion 1: batch-trial termination, palette, and verifier bounds", criterion1},
        {"criterion 2: one-iteration 256 delta^2 coloring", criterion2},
        {"criterion 3: batch-size trade-off schedule and palette", criterion3},
        {"criterion 4: outdegree and defect bounds, zero violations", criterion4},
        {"criterion 5: one-round reduction exact on all admissible k", criterion5},
        {"criterion 6: exact one-round frontier (oracle)", criterion6},
        {"criterion 7: polynomial intersection bound, 10^4 pairs per field", criterion7},
        {"criterion 8: message bits within 4*ceil(log2 max(n, m)) everywhere", criterion8},
        {"criterion 9: epsilon composition palette within frozen constant", criterion9},
        {"criterion 10: ruling sets valid with bounded measured rounds", criterion10},
        {"criterion 11: both finishers reach exactly delta + 1", criterion11},
        {"criterion 12: byte-identical reports across repeated runs", criterion12},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = entry.fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        std::cerr << entry.label << ": " << std::chrono::duration<double>(t1 - t0).count()
                  << "s\n";
        if (!ok) ++failures;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << entry.label;
        if (!error.empty()) std::cout << " (" << error << ")";
        std::cout << '\n';
    }
    for (const auto& s : g_notes) std::cout << "       " << s << '\n';
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
              << '\n';
    return failures;
}
