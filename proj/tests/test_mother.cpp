#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "trycolor/errors.hpp"
#include "trycolor/mother.hpp"
#include "trycolor/verify.hpp"

using namespace trycolor;

namespace {

void check_output(const Graph& g, const MotherParams& p, const MotherOutput& out) {
    CHECK(out.iterations_used <= out.bounds.batch_rounds);
    CHECK(out.bounds.batch_rounds <= out.bounds.r);
    CHECK(out.psi.palette_size <= out.bounds.c);
    CHECK(verify_defect(g, out.psi, p.d).pass());
    CHECK(verify_outdegree(g, out.psi, out.orientation, p.d).pass());
    CHECK(verify_partition(g, out.psi, out.partition, p.d).pass());
    if (p.d == 0) CHECK(verify_proper(g, out.psi).pass());
    CHECK(out.audit.clean());
    CHECK(out.trace.max_message_bits <= out.audit.bit_budget);
    // active counts never increase
    for (std::size_t i = 1; i < out.trace.per_round_active.size(); ++i)
        CHECK(out.trace.per_round_active[i] <= out.trace.per_round_active[i - 1]);
}

}  // namespace

TEST_CASE("derived bounds") {
    MotherBounds b1 = derive_bounds({65536, 16, 0, 1});  // m = delta^4
    CHECK(b1.f == 4);
    CHECK(b1.q == 131);
    CHECK(b1.x == 256);

    MotherBounds b2 = derive_bounds({3, 2, 0, 1});
    CHECK(b2.f == 2);
    CHECK(b2.q == 11);
    CHECK(b2.x == 16);

    MotherBounds b3 = derive_bounds({16, 4, 1, 1});
    CHECK(b3.f == 4);
    CHECK(b3.q == 17);
    CHECK(b3.x == 32);

    CHECK(derive_bounds({65536, 16, 0, 256}).r == 1);
    CHECK_THROWS_AS(derive_bounds({65536, 16, 0, 257}), ParameterError);  // k > X
}

TEST_CASE("blocked tuples stay below the sequence length") {
    CHECK(blocked_bound({65536, 16, 0, 1}) == 128);  // f = 4, q = 131
    CHECK(blocked_bound({3, 2, 0, 1}) == 8);         // f = 2, q = 11
    CHECK(blocked_bound({2, 4, 1, 1}) == 4);         // f = 1, q = 5
}

TEST_CASE("triangle with k = q colors in one iteration") {
    Graph k3 = generate(GraphKind::complete, 3, 2, 0);
    Coloring phi = identity_coloring(k3);
    MotherBounds b = derive_bounds({3, 2, 0, 1});
    MotherParams p{3, 2, 0, static_cast<int>(b.q)};
    MotherOutput out = run_mother(k3, phi, p);
    CHECK(out.iterations_used == 1);
    CHECK(verify_proper(k3, out.psi).pass());
    std::set<int> distinct(out.psi.color.begin(), out.psi.color.end());
    CHECK(distinct.size() == 3);
    check_output(k3, p, out);
}

TEST_CASE("triangle with k = 1: active counts fall, everyone terminates") {
    Graph k3 = generate(GraphKind::complete, 3, 2, 0);
    MotherParams p{3, 2, 0, 1};
    MotherOutput out = run_mother(k3, identity_coloring(k3), p);
    CHECK(verify_proper(k3, out.psi).pass());
    for (std::size_t i = 1; i < out.trace.per_round_active.size(); ++i)
        CHECK(out.trace.per_round_active[i] <= out.trace.per_round_active[i - 1]);
    CHECK(out.trace.per_round_active.back() >= 1);
    check_output(k3, p, out);
}

TEST_CASE("4-ring with k = 1 stays within 2q engine rounds") {
    Graph ring = generate(GraphKind::ring, 4, 2, 0);
    Coloring phi{2, {0, 1, 0, 1}};
    MotherParams p{2, 2, 0, 1};
    MotherOutput out = run_mother(ring, phi, p);
    CHECK(verify_proper(ring, out.psi).pass());
    CHECK(out.trace.rounds_used <= 2 * out.bounds.q);
    check_output(ring, p, out);
}

TEST_CASE("3-path with d = 1 bounds defect and outdegree by 1") {
    Graph path(3, 2, {{0, 1}, {1, 2}});
    Coloring phi{3, {0, 1, 2}};
    MotherParams p{3, 3, 1, 1};
    MotherOutput out = run_mother(path, phi, p);
    check_output(path, p, out);
}

TEST_CASE("improper input coloring is rejected") {
    Graph ring = generate(GraphKind::ring, 4, 2, 0);
    Coloring bad{2, {0, 0, 1, 1}};
    CHECK_THROWS_AS(run_mother(ring, bad, MotherParams{2, 2, 0, 1}), StructuralError);
}

TEST_CASE("sweep over delta, d, k keeps every guarantee") {
    for (int delta : {4, 8, 16}) {
        Graph g = generate(GraphKind::random_bounded_degree, 150, delta, 77);
        Coloring phi = greedy_input_coloring(g);
        int m = phi.palette_size;
        for (int d : {0, 1, 2}) {
            if (delta <= d + 1) continue;
            MotherBounds b = derive_bounds({m, delta, d, 1});
            for (int k : {1, 2, static_cast<int>(b.q), static_cast<int>(b.x)}) {
                MotherParams p{m, delta, d, k};
                MotherOutput out = run_mother(g, phi, p);
                check_output(g, p, out);
                if (k >= b.q) CHECK(out.iterations_used == 1);
            }
        }
    }
}

TEST_CASE("adjacent nodes share at most f trial positions") {
    // The conflict-pair bound: two adjacent nodes try an identical tuple in
    // at most f iterations over the whole run, checked offline by comparing
    // sequences position by position.
    Graph g = generate(GraphKind::random_bounded_degree, 60, 6, 9);
    Coloring phi = greedy_input_coloring(g);
    SequenceFamily fam(phi.palette_size, 6, 0, 2);
    for (const auto& [u, v] : g.edges()) {
        Polynomial pu = fam.assign_polynomial(phi.color[u]);
        Polynomial pv = fam.assign_polynomial(phi.color[v]);
        CHECK(count_intersections(pu, pv, fam.field()) <= fam.degree_cap());
    }
}

TEST_CASE("per-class run confines conflicts to class subgraphs") {
    Graph g = generate(GraphKind::random_bounded_degree, 120, 8, 13);
    Coloring phi = greedy_input_coloring(g);
    Coloring classes{2, {}};
    classes.color.resize(120);
    for (int v = 0; v < 120; ++v) classes.color[v] = v % 2;
    // class subgraphs have degree at most 8 as well; use the same bound
    MotherParams p{phi.palette_size, 8, 0, 1};
    MotherOutput out = run_mother_per_class(g, classes, phi, p);
    // proper inside every class; cross-class edges may collide
    for (const auto& [u, v] : g.edges())
        if (classes.color[u] == classes.color[v]) CHECK(out.psi.color[u] != out.psi.color[v]);
}
