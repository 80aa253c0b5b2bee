#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trycolor/engine.hpp"
#include "trycolor/graph.hpp"

namespace trycolor {

// Largest k in [1, min(delta-1, floor(delta/2 + 3/2))] with m >= k(delta-k+3);
// 0 if no k qualifies. m below delta+1 is out of range; m above the quadratic
// cap saturates k at its cap.
int k_max(int delta, int m);

// Outcome of the per-node recolor rule, exposed for the disjointness checks.
struct RuleOutcome {
    int psi = -1;
    int option = 0;             // 0 pad-shift, 1 keep, 2 greedy, 3 regime steal
    std::vector<int> free_set;  // F(v), option 3 only
};

// The one-round recolor rule for a node with color `own` whose neighborhood
// shows the color set `nb` (sorted). palette is the full input palette; the
// k colors [l, l+k) recolor, colors >= l+k shift down by k, colors < l keep.
RuleOutcome one_round_rule(int delta, int palette, int k, int own, const std::vector<int>& nb);

struct OneRoundResult {
    Coloring coloring;
    RunTrace trace;
    MessageAudit audit;
};

// Single-round color reduction from palette m >= k(delta-k+3) to m-k colors.
OneRoundResult reduce_one_round(const Graph& g, const Coloring& phi, int k);

// The (own color, neighbor color set) state graph. Any one-round algorithm is
// exactly a proper coloring of this graph, so its chromatic number equals the
// best one-round output palette.
struct ConfigVertex {
    int center = 0;
    std::uint32_t mask = 0;  // neighbor color set, bit per color, center bit clear
};

struct ConfigGraph {
    int delta = 0;
    int m = 0;
    std::vector<ConfigVertex> vertices;
    std::vector<std::vector<int>> adj;
    long long edge_count = 0;

    int find_vertex(int center, std::uint32_t mask) const;
};

inline constexpr int kConfigVertexCap = 1200;

ConfigGraph build_config_graph(int delta, int m, int max_vertices = kConfigVertexCap);

// A realizing two-star gadget for a config edge: both endpoint views occur
// adjacently in this properly colored graph.
std::pair<Graph, Coloring> edge_witness(const ConfigGraph& cg, int a, int b);

// The reduction rule evaluated pointwise over every configuration; a proper
// (m-k)-coloring of the config graph.
std::vector<int> table_from_reduction(int delta, int m, int k);

struct ColorabilityResult {
    bool satisfiable = false;
    std::vector<int> witness;  // proper coloring with q_out colors when satisfiable
    long long expansions = 0;
    int kernel_size = 0;
};

inline constexpr long long kDefaultExpansionBudget = 50'000'000;

// Exact decision via branch and bound: dominated-vertex and low-degree
// elimination, then DSATUR-ordered search with forced-move propagation and a
// greedy clique seed. Deterministic verdict and witness; a blown budget is a
// resource error, never a wrong answer.
ColorabilityResult colorability(const ConfigGraph& cg, int q_out,
                                long long budget = kDefaultExpansionBudget);

struct TightnessReport {
    int delta = 0;
    int m = 0;
    int k = 0;
    int q_sat = 0;
    int q_unsat = 0;
    bool sat_ok = false;
    bool unsat_ok = false;
    long long expansions_sat = 0;
    long long expansions_unsat = 0;
    int config_vertices = 0;
    long long config_edges = 0;
    // Structural corroboration of the disjoint-candidate argument: across
    // every (k+1)-subset T of colors, configurations (x, S) with
    // T \ {x} inside S are pairwise adjacent for distinct x.
    bool cross_adjacency_complete = false;
};

// Asserts the one-round frontier: (m - k_max)-colorable, (m - k_max - 1) not.
TightnessReport tightness_check(int delta, int m,
                                long long budget = kDefaultExpansionBudget);

}  // namespace trycolor
