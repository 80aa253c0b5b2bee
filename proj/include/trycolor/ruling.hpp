#pragma once

#include "trycolor/engine.hpp"
#include "trycolor/graph.hpp"
#include "trycolor/palette.hpp"
#include "trycolor/verify.hpp"

namespace trycolor {

struct RulingRun {
    RulingSet set;
    int B = 0;
    RunTrace trace;
    MessageAudit audit;
};

// (2, ceil(log_B C))-ruling set from a proper C-coloring in O(B log_B C)
// rounds. The palette is split recursively into B contiguous blocks; all
// leaf blocks run a greedy MIS by color class in parallel, then each level
// merges its children's survivors with a greedy MIS by block index. Every
// merge keeps dropped candidates within one hop of the result, so the
// domination radius telescopes to the recursion depth.
RulingRun ruling_from_coloring(const Graph& g, const Coloring& psi, int B);

struct BalancedRulingRun {
    RulingRun ruling;
    int colors = 0;           // palette handed to the ruling stage
    int coloring_rounds = 0;  // engine rounds spent computing that coloring
};

// (2, r)-ruling set: compute a coloring with roughly delta^(2r/(r+2)) colors
// (batch-size-1 run for r = 2, the epsilon composition with
// eps = (r-2)/(r+2) otherwise), then rule it with B = ceil(C^(1/r)).
BalancedRulingRun balanced_ruling_set(const Graph& g, const Coloring& phi, int r);

}  // namespace trycolor
