#pragma once

#include <optional>
#include <string>

#include "trycolor/mother.hpp"

namespace trycolor {

// Exact rational in (0, 1] for the epsilon / chopping parameters; parsed from
// "p/q" or a short decimal like "0.5".
struct Ratio {
    long long num = 0;
    long long den = 1;

    static Ratio parse(const std::string& text);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct StageRecord {
    std::string stage;
    int palette_before = 0;
    int palette_after = 0;
    int rounds = 0;  // algorithm-level rounds of this stage
};

struct DerivedResult {
    Coloring coloring;
    int colors_used = 0;       // distinct colors present
    int rounds_used = 0;       // engine rounds summed over stages
    std::vector<StageRecord> stage_log;

    std::optional<Orientation> orientation;  // set by the outdegree variant
    std::optional<Partition> partition;
    std::optional<Coloring> stage_classes;   // the defective stage of the epsilon composition

    // Audit aggregated over all stages.
    int max_message_bits = 0;
    int bit_budget = 0;
    long long messages_sent = 0;
    int audit_violations = 0;
};

// The six standard parameter settings. `d` is the defect / outdegree target
// for parts 4-6, `k` the batch size for part 2; both ignored elsewhere.
//   1: d=0, k=X        one iteration, <= 256*delta^2 colors (needs m <= delta^4)
//   2: d=0, given k    <= 16*delta*k colors in ceil(q/k) iterations
//   3: d=0, k=ceil(delta/16)
//   4: d=beta, k=1     outdegree <= beta via the orientation
//   5: d,     k=X      one iteration, defect <= d
//   6: d,     k=1      color x part tuple, defect <= d
DerivedResult run_preset(const Graph& g, const Coloring& phi, int part, int d, int k);

// Iterate the part-1 parameterization with m = current palette until the
// palette is at most 256*delta^2 or a step would not shrink it.
DerivedResult linial_fixed_point(const Graph& g, const Coloring& phi);
int linial_outer_iterations(const DerivedResult& r);

// One color class removed per round, from palette-1 down to target; nodes of
// the removed class recolor to the smallest color in [0, target) absent from
// their neighborhood.
DerivedResult greedy_to_target(const Graph& g, const Coloring& psi, int target);

// Defective coloring (part 6) with d ~= delta^(1-eps), then a low-degree
// coloring of every class subgraph (k=1 batches plus the greedy finisher),
// final color = (class color, inner color).
DerivedResult epsilon_coloring(const Graph& g, const Coloring& phi, const Ratio& eps);

// The defect actually used by epsilon_coloring for this delta and eps.
int epsilon_defect(int delta, const Ratio& eps);

// Split the palette into blocks of ceil((1+eps)(delta+1)) colors, reduce each
// block to delta+1 colors in parallel with disjoint output spaces, repeat.
DerivedResult chop_to_deltaplus1(const Graph& g, const Coloring& phi, const Ratio& eps);

int chop_phase_count(const DerivedResult& r);

}  // namespace trycolor
