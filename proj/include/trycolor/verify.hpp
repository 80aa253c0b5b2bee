#pragma once

#include <string>
#include <vector>

#include "trycolor/graph.hpp"

namespace trycolor {

enum class VerifyKind { proper, defect, outdegree, partition, ruling, bandwidth };

std::string to_string(VerifyKind kind);

struct Violation {
    std::vector<int> nodes;   // nodes or edge endpoints involved
    long long measured = 0;
    long long bound = 0;
};

struct ViolationReport {
    VerifyKind kind = VerifyKind::proper;
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
};

// Monochromatic edges.
ViolationReport verify_proper(const Graph& g, const Coloring& c);

// Per-node same-color neighbor count vs d.
ViolationReport verify_defect(const Graph& g, const Coloring& c, int d);

// Every monochromatic edge oriented exactly once and per-node outdegree <= beta.
// An orientation entry over a non-edge or a bichromatic edge is a structural
// error, not a violation.
ViolationReport verify_outdegree(const Graph& g, const Coloring& c, const Orientation& o,
                                 int beta);

// Induced degree <= d inside every (color, part) cell.
ViolationReport verify_partition(const Graph& g, const Coloring& c, const Partition& p, int d);

struct RulingSet {
    std::vector<int> members;
    int r = 0;
    int measured_rounds = 0;
};

// Exact BFS check: members independent, every node within distance r of one.
ViolationReport verify_ruling(const Graph& g, const RulingSet& s);

// Message-size audit recast as a report: one violation per oversized payload.
ViolationReport verify_bandwidth(const struct MessageAudit& audit);

}  // namespace trycolor
