#include "trycolor/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "trycolor/engine.hpp"
#include "trycolor/errors.hpp"

namespace trycolor {

std::string to_string(VerifyKind kind) {
    switch (kind) {
        case VerifyKind::proper: return "proper";
        case VerifyKind::defect: return "defect";
        case VerifyKind::outdegree: return "outdegree";
        case VerifyKind::partition: return "partition";
        case VerifyKind::ruling: return "ruling";
        case VerifyKind::bandwidth: return "bandwidth";
    }
    return "?";
}

namespace {

void check_sizes(const Graph& g, const Coloring& c) {
    if (static_cast<int>(c.color.size()) != g.node_count())
        throw StructuralError("coloring size does not match graph");
    for (int v = 0; v < g.node_count(); ++v)
        if (c.color[v] < 0 || c.color[v] >= c.palette_size)
            throw StructuralError("color of node " + std::to_string(v) + " outside palette");
}

}  // namespace

ViolationReport verify_proper(const Graph& g, const Coloring& c) {
    check_sizes(g, c);
    ViolationReport report{VerifyKind::proper, {}};
    for (const auto& [u, v] : g.edges())
        if (c.color[u] == c.color[v]) report.violations.push_back({{u, v}, c.color[u], -1});
    return report;
}

ViolationReport verify_defect(const Graph& g, const Coloring& c, int d) {
    check_sizes(g, c);
    ViolationReport report{VerifyKind::defect, {}};
    for (int v = 0; v < g.node_count(); ++v) {
        int same = 0;
        for (int u : g.neighbors(v))
            if (c.color[u] == c.color[v]) ++same;
        if (same > d) report.violations.push_back({{v}, same, d});
    }
    return report;
}

ViolationReport verify_outdegree(const Graph& g, const Coloring& c, const Orientation& o,
                                 int beta) {
    check_sizes(g, c);
    std::map<std::pair<int, int>, int> oriented;  // canonical edge -> direction count
    std::vector<int> outdeg(g.node_count(), 0);
    for (const auto& [from, to] : o.directed_edges) {
        if (!g.has_edge(from, to))
            throw StructuralError("orientation covers non-edge (" + std::to_string(from) + ", " +
                                  std::to_string(to) + ")");
        if (c.color[from] != c.color[to])
            throw StructuralError("orientation covers bichromatic edge (" + std::to_string(from) +
                                  ", " + std::to_string(to) + ")");
        auto key = std::minmax(from, to);
        if (++oriented[{key.first, key.second}] > 1)
            throw StructuralError("edge oriented twice (" + std::to_string(from) + ", " +
                                  std::to_string(to) + ")");
        ++outdeg[from];
    }

    ViolationReport report{VerifyKind::outdegree, {}};
    for (const auto& [u, v] : g.edges()) {
        if (c.color[u] != c.color[v]) continue;
        if (!oriented.count({u, v})) report.violations.push_back({{u, v}, 0, 1});
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (outdeg[v] > beta) report.violations.push_back({{v}, outdeg[v], beta});
    return report;
}

ViolationReport verify_partition(const Graph& g, const Coloring& c, const Partition& p, int d) {
    check_sizes(g, c);
    if (static_cast<int>(p.part_index.size()) != g.node_count())
        throw StructuralError("partition size does not match graph");
    for (int v = 0; v < g.node_count(); ++v)
        if (p.part_index[v] < 1 || p.part_index[v] > p.part_count)
            throw StructuralError("part index of node " + std::to_string(v) + " out of range");

    ViolationReport report{VerifyKind::partition, {}};
    for (int v = 0; v < g.node_count(); ++v) {
        int same = 0;
        for (int u : g.neighbors(v))
            if (c.color[u] == c.color[v] && p.part_index[u] == p.part_index[v]) ++same;
        if (same > d) report.violations.push_back({{v}, same, d});
    }
    return report;
}

ViolationReport verify_bandwidth(const MessageAudit& audit) {
    ViolationReport report{VerifyKind::bandwidth, {}};
    for (const auto& v : audit.violations)
        report.violations.push_back({{v.from, v.to}, v.bits, audit.bit_budget});
    return report;
}

ViolationReport verify_ruling(const Graph& g, const RulingSet& s) {
    std::vector<char> member(g.node_count(), 0);
    for (int v : s.members) {
        if (v < 0 || v >= g.node_count())
            throw StructuralError("ruling set member " + std::to_string(v) + " out of range");
        member[v] = 1;
    }

    ViolationReport report{VerifyKind::ruling, {}};
    for (const auto& [u, v] : g.edges())
        if (member[u] && member[v]) report.violations.push_back({{u, v}, 0, -1});

    // Multi-source BFS from the members.
    std::vector<int> dist(g.node_count(), -1);
    std::deque<int> queue;
    for (int v = 0; v < g.node_count(); ++v)
        if (member[v]) {
            dist[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.neighbors(v))
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (dist[v] < 0 || dist[v] > s.r)
            report.violations.push_back({{v}, dist[v], s.r});
    return report;
}

}  // namespace trycolor

