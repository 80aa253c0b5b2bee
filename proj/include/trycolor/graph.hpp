#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trycolor {

// Immutable undirected graph with a declared maximum-degree bound. Adjacency
// lists are sorted; edges are stored canonically as (u, v) with u < v.
// Safe for unrestricted concurrent reads after construction.
class Graph {
public:
    Graph(int node_count, int delta_bound, std::vector<std::pair<int, int>> edge_list);

    int node_count() const { return node_count_; }
    int delta_bound() const { return delta_bound_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    std::span<const int> neighbors(int v) const {
        return {adjacency_.data() + offsets_[v],
                static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(int u, int v) const;
    int max_degree() const;

    // Canonical edge list, sorted, u < v per entry.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool operator==(const Graph&) const = default;

private:
    int node_count_;
    int delta_bound_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> offsets_;
    std::vector<int> adjacency_;
};

// Per-node colors in [0, palette_size). Whether the coloring is proper is a
// property of (graph, coloring), checked by is_proper / the verifiers.
struct Coloring {
    int palette_size = 0;
    std::vector<int> color;

    int distinct_count() const;
};

bool is_proper(const Graph& g, const Coloring& c);

// Orientation of a subset of the graph's edges; each undirected edge appears
// in at most one direction.
struct Orientation {
    std::vector<std::pair<int, int>> directed_edges;  // (from, to)
};

// Assignment of every node to a part in [1, part_count].
struct Partition {
    int part_count = 0;
    std::vector<int> part_index;
};

enum class GraphKind { ring, complete, star, random_bounded_degree };

GraphKind graph_kind_from_string(const std::string& name);

// Deterministic instance generator. random_bounded_degree draws candidate
// edges uniformly from a seeded mt19937_64 stream and then prunes greedily so
// that no degree exceeds delta.
Graph generate(GraphKind kind, int n, int delta, std::uint64_t seed);

// Sequential greedy coloring; palette is at most max_degree + 1 <= delta + 1.
Coloring greedy_input_coloring(const Graph& g);

// color(v) = v with palette n; models nodes that start from unique IDs.
Coloring identity_coloring(const Graph& g);

// Proper coloring with the same classes as `base` but colors injectively
// remapped into [0, new_palette) by a seeded shuffle. Used to fabricate
// m-colorings with m far above the greedy palette.
Coloring spread_coloring(const Coloring& base, int new_palette, std::uint64_t seed);

// Text formats:
//   graph file:    "graph <n> <edge_count> <delta>" then one "e <u> <v>" per
//                  edge, 0-indexed, u < v.
//   coloring file: "coloring <n> <m>" then one color per line.
Graph load_graph(std::istream& in);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, std::ostream& out);
void save_graph(const Graph& g, const std::string& path);

Coloring load_coloring(std::istream& in);
Coloring load_coloring(const std::string& path);
void save_coloring(const Coloring& c, std::ostream& out);
void save_coloring(const Coloring& c, const std::string& path);

// Bounded uniform draw used by every seeded component; avoids
// std::uniform_int_distribution, whose output is not pinned by the standard.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t upper);

}  // namespace trycolor
