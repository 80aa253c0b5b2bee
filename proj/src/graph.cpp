#include "trycolor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "trycolor/errors.hpp"

namespace trycolor {

namespace {

std::uint64_t pair_key(int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t upper) {
    // Rejection sampling on the top bits; exact and implementation-independent.
    if (upper == 0) return 0;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % upper;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % upper;
}

Graph::Graph(int node_count, int delta_bound, std::vector<std::pair<int, int>> edge_list)
    : node_count_(node_count), delta_bound_(delta_bound), edges_(std::move(edge_list)) {
    if (node_count_ < 1) throw ParameterError("graph needs at least one node");
    if (delta_bound_ < 1) throw ParameterError("delta bound must be >= 1");

    for (auto& [u, v] : edges_) {
        if (u > v) std::swap(u, v);
        if (u == v) throw StructuralError("self-loop at node " + std::to_string(u));
        if (u < 0 || v >= node_count_)
            throw StructuralError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ")");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw StructuralError("duplicate edge in edge list");

    std::vector<int> deg(node_count_, 0);
    for (const auto& [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    for (int v = 0; v < node_count_; ++v) {
        if (deg[v] > delta_bound_)
            throw StructuralError("node " + std::to_string(v) + " has degree " +
                                  std::to_string(deg[v]) + " > delta " +
                                  std::to_string(delta_bound_));
    }

    offsets_.assign(node_count_ + 1, 0);
    for (int v = 0; v < node_count_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adjacency_.resize(offsets_[node_count_]);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[cursor[u]++] = v;
        adjacency_[cursor[v]++] = u;
    }
    for (int v = 0; v < node_count_; ++v)
        std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
}

bool Graph::has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < node_count_; ++v) best = std::max(best, degree(v));
    return best;
}

int Coloring::distinct_count() const {
    std::set<int> seen(color.begin(), color.end());
    return static_cast<int>(seen.size());
}

bool is_proper(const Graph& g, const Coloring& c) {
    if (static_cast<int>(c.color.size()) != g.node_count()) return false;
    for (const auto& [u, v] : g.edges())
        if (c.color[u] == c.color[v]) return false;
    return true;
}

GraphKind graph_kind_from_string(const std::string& name) {
    if (name == "ring") return GraphKind::ring;
    if (name == "complete") return GraphKind::complete;
    if (name == "star") return GraphKind::star;
    if (name == "random") return GraphKind::random_bounded_degree;
    if (name == "random_bounded_degree") return GraphKind::random_bounded_degree;
    throw ParameterError("unknown graph kind: " + name);
}

Graph generate(GraphKind kind, int n, int delta, std::uint64_t seed) {
    if (n < 1) throw ParameterError("generate: n must be >= 1");
    if (delta < 1) throw ParameterError("generate: delta must be >= 1");

    std::vector<std::pair<int, int>> edges;
    switch (kind) {
        case GraphKind::ring: {
            if (n >= 3 && delta < 2) throw ParameterError("ring with n >= 3 needs delta >= 2");
            if (n == 2) edges.emplace_back(0, 1);
            if (n >= 3)
                for (int v = 0; v < n; ++v) edges.emplace_back(std::min(v, (v + 1) % n),
                                                               std::max(v, (v + 1) % n));
            break;
        }
        case GraphKind::complete: {
            if (delta < n - 1) throw ParameterError("complete graph needs delta >= n-1");
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            break;
        }
        case GraphKind::star: {
            if (delta < n - 1) throw ParameterError("star needs delta >= n-1");
            for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        }
        case GraphKind::random_bounded_degree: {
            std::mt19937_64 rng(seed);
            std::unordered_set<std::uint64_t> seen;
            std::vector<int> deg(n, 0);
            // Draw enough candidates that most degrees saturate near delta,
            // then prune in draw order.
            std::uint64_t attempts = 4ull * static_cast<std::uint64_t>(n) * delta;
            for (std::uint64_t t = 0; t < attempts; ++t) {
                int u = static_cast<int>(bounded_draw(rng, n));
                int v = static_cast<int>(bounded_draw(rng, n));
                if (u == v) continue;
                if (u > v) std::swap(u, v);
                if (!seen.insert(pair_key(u, v)).second) continue;
                if (deg[u] >= delta || deg[v] >= delta) continue;
                ++deg[u];
                ++deg[v];
                edges.emplace_back(u, v);
            }
            break;
        }
    }
    return Graph(n, delta, std::move(edges));
}

Coloring greedy_input_coloring(const Graph& g) {
    const int n = g.node_count();
    Coloring out;
    out.color.assign(n, -1);
    std::vector<int> taken(g.delta_bound() + 2, -1);
    int palette = 1;
    for (int v = 0; v < n; ++v) {
        for (int u : g.neighbors(v))
            if (out.color[u] >= 0) taken[out.color[u]] = v;
        int c = 0;
        while (taken[c] == v) ++c;
        out.color[v] = c;
        palette = std::max(palette, c + 1);
    }
    out.palette_size = palette;
    return out;
}

Coloring identity_coloring(const Graph& g) {
    Coloring out;
    out.palette_size = g.node_count();
    out.color.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) out.color[v] = v;
    return out;
}

Coloring spread_coloring(const Coloring& base, int new_palette, std::uint64_t seed) {
    if (new_palette < base.palette_size)
        throw ParameterError("spread_coloring: target palette smaller than source");
    std::vector<int> map(new_palette);
    for (int i = 0; i < new_palette; ++i) map[i] = i;
    std::mt19937_64 rng(seed);
    for (int i = new_palette - 1; i > 0; --i) {
        int j = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(map[i], map[j]);
    }
    Coloring out;
    out.palette_size = new_palette;
    out.color.resize(base.color.size());
    for (std::size_t v = 0; v < base.color.size(); ++v) out.color[v] = map[base.color[v]];
    return out;
}

Graph load_graph(std::istream& in) {
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("missing graph header", 1);
    ++line_no;
    std::istringstream head(line);
    std::string tag;
    int n = 0, edge_count = 0, delta = 0;
    if (!(head >> tag >> n >> edge_count >> delta) || tag != "graph")
        throw ParseError("expected 'graph <n> <edge_count> <delta>'", line_no);
    if (n < 1 || edge_count < 0 || delta < 1) throw ParseError("bad graph header values", line_no);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_count);
    std::set<std::pair<int, int>> seen;
    std::vector<int> deg(n, 0);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u = 0, v = 0;
        if (!(ls >> tag >> u >> v) || tag != "e")
            throw ParseError("expected 'e <u> <v>'", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("edge endpoint out of range", line_no);
        if (u == v) throw ParseError("self-loop", line_no);
        if (u > v) throw ParseError("edge must be listed with u < v", line_no);
        if (!seen.insert({u, v}).second) throw ParseError("duplicate edge", line_no);
        if (++deg[u] > delta || ++deg[v] > delta)
            throw ParseError("node degree exceeds declared delta", line_no);
        edges.emplace_back(u, v);
    }
    if (static_cast<int>(edges.size()) != edge_count)
        throw ParseError("edge count mismatch: header says " + std::to_string(edge_count) +
                             ", found " + std::to_string(edges.size()),
                         line_no + 1);
    return Graph(n, delta, std::move(edges));
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return load_graph(in);
}

void save_graph(const Graph& g, std::ostream& out) {
    out << "graph " << g.node_count() << ' ' << g.edge_count() << ' ' << g.delta_bound() << '\n';
    for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path, 0);
    save_graph(g, out);
}

Coloring load_coloring(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("missing coloring header", 1);
    ++line_no;
    std::istringstream head(line);
    std::string tag;
    int n = 0, m = 0;
    if (!(head >> tag >> n >> m) || tag != "coloring")
        throw ParseError("expected 'coloring <n> <m>'", line_no);
    if (n < 1 || m < 1) throw ParseError("bad coloring header values", line_no);

    Coloring c;
    c.palette_size = m;
    c.color.reserve(n);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int value = 0;
        if (!(ls >> value)) throw ParseError("expected a color value", line_no);
        if (value < 0 || value >= m) throw ParseError("color out of palette range", line_no);
        c.color.push_back(value);
    }
    if (static_cast<int>(c.color.size()) != n)
        throw ParseError("expected " + std::to_string(n) + " colors, found " +
                             std::to_string(c.color.size()),
                         line_no + 1);
    return c;
}

Coloring load_coloring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return load_coloring(in);
}

void save_coloring(const Coloring& c, std::ostream& out) {
    out << "coloring " << c.color.size() << ' ' << c.palette_size << '\n';
    for (int value : c.color) out << value << '\n';
}

void save_coloring(const Coloring& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path, 0);
    save_coloring(c, out);
}

}  // namespace trycolor
