#include "trycolor/oneround.hpp"

#include <algorithm>
#include <bit>

#include "trycolor/errors.hpp"
#include "trycolor/sat.hpp"

namespace trycolor {

int k_max(int delta, int m) {
    if (delta < 1) throw ParameterError("k_max: delta must be >= 1");
    if (m < delta + 1) throw ParameterError("k_max: m below delta + 1 is out of range");
    int cap = std::min(delta - 1, (delta + 3) / 2);
    for (int k = cap; k >= 1; --k)
        if (static_cast<long long>(k) * (delta - k + 3) <= m) return k;
    return 0;
}

RuleOutcome one_round_rule(int delta, int palette, int k, int own, const std::vector<int>& nb) {
    if (own < 0 || own >= palette)
        throw ParameterError("one-round rule: color outside the palette");
    const int regime = delta - k + 2;   // |R_i|
    const int l = k * regime;           // output palette of the reduced block
    RuleOutcome out;

    if (own >= l + k) {  // padding colors keep their class, shifted below the recolor block
        out.option = 0;
        out.psi = own - k;
        return out;
    }
    if (own < l) {
        out.option = 1;
        out.psi = own;
        return out;
    }

    const int i = own - l;  // recoloring index in [0, k)
    bool all_low = true;
    for (int c : nb)
        if (c >= l) all_low = false;

    if (all_low) {
        out.option = 2;
        std::vector<char> taken(delta + 1, 0);
        for (int c : nb)
            if (c <= delta) taken[c] = 1;
        int pick = 0;
        while (pick <= delta && taken[pick]) ++pick;
        if (pick > delta)
            throw ContradictionError("one-round rule: no free color in [0, delta+1)");
        out.psi = pick;
        return out;
    }

    out.option = 3;
    std::vector<char> seen(k, 0);  // recoloring indices in the neighborhood
    for (int c : nb)
        if (c >= l && c < l + k) seen[c - l] = 1;

    auto regime_color = [&](int idx, int j) { return idx * regime + j; };
    out.free_set.reserve(regime + k);
    for (int j = 0; j < regime; ++j) out.free_set.push_back(regime_color(i, j));
    for (int j = i + 1; j < k; ++j)
        if (!seen[j]) out.free_set.push_back(regime_color(j, i));
    for (int j = 0; j < i; ++j)
        if (!seen[j]) out.free_set.push_back(regime_color(j, i - 1));

    std::vector<char> blocked(l, 0);
    for (int c : nb)
        if (c < l) blocked[c] = 1;
    int pick = -1;
    for (int c : out.free_set)
        if (!blocked[c] && (pick < 0 || c < pick)) pick = c;
    if (pick < 0)
        throw ContradictionError("one-round rule: free set exhausted; contradicts |F(v)| > d(v)");
    out.psi = pick;
    return out;
}

namespace {

class OneRoundProgram : public NodeProgram {
public:
    OneRoundProgram(int delta, int palette, int k)
        : delta_(delta), palette_(palette), k_(k), bits_(bits_for(palette)) {}

    std::any make_state(const NodeInit& init) const override { return init.input_color; }

    std::optional<Message> outbox(const std::any& state, int round) const override {
        if (round > 1) return std::nullopt;
        return Message::uint_payload(static_cast<std::uint64_t>(std::any_cast<int>(state)),
                                     bits_);
    }

    StepResult transition(std::any& state, int /*round*/, const Inbox& inbox) const override {
        std::vector<int> nb;
        for (const auto& msg : inbox)
            if (msg) nb.push_back(static_cast<int>(msg->uint_value()));
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        StepResult step;
        step.terminated = true;
        step.output = one_round_rule(delta_, palette_, k_, std::any_cast<int>(state), nb).psi;
        return step;
    }

private:
    int delta_;
    int palette_;
    int k_;
    int bits_;
};

}  // namespace

OneRoundResult reduce_one_round(const Graph& g, const Coloring& phi, int k) {
    const int delta = g.delta_bound();
    if (!is_proper(g, phi))
        throw StructuralError("reduce_one_round: input coloring must be proper");
    if (k < 1 || k > std::min(delta - 1, (delta + 3) / 2))
        throw ParameterError("reduce_one_round: k outside [1, min(delta-1, delta/2+3/2)]");
    if (phi.palette_size < k * (delta - k + 3))
        throw ParameterError("reduce_one_round: palette below k(delta-k+3)");

    OneRoundProgram prog(delta, phi.palette_size, k);
    SyncResult run = run_sync(g, phi, prog, 2);

    OneRoundResult out;
    out.coloring.palette_size = phi.palette_size - k;
    out.coloring.color.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        out.coloring.color[v] = std::any_cast<int>(run.outputs[v]);
    out.trace = std::move(run.trace);
    out.audit = std::move(run.audit);
    return out;
}

int ConfigGraph::find_vertex(int center, std::uint32_t mask) const {
    for (std::size_t id = 0; id < vertices.size(); ++id)
        if (vertices[id].center == center && vertices[id].mask == mask)
            return static_cast<int>(id);
    return -1;
}

ConfigGraph build_config_graph(int delta, int m, int max_vertices) {
    if (delta < 1 || m < 2) throw ParameterError("config graph needs delta >= 1, m >= 2");
    if (m > 30) throw CapacityError("config graph palette limited to 30 colors");

    ConfigGraph cg;
    cg.delta = delta;
    cg.m = m;
    for (int c = 0; c < m; ++c) {
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            if (mask & (1u << c)) continue;
            if (std::popcount(mask) > delta) continue;
            cg.vertices.push_back({c, mask});
            if (static_cast<int>(cg.vertices.size()) > max_vertices)
                throw CapacityError("config graph exceeds the vertex cap of " +
                                    std::to_string(max_vertices));
        }
    }

    cg.adj.resize(cg.vertices.size());
    for (std::size_t a = 0; a < cg.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < cg.vertices.size(); ++b) {
            const auto& va = cg.vertices[a];
            const auto& vb = cg.vertices[b];
            if (va.center == vb.center) continue;
            if (!(va.mask & (1u << vb.center))) continue;
            if (!(vb.mask & (1u << va.center))) continue;
            cg.adj[a].push_back(static_cast<int>(b));
            cg.adj[b].push_back(static_cast<int>(a));
            ++cg.edge_count;
        }
    return cg;
}

std::pair<Graph, Coloring> edge_witness(const ConfigGraph& cg, int a, int b) {
    const auto& va = cg.vertices[a];
    const auto& vb = cg.vertices[b];
    bool adjacent = va.center != vb.center && (va.mask >> vb.center & 1) &&
                    (vb.mask >> va.center & 1);
    if (!adjacent) throw ParameterError("edge_witness: not a config edge");

    std::vector<int> colors{va.center, vb.center};
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int c = 0; c < cg.m; ++c) {
        if (c != vb.center && (va.mask >> c & 1)) {
            colors.push_back(c);
            edges.emplace_back(0, static_cast<int>(colors.size()) - 1);
        }
    }
    for (int c = 0; c < cg.m; ++c) {
        if (c != va.center && (vb.mask >> c & 1)) {
            colors.push_back(c);
            edges.emplace_back(1, static_cast<int>(colors.size()) - 1);
        }
    }
    Graph g(static_cast<int>(colors.size()), cg.delta, std::move(edges));
    Coloring phi{cg.m, std::move(colors)};
    return {std::move(g), std::move(phi)};
}

std::vector<int> table_from_reduction(int delta, int m, int k) {
    if (m < k * (delta - k + 3))
        throw ParameterError("table_from_reduction: palette below k(delta-k+3)");
    ConfigGraph cg = build_config_graph(delta, m);
    std::vector<int> table(cg.vertices.size());
    for (std::size_t id = 0; id < cg.vertices.size(); ++id) {
        std::vector<int> nb;
        for (int c = 0; c < m; ++c)
            if (cg.vertices[id].mask >> c & 1) nb.push_back(c);
        table[id] = one_round_rule(delta, m, k, cg.vertices[id].center, nb).psi;
    }
    return table;
}

namespace {

// Bitset over kernel vertices.
class Bits {
public:
    explicit Bits(int n = 0) : words_((n + 63) / 64, 0) {}
    void set(int i) { words_[i >> 6] |= 1ull << (i & 63); }
    void clear(int i) { words_[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const { return words_[i >> 6] >> (i & 63) & 1; }
    bool subset_of(const Bits& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Removal {
    int vertex;
    int mirror;  // -1: extend greedily, else copy the mirror's color
};

// Deterministic saturation-ordered greedy attempt; returns an empty vector
// when more than q colors would be needed.
std::vector<int> dsatur_greedy(const std::vector<std::vector<int>>& adj, int q) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> color(n, -1);
    std::vector<std::uint64_t> forbidden(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            int sat = std::popcount(forbidden[v]);
            int deg = static_cast<int>(adj[v].size());
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        int pick = std::countr_one(forbidden[best]);
        if (pick >= q) return {};
        color[best] = pick;
        for (int u : adj[best]) forbidden[u] |= 1ull << pick;
    }
    return color;
}

}  // namespace

ColorabilityResult colorability(const ConfigGraph& cg, int q_out, long long budget) {
    const int n = static_cast<int>(cg.vertices.size());
    if (q_out < 0) throw ParameterError("colorability: q_out must be >= 0");
    if (q_out > 63) throw CapacityError("colorability: q_out limited to 63 colors");

    ColorabilityResult res;
    if (q_out == 0) {
        res.satisfiable = n == 0;
        res.kernel_size = n;
        return res;
    }

    // Kernelization: strip vertices with degree < q (always greedily
    // extendable) and dominated vertices (copy a non-adjacent vertex whose
    // neighborhood covers theirs). Sound in both directions for the decision.
    std::vector<char> active(n, 1);
    std::vector<Bits> nb_bits(n, Bits(n));
    std::vector<int> deg(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int u : cg.adj[v]) nb_bits[v].set(u);
        deg[v] = static_cast<int>(cg.adj[v].size());
    }
    std::vector<Removal> removals;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n && q_out > 0; ++v) {
            if (!active[v] || deg[v] >= q_out) continue;
            active[v] = 0;
            removals.push_back({v, -1});
            for (int u : cg.adj[v])
                if (active[u]) {
                    --deg[u];
                    nb_bits[u].clear(v);
                }
            nb_bits[v] = Bits(n);
            changed = true;
        }
        for (int v = 0; v < n; ++v) {
            if (!active[v]) continue;
            for (int u = 0; u < n; ++u) {
                if (u == v || !active[u] || nb_bits[v].test(u)) continue;
                if (!nb_bits[v].subset_of(nb_bits[u])) continue;
                active[v] = 0;
                removals.push_back({v, u});
                for (int w : cg.adj[v])
                    if (active[w]) {
                        --deg[w];
                        nb_bits[w].clear(v);
                    }
                nb_bits[v] = Bits(n);
                changed = true;
                break;
            }
        }
    }

    std::vector<int> kernel;
    for (int v = 0; v < n; ++v)
        if (active[v]) kernel.push_back(v);
    res.kernel_size = static_cast<int>(kernel.size());

    std::vector<int> full_color(n, -1);
    bool kernel_sat;
    if (kernel.empty()) {
        kernel_sat = true;
    } else {
        // Compacted kernel graph.
        std::vector<int> local_id(n, -1);
        for (std::size_t i = 0; i < kernel.size(); ++i) local_id[kernel[i]] = static_cast<int>(i);
        const int kn = static_cast<int>(kernel.size());
        std::vector<std::vector<int>> adj(kn);
        for (int v : kernel)
            for (int u : cg.adj[v])
                if (local_id[u] >= 0) adj[local_id[v]].push_back(local_id[u]);

        // Greedy clique grown from the densest vertex: a lower bound, and its
        // members pin the first colors, which also removes the color
        // symmetry whenever the clique has at least q - 1 members.
        std::vector<int> clique;
        {
            int seed = 0;
            for (int v = 1; v < kn; ++v)
                if (adj[v].size() > adj[seed].size()) seed = v;
            clique.push_back(seed);
            Bits common(kn);
            for (int u : adj[seed]) common.set(u);
            while (true) {
                int pick = -1;
                for (int v = 0; v < kn; ++v)
                    if (common.test(v) && (pick < 0 || adj[v].size() > adj[pick].size())) pick = v;
                if (pick < 0) break;
                clique.push_back(pick);
                Bits next(kn);
                for (int u : adj[pick]) next.set(u);
                Bits merged(kn);
                for (int v = 0; v < kn; ++v)
                    if (common.test(v) && next.test(v)) merged.set(v);
                common = merged;
            }
        }

        std::vector<int> kernel_color;
        if (static_cast<int>(clique.size()) > q_out) {
            kernel_sat = false;
        } else {
            kernel_color = dsatur_greedy(adj, q_out);
            kernel_sat = !kernel_color.empty();
        }

        if (!kernel_sat && static_cast<int>(clique.size()) <= q_out) {
            // Exhaustive verdict: conflict-learning search over the
            // vertex-color assignment variables, saturation-seeded branch
            // activities, clique colors pinned.
            CdclSolver solver(kn * q_out);
            auto var = [&](int v, int c) { return v * q_out + c; };
            bool consistent = true;
            for (std::size_t i = 0; i < clique.size() && consistent; ++i)
                consistent = solver.add_clause({CdclSolver::pos(var(clique[i], static_cast<int>(i)))});
            for (int v = 0; v < kn && consistent; ++v) {
                std::vector<int> alo;
                for (int c = 0; c < q_out; ++c) alo.push_back(CdclSolver::pos(var(v, c)));
                consistent = solver.add_clause(std::move(alo));
            }
            for (int v = 0; v < kn && consistent; ++v)
                for (int u : adj[v]) {
                    if (u < v) continue;
                    for (int c = 0; c < q_out && consistent; ++c)
                        consistent = solver.add_clause(
                            {CdclSolver::neg(var(v, c)), CdclSolver::neg(var(u, c))});
                }

            CdclSolver::Verdict verdict =
                consistent ? solver.solve(budget) : CdclSolver::Verdict::unsatisfiable;
            res.expansions = solver.conflicts();
            if (verdict == CdclSolver::Verdict::budget_exceeded)
                throw ResourceError("colorability: expansion budget exceeded (verdict unknown)");
            kernel_sat = verdict == CdclSolver::Verdict::satisfiable;
            if (kernel_sat) {
                kernel_color.assign(kn, -1);
                for (int v = 0; v < kn; ++v)
                    for (int c = 0; c < q_out; ++c)
                        if (solver.model_value(var(v, c))) {
                            kernel_color[v] = c;
                            break;
                        }
            }
        }

        if (kernel_sat)
            for (std::size_t i = 0; i < kernel.size(); ++i)
                full_color[kernel[i]] = kernel_color[i];
    }

    res.satisfiable = kernel_sat;
    if (!kernel_sat) return res;

    // Reconstruct the removed vertices in reverse removal order.
    for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
        if (it->mirror >= 0) {
            full_color[it->vertex] = full_color[it->mirror];
        } else {
            std::vector<char> taken(q_out, 0);
            for (int u : cg.adj[it->vertex])
                if (full_color[u] >= 0 && full_color[u] < q_out) taken[full_color[u]] = 1;
            int pick = 0;
            while (pick < q_out && taken[pick]) ++pick;
            if (pick >= q_out)
                throw ContradictionError("colorability: low-degree reconstruction failed");
            full_color[it->vertex] = pick;
        }
    }
    for (int v = 0; v < n; ++v)
        for (int u : cg.adj[v])
            if (full_color[v] == full_color[u])
                throw ContradictionError("colorability: witness is not proper");
    res.witness = std::move(full_color);
    return res;
}

TightnessReport tightness_check(int delta, int m, long long budget) {
    TightnessReport report;
    report.delta = delta;
    report.m = m;
    report.k = k_max(delta, m);
    report.q_sat = m - report.k;
    report.q_unsat = m - report.k - 1;

    ConfigGraph cg = build_config_graph(delta, m);
    report.config_vertices = static_cast<int>(cg.vertices.size());
    report.config_edges = cg.edge_count;

    ColorabilityResult sat = colorability(cg, report.q_sat, budget);
    report.sat_ok = sat.satisfiable;
    report.expansions_sat = sat.expansions;

    ColorabilityResult unsat = colorability(cg, report.q_unsat, budget);
    report.unsat_ok = !unsat.satisfiable;
    report.expansions_unsat = unsat.expansions;

    // Structural check behind the disjoint-candidate pigeonhole: across any
    // k+1 colors that could evade hardcoding, distinct-center configurations
    // containing the others are pairwise adjacent.
    report.cross_adjacency_complete = true;
    const int kk = report.k + 1;
    auto check_subset = [&](const std::vector<int>& T) {
        for (std::size_t ai = 0; ai < cg.vertices.size(); ++ai)
            for (std::size_t bi = ai + 1; bi < cg.vertices.size(); ++bi) {
                const auto& a = cg.vertices[ai];
                const auto& b = cg.vertices[bi];
                if (a.center == b.center) continue;
                bool a_in = false, b_in = false;
                for (int t : T) {
                    a_in |= t == a.center;
                    b_in |= t == b.center;
                }
                if (!a_in || !b_in) continue;
                bool a_cov = true, b_cov = true;
                for (int t : T) {
                    if (t != a.center && !(a.mask >> t & 1)) a_cov = false;
                    if (t != b.center && !(b.mask >> t & 1)) b_cov = false;
                }
                if (!a_cov || !b_cov) continue;
                if (!(a.mask >> b.center & 1) || !(b.mask >> a.center & 1))
                    report.cross_adjacency_complete = false;
            }
    };
    // Enumerate (k+1)-subsets of [m] if that stays small; the desk-scale
    // instances all do.
    if (kk <= m && kk <= 4) {
        std::vector<int> idx(kk);
        for (int i = 0; i < kk; ++i) idx[i] = i;
        while (true) {
            check_subset(idx);
            int pos = kk - 1;
            while (pos >= 0 && idx[pos] == m - kk + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int j = pos + 1; j < kk; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return report;
}

}  // namespace trycolor
