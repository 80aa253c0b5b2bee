#include "trycolor/mother.hpp"

#include <algorithm>
#include <limits>

#include "trycolor/errors.hpp"

namespace trycolor {

namespace {

void validate_params(const MotherParams& p) {
    if (p.m < 1) throw ParameterError("mother: m must be >= 1");
    if (p.d < 0) throw ParameterError("mother: d must be >= 0");
    if (p.delta <= p.d + 1)
        throw ParameterError("mother: need delta/(d+1) > 1; d up to delta-2 is supported");
    if (p.k < 1) throw ParameterError("mother: k must be >= 1");
}

int encode_tuple(int first, long long q, int second) {
    return static_cast<int>(static_cast<long long>(first) * q + second);
}

struct NodeState {
    int input_color = 0;
    Polynomial poly;
    int batch_rounds = 0;

    bool pending = false;  // adopted in the last trial round, announcing now
    int adopted_iter = 0;
    int adopted_color = -1;

    std::vector<int> nb_input;  // -1 until the neighbor's first trial is heard
    std::vector<int> nb_color;  // -1 until the neighbor announces adoption
    std::vector<int> nb_iter;
};

struct NodeOutcome {
    int color = 0;
    int part = 0;
    std::vector<int> oriented_slots;  // inbox slots this node orients toward
};

// Algorithm: per iteration j, uncolored nodes broadcast their input color
// (round 2j-1); every node rebuilds its neighbors' batch-j trials locally and
// adopts the smallest-index tuple with at most d conflicts; adopters announce
// the tuple (round 2j) and leave. Tuples tried simultaneously conflict only
// at equal sequence positions, since first coordinates are distinct within a
// batch.
class MotherProgram : public NodeProgram {
public:
    MotherProgram(const SequenceFamily& fam, int d)
        : fam_(fam),
          d_(d),
          trial_bits_(bits_for(fam.palette())),
          announce_bits_(bits_for(std::min<long long>(fam.batch_size(), fam.q()) * fam.q())) {}

    std::any make_state(const NodeInit& init) const override {
        NodeState st;
        st.input_color = init.input_color;
        st.poly = fam_.assign_polynomial(init.input_color);
        st.batch_rounds = fam_.batch_count();
        st.nb_input.assign(init.degree, -1);
        st.nb_color.assign(init.degree, -1);
        st.nb_iter.assign(init.degree, 0);
        return st;
    }

    std::optional<Message> outbox(const std::any& state, int round) const override {
        const auto& st = std::any_cast<const NodeState&>(state);
        if (round % 2 == 1) {
            if (st.pending) return std::nullopt;
            return Message::uint_payload(static_cast<std::uint64_t>(st.input_color), trial_bits_);
        }
        if (st.pending)
            return Message::uint_payload(static_cast<std::uint64_t>(st.adopted_color),
                                         announce_bits_);
        return std::nullopt;
    }

    StepResult transition(std::any& state, int round, const Inbox& inbox) const override {
        auto& st = std::any_cast<NodeState&>(state);
        if (round % 2 == 1) {
            trial_round(st, (round + 1) / 2, inbox);
            return {};
        }
        return announce_round(st, round / 2, inbox);
    }

private:
    void trial_round(NodeState& st, int iteration, const Inbox& inbox) const {
        const long long q = fam_.q();
        const int k = fam_.batch_size();
        const long long from = static_cast<long long>(iteration - 1) * k;
        const long long to = std::min<long long>(from + k, q);
        if (from >= q)
            throw ContradictionError(
                "mother: a node exhausted its trial sequence uncolored; this contradicts the "
                "blocked-tuple bound");

        // Own batch-j tuple values.
        std::vector<long long> mine(to - from);
        for (long long x = from; x < to; ++x) mine[x - from] = st.poly.eval(fam_.field(), x);

        std::vector<int> conflicts(to - from, 0);
        for (std::size_t slot = 0; slot < inbox.size(); ++slot) {
            if (!inbox[slot]) continue;
            int color = static_cast<int>(inbox[slot]->uint_value());
            st.nb_input[slot] = color;
            Polynomial theirs = fam_.assign_polynomial(color);
            for (long long x = from; x < to; ++x)
                if (theirs.eval(fam_.field(), x) == mine[x - from]) ++conflicts[x - from];
        }
        for (std::size_t slot = 0; slot < inbox.size(); ++slot) {
            if (st.nb_color[slot] < 0) continue;
            for (long long x = from; x < to; ++x)
                if (encode_tuple(static_cast<int>(x % k), q, static_cast<int>(mine[x - from])) ==
                    st.nb_color[slot])
                    ++conflicts[x - from];
        }

        for (long long x = from; x < to; ++x) {
            if (conflicts[x - from] > d_) continue;
            st.pending = true;
            st.adopted_iter = iteration;
            st.adopted_color =
                encode_tuple(static_cast<int>(x % k), q, static_cast<int>(mine[x - from]));
            break;
        }
    }

    StepResult announce_round(NodeState& st, int iteration, const Inbox& inbox) const {
        for (std::size_t slot = 0; slot < inbox.size(); ++slot) {
            if (!inbox[slot]) continue;
            st.nb_color[slot] = static_cast<int>(inbox[slot]->uint_value());
            st.nb_iter[slot] = iteration;
        }
        if (!st.pending) return {};

        NodeOutcome out;
        out.color = st.adopted_color;
        out.part = st.adopted_iter;
        for (std::size_t slot = 0; slot < st.nb_color.size(); ++slot) {
            if (st.nb_color[slot] != st.adopted_color) continue;
            if (st.nb_iter[slot] < iteration) {
                out.oriented_slots.push_back(static_cast<int>(slot));
            } else if (st.input_color < st.nb_input[slot]) {
                // Simultaneous adoption: orient from smaller input color to larger.
                out.oriented_slots.push_back(static_cast<int>(slot));
            }
        }
        StepResult step;
        step.terminated = true;
        step.output = std::move(out);
        return step;
    }

    const SequenceFamily& fam_;
    int d_;
    int trial_bits_;
    int announce_bits_;
};

void check_proper_on_view(const Graph& g, const Coloring& phi, const Coloring* classes) {
    for (const auto& [u, v] : g.edges()) {
        if (classes && classes->color[u] != classes->color[v]) continue;
        if (phi.color[u] == phi.color[v])
            throw StructuralError("mother: input coloring is not proper on the executed view");
    }
}

MotherOutput assemble(const Graph& g, const Coloring* classes, const MotherBounds& bounds,
                      SyncResult&& run) {
    MotherOutput out;
    out.bounds = bounds;
    out.trace = std::move(run.trace);
    out.audit = std::move(run.audit);

    const auto adjacency = masked_adjacency(g, classes);
    out.psi.palette_size = bounds.palette;
    out.psi.color.resize(g.node_count());
    out.partition.part_index.resize(g.node_count());
    int max_part = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        const auto& res = std::any_cast<const NodeOutcome&>(run.outputs[v]);
        out.psi.color[v] = res.color;
        out.partition.part_index[v] = res.part;
        max_part = std::max(max_part, res.part);
        for (int slot : res.oriented_slots)
            out.orientation.directed_edges.emplace_back(v, adjacency[v][slot]);
    }
    out.partition.part_count = max_part;
    out.iterations_used = max_part;
    std::sort(out.orientation.directed_edges.begin(), out.orientation.directed_edges.end());
    return out;
}

MotherOutput run_mother_impl(const Graph& g, const Coloring* classes, const Coloring& phi,
                             const MotherParams& p) {
    validate_params(p);
    if (phi.palette_size != p.m)
        throw ParameterError("mother: params.m must match the input palette");
    if (static_cast<int>(phi.color.size()) != g.node_count())
        throw StructuralError("mother: coloring size does not match graph");
    check_proper_on_view(g, phi, classes);

    MotherBounds bounds = derive_bounds(p);
    SequenceFamily fam(p.m, p.delta, p.d, p.k);
    MotherProgram prog(fam, p.d);
    // One extra iteration of headroom so sequence exhaustion surfaces as the
    // contradiction it is rather than as an engine timeout.
    const int max_rounds = 2 * (bounds.batch_rounds + 1);
    SyncResult run = classes ? run_per_class(g, *classes, phi, prog, max_rounds)
                             : run_sync(g, phi, prog, max_rounds);
    return assemble(g, classes, bounds, std::move(run));
}

}  // namespace

MotherBounds derive_bounds(const MotherParams& p) {
    validate_params(p);
    MotherBounds b;
    b.f = degree_bound(p.m, p.delta, p.d);
    b.q = choose_prime(b.f, p.delta, p.d);
    b.x = 4ll * b.f * p.delta / (p.d + 1);
    if (p.k > b.x) throw ParameterError("mother: k exceeds X");
    b.r = (b.x + p.k - 1) / p.k;
    b.c = b.x * p.k;
    if (b.q > b.x) throw ContradictionError("mother: q > X");
    long long palette = std::min<long long>(p.k, b.q) * b.q;
    if (palette > std::numeric_limits<int>::max())
        throw CapacityError("mother: output palette does not fit int");
    b.palette = static_cast<int>(palette);
    b.batch_rounds = static_cast<int>((b.q + p.k - 1) / p.k);
    return b;
}

long long blocked_bound(const MotherParams& p) {
    validate_params(p);
    MotherBounds b = derive_bounds(p);
    long long z = 2ll * b.f * p.delta / (p.d + 1);
    // Strict bound 2f*delta/(d+1) < q holds exactly by the prime choice.
    if (2ll * b.f * p.delta >= b.q * (p.d + 1))
        throw ContradictionError("blocked bound reaches the sequence length");
    return z;
}

MotherOutput run_mother(const Graph& g, const Coloring& phi, const MotherParams& p) {
    return run_mother_impl(g, nullptr, phi, p);
}

MotherOutput run_mother_per_class(const Graph& g, const Coloring& classes, const Coloring& phi,
                                  const MotherParams& p) {
    if (static_cast<int>(classes.color.size()) != g.node_count())
        throw StructuralError("mother: class coloring size does not match graph");
    return run_mother_impl(g, &classes, phi, p);
}

}  // namespace trycolor
