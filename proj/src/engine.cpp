#include "trycolor/engine.hpp"

#include <algorithm>
#include <numeric>

#include "trycolor/errors.hpp"

namespace trycolor {

Message Message::uint_payload(std::uint64_t value, int bits) {
    if (bits < 1 || bits > 64) throw ParameterError("message width must be in [1, 64]");
    if (bits < 64 && value >> bits)
        throw ParameterError("message value does not fit its declared width");
    Message msg;
    msg.value_ = value;
    msg.bits_ = bits;
    return msg;
}

int bits_for(long long domain) {
    int bits = 1;
    while ((1ll << bits) < domain) ++bits;
    return bits;
}

int default_bit_budget(int n, int palette) {
    return kBitBudgetFactor * bits_for(std::max<long long>(n, palette));
}

namespace {

// Execution view: per node, the neighbor ids it communicates with plus the
// position this node occupies in each neighbor's list (for inbox slotting).
struct View {
    std::vector<std::vector<int>> neighbor;
    std::vector<std::vector<int>> slot_in_neighbor;
};

View full_view(const Graph& g) {
    View view;
    const int n = g.node_count();
    view.neighbor.resize(n);
    view.slot_in_neighbor.resize(n);
    for (int v = 0; v < n; ++v)
        view.neighbor[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    for (int v = 0; v < n; ++v) {
        view.slot_in_neighbor[v].resize(view.neighbor[v].size());
        for (std::size_t i = 0; i < view.neighbor[v].size(); ++i) {
            int u = view.neighbor[v][i];
            const auto& back = view.neighbor[u];
            view.slot_in_neighbor[v][i] = static_cast<int>(
                std::lower_bound(back.begin(), back.end(), v) - back.begin());
        }
    }
    return view;
}

View class_view(const Graph& g, const Coloring& classes) {
    View view;
    const int n = g.node_count();
    view.neighbor.resize(n);
    view.slot_in_neighbor.resize(n);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v))
            if (classes.color[u] == classes.color[v]) view.neighbor[v].push_back(u);
    for (int v = 0; v < n; ++v) {
        view.slot_in_neighbor[v].resize(view.neighbor[v].size());
        for (std::size_t i = 0; i < view.neighbor[v].size(); ++i) {
            int u = view.neighbor[v][i];
            const auto& back = view.neighbor[u];
            view.slot_in_neighbor[v][i] = static_cast<int>(
                std::lower_bound(back.begin(), back.end(), v) - back.begin());
        }
    }
    return view;
}

SyncResult run_view(const Graph& g, const Coloring& input, const View& view,
                    const NodeProgram& prog, int max_rounds, const EngineOptions& opts,
                    const std::vector<int>& class_of) {
    const int n = g.node_count();
    if (static_cast<int>(input.color.size()) != n)
        throw StructuralError("input coloring size does not match graph");
    if (max_rounds < 1) throw ParameterError("max_rounds must be >= 1");

    SyncResult result;
    result.outputs.resize(n);
    result.audit.bit_budget =
        opts.bit_budget > 0 ? opts.bit_budget : default_bit_budget(n, input.palette_size);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (opts.eval_order_seed != 0) {
        std::mt19937_64 rng(opts.eval_order_seed);
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
    }

    std::vector<std::any> state(n);
    std::vector<char> alive(n, 1);
    int alive_count = n;
    for (int v : order) {
        NodeInit init;
        init.node = v;
        init.degree = static_cast<int>(view.neighbor[v].size());
        init.input_color = input.color[v];
        init.palette_size = input.palette_size;
        init.delta = g.delta_bound();
        init.class_id = class_of.empty() ? 0 : class_of[v];
        state[v] = prog.make_state(init);
        if (auto out = prog.initial_output(state[v])) {
            result.outputs[v] = std::move(*out);
            alive[v] = 0;
            --alive_count;
        }
    }

    std::vector<Inbox> inbox(n);
    for (int v = 0; v < n; ++v) inbox[v].resize(view.neighbor[v].size());

    for (int round = 1; alive_count > 0; ++round) {
        if (round > max_rounds)
            throw TimeoutError("engine: " + std::to_string(alive_count) +
                                   " nodes still active after " + std::to_string(max_rounds) +
                                   " rounds",
                               max_rounds, alive_count, result.trace.messages_sent,
                               result.trace.max_message_bits);
        result.trace.per_round_active.push_back(alive_count);

        // Collect all outboxes against pre-round states, then deliver; the
        // round barrier makes evaluation order immaterial.
        for (int v = 0; v < n; ++v)
            std::fill(inbox[v].begin(), inbox[v].end(), std::nullopt);
        for (int v : order) {
            if (!alive[v]) continue;
            std::optional<Message> msg = prog.outbox(state[v], round);
            if (!msg) continue;
            for (std::size_t i = 0; i < view.neighbor[v].size(); ++i) {
                int u = view.neighbor[v][i];
                inbox[u][view.slot_in_neighbor[v][i]] = *msg;
                ++result.trace.messages_sent;
                result.trace.max_message_bits =
                    std::max(result.trace.max_message_bits, msg->bit_count());
                if (msg->bit_count() > result.audit.bit_budget)
                    result.audit.violations.push_back({round, v, u, msg->bit_count()});
            }
        }

        for (int v : order) {
            if (!alive[v]) continue;
            StepResult step = prog.transition(state[v], round, inbox[v]);
            if (step.terminated) {
                result.outputs[v] = std::move(step.output);
                alive[v] = 0;
                --alive_count;
            }
        }
        result.trace.rounds_used = round;
    }
    return result;
}

}  // namespace

SyncResult run_sync(const Graph& g, const Coloring& input, const NodeProgram& prog,
                    int max_rounds, const EngineOptions& opts) {
    return run_view(g, input, full_view(g), prog, max_rounds, opts, {});
}

SyncResult run_per_class(const Graph& g, const Coloring& classes, const Coloring& input,
                         const NodeProgram& prog, int max_rounds, const EngineOptions& opts) {
    if (static_cast<int>(classes.color.size()) != g.node_count())
        throw StructuralError("class coloring size does not match graph");
    return run_view(g, input, class_view(g, classes), prog, max_rounds, opts, classes.color);
}

std::vector<std::vector<int>> masked_adjacency(const Graph& g, const Coloring* classes) {
    const View view = classes ? class_view(g, *classes) : full_view(g);
    return view.neighbor;
}

}  // namespace trycolor
