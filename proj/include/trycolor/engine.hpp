#pragma once

#include <any>
#include <cstdint>
#include <optional>
#include <vector>

#include "trycolor/graph.hpp"

namespace trycolor {

// Message payloads are length-delimited bit strings; the audit counts payload
// bits only. All algorithms in this artifact broadcast small integers, so a
// value/width pair is sufficient.
class Message {
public:
    Message() = default;
    static Message uint_payload(std::uint64_t value, int bits);

    std::uint64_t uint_value() const { return value_; }
    int bit_count() const { return bits_; }
    bool operator==(const Message&) const = default;

private:
    std::uint64_t value_ = 0;
    int bits_ = 0;
};

// Bits needed to address [0, domain); at least 1.
int bits_for(long long domain);

// Per round, messages cannot exceed kBitBudgetFactor * ceil(log2 max(n, m))
// bits. The factor covers the widest payload any algorithm here sends (an
// adopted tuple from a palette of at most X*k values).
inline constexpr int kBitBudgetFactor = 4;
int default_bit_budget(int n, int palette);

struct NodeInit {
    int node = 0;         // index in the original graph
    int degree = 0;       // degree in the executed view (class subgraph aware)
    int input_color = 0;
    int palette_size = 0; // m
    int delta = 0;        // global degree bound
    int class_id = 0;     // 0 for whole-graph runs
};

// Messages received this round, indexed by neighbor position in the node's
// (view) neighbor list; nullopt = that neighbor sent nothing.
using Inbox = std::vector<std::optional<Message>>;

struct StepResult {
    bool terminated = false;
    std::any output;
};

// A synchronous node program. The engine owns one state per node; transition
// must be a pure function of (state, round, inbox) — determinism across
// evaluation orders is asserted by tests.
class NodeProgram {
public:
    virtual ~NodeProgram() = default;

    virtual std::any make_state(const NodeInit& init) const = 0;

    // Output decided before any communication; such nodes never send.
    virtual std::optional<std::any> initial_output(const std::any& /*state*/) const {
        return std::nullopt;
    }

    // Broadcast payload for this round (fanned out to every view neighbor),
    // or nullopt to stay silent. Rounds are 1-based.
    virtual std::optional<Message> outbox(const std::any& state, int round) const = 0;

    virtual StepResult transition(std::any& state, int round, const Inbox& inbox) const = 0;
};

struct RunTrace {
    int rounds_used = 0;
    long long messages_sent = 0;
    int max_message_bits = 0;
    std::vector<int> per_round_active;  // not-yet-terminated count at round start
};

struct AuditViolation {
    int round = 0;
    int from = 0;
    int to = 0;
    int bits = 0;
};

struct MessageAudit {
    int bit_budget = 0;
    std::vector<AuditViolation> violations;

    bool clean() const { return violations.empty(); }
};

struct SyncResult {
    std::vector<std::any> outputs;  // one per node
    RunTrace trace;
    MessageAudit audit;
};

struct EngineOptions {
    int bit_budget = 0;              // 0 = derive from (n, palette)
    std::uint64_t eval_order_seed = 0;  // 0 = natural order; outputs must not depend on it
};

// Lockstep rounds until every node terminates; throws TimeoutError if any
// node is still running after max_rounds.
SyncResult run_sync(const Graph& g, const Coloring& input, const NodeProgram& prog,
                    int max_rounds, const EngineOptions& opts = {});

// Same engine, but node v only sees neighbors u with classes[v] == classes[u];
// every class runs in the same synchronous rounds and outputs are merged.
SyncResult run_per_class(const Graph& g, const Coloring& classes, const Coloring& input,
                         const NodeProgram& prog, int max_rounds, const EngineOptions& opts = {});

// The neighbor lists a run sees: full adjacency, or adjacency filtered to
// same-class neighbors. Drivers use this to map inbox slots back to node ids.
std::vector<std::vector<int>> masked_adjacency(const Graph& g, const Coloring* classes);

}  // namespace trycolor
