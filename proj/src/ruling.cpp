#include "trycolor/ruling.hpp"

#include <algorithm>

#include "trycolor/errors.hpp"
#include "trycolor/mother.hpp"

namespace trycolor {

namespace {

// Palette subdivision chain shared by every node: palettes[0] = C, then
// palettes[t+1] = ceil(palettes[t] / B) until the palette fits one base-case
// block of at most B colors.
struct BlockChain {
    int B = 0;
    std::vector<int> palettes;     // p_0 > p_1 > ... > p_T, p_T <= B
    std::vector<int> block_sizes;  // s_t = ceil(p_t / B), one per subdivision level
    std::vector<int> block_counts; // ceil(p_t / s_t) <= B

    explicit BlockChain(int C, int B_) : B(B_) {
        palettes.push_back(C);
        while (palettes.back() > B) {
            int p = palettes.back();
            int s = (p + B - 1) / B;
            block_sizes.push_back(s);
            block_counts.push_back((p + s - 1) / s);
            palettes.push_back(s);
        }
    }

    int depth() const { return static_cast<int>(block_sizes.size()); }  // T

    // digits b_0..b_{T-1} plus the leaf position.
    std::vector<int> decompose(int color) const {
        std::vector<int> digits;
        int x = color;
        for (int t = 0; t < depth(); ++t) {
            digits.push_back(x / block_sizes[t]);
            x %= block_sizes[t];
        }
        digits.push_back(x);  // leaf position
        return digits;
    }
};

// Level-synchronous schedule: phase 0 runs the leaf-level greedy MIS by
// color position; phase i >= 1 merges at subdivision level T-i by block
// index. Nodes announce a join by broadcasting their color in the next
// round; everyone terminates after the last scheduled round.
class RulingProgram : public NodeProgram {
public:
    RulingProgram(int palette, int B) : chain_(palette, B), color_bits_(bits_for(palette)) {
        phase_rounds_.push_back(chain_.palettes.back());  // leaf phase
        for (int i = 1; i <= chain_.depth(); ++i)
            phase_rounds_.push_back(chain_.block_counts[chain_.depth() - i]);
        total_rounds_ = 0;
        for (int r : phase_rounds_) total_rounds_ += r;
    }

    int total_rounds() const { return total_rounds_; }
    int radius() const { return chain_.palettes.front() == 1 ? 0 : chain_.depth() + 1; }

    std::any make_state(const NodeInit& init) const override {
        State st;
        st.color = init.input_color;
        st.digits = chain_.decompose(init.input_color);
        st.joined_phase = -1;
        st.joined_last_round = false;
        st.nb_color.assign(init.degree, -1);
        st.nb_join_phase.assign(init.degree, -1);
        return st;
    }

    std::optional<Message> outbox(const std::any& state, int /*round*/) const override {
        const auto& st = std::any_cast<const State&>(state);
        if (!st.joined_last_round) return std::nullopt;
        return Message::uint_payload(static_cast<std::uint64_t>(st.color), color_bits_);
    }

    StepResult transition(std::any& state, int round, const Inbox& inbox) const override {
        auto& st = std::any_cast<State&>(state);
        st.joined_last_round = false;

        // Attribute announcements: a join heard now happened one round ago.
        if (round >= 2) {
            auto [prev_phase, prev_slot] = locate(round - 1);
            (void)prev_slot;
            for (std::size_t slot = 0; slot < inbox.size(); ++slot)
                if (inbox[slot]) {
                    st.nb_color[slot] = static_cast<int>(inbox[slot]->uint_value());
                    st.nb_join_phase[slot] = prev_phase;
                }
        }

        auto [phase, slot_in_phase] = locate(round);
        if (my_turn(st, phase, slot_in_phase) && !blocked(st, phase)) {
            st.joined_phase = phase;
            st.joined_last_round = true;
        }

        StepResult step;
        if (round >= total_rounds_) {
            step.terminated = true;
            step.output = st.joined_phase == static_cast<int>(phase_rounds_.size()) - 1;
        }
        return step;
    }

private:
    struct State {
        int color = 0;
        std::vector<int> digits;
        int joined_phase = -1;
        bool joined_last_round = false;
        std::vector<int> nb_color;
        std::vector<int> nb_join_phase;
    };

    std::pair<int, int> locate(int round) const {  // 1-based engine round
        int rest = round - 1;
        for (std::size_t phase = 0; phase < phase_rounds_.size(); ++phase) {
            if (rest < phase_rounds_[phase]) return {static_cast<int>(phase), rest};
            rest -= phase_rounds_[phase];
        }
        return {static_cast<int>(phase_rounds_.size()) - 1, 0};
    }

    bool my_turn(const State& st, int phase, int slot) const {
        if (phase == 0)
            return st.digits[chain_.depth()] == slot;  // leaf position
        if (st.joined_phase != phase - 1) return false; // survivors only
        return st.digits[chain_.depth() - phase] == slot;
    }

    // Group prefix length at this phase: full digit path for the leaf MIS,
    // the digits above the merged level afterwards.
    int prefix_len(int phase) const {
        return phase == 0 ? chain_.depth() : chain_.depth() - phase;
    }

    bool blocked(const State& st, int phase) const {
        const int plen = prefix_len(phase);
        for (std::size_t slot = 0; slot < st.nb_color.size(); ++slot) {
            if (st.nb_join_phase[slot] != phase) continue;
            std::vector<int> theirs = chain_.decompose(st.nb_color[slot]);
            bool same_group = true;
            for (int t = 0; t < plen && same_group; ++t)
                same_group = theirs[t] == st.digits[t];
            if (same_group) return true;
        }
        return false;
    }

    BlockChain chain_;
    int color_bits_;
    std::vector<int> phase_rounds_;
    int total_rounds_;
};

}  // namespace

RulingRun ruling_from_coloring(const Graph& g, const Coloring& psi, int B) {
    if (B < 2) throw ParameterError("ruling set base B must be >= 2");
    if (static_cast<int>(psi.color.size()) != g.node_count())
        throw StructuralError("ruling: coloring size does not match graph");
    if (!is_proper(g, psi)) throw StructuralError("ruling: input coloring must be proper");

    RulingProgram prog(psi.palette_size, B);
    SyncResult run = run_sync(g, psi, prog, prog.total_rounds() + 1);

    RulingRun out;
    out.B = B;
    out.trace = std::move(run.trace);
    out.audit = std::move(run.audit);
    out.set.r = prog.radius();
    out.set.measured_rounds = out.trace.rounds_used;
    for (int v = 0; v < g.node_count(); ++v)
        if (std::any_cast<bool>(run.outputs[v])) out.set.members.push_back(v);
    return out;
}

BalancedRulingRun balanced_ruling_set(const Graph& g, const Coloring& phi, int r) {
    if (r < 2) throw ParameterError("balanced ruling set needs r >= 2");
    if (!is_proper(g, phi)) throw StructuralError("ruling: input coloring must be proper");
    const int delta = g.delta_bound();
    long long cap = 1;
    for (int i = 0; i < 4; ++i) cap *= delta;
    if (phi.palette_size > cap) throw ParameterError("ruling: palette m <= delta^4 required");

    BalancedRulingRun out;
    Coloring colored;
    if (r == 2) {
        // Any O(delta)-coloring balances the r = 2 exponent; one-batch trials
        // give palette q <= 16 delta.
        MotherOutput mo = run_mother(g, phi, {phi.palette_size, delta, 0, 1});
        colored = std::move(mo.psi);
        out.coloring_rounds = mo.trace.rounds_used;
    } else {
        Ratio eps{r - 2, r + 2};
        DerivedResult eres = epsilon_coloring(g, phi, eps);
        colored = std::move(eres.coloring);
        out.coloring_rounds = eres.rounds_used;
    }
    out.colors = colored.palette_size;

    // Smallest B with B^r >= C, so the recursion depth is at most r.
    int B = 2;
    while (true) {
        unsigned __int128 pow = 1;
        bool over = false;
        for (int i = 0; i < r && !over; ++i) {
            pow *= static_cast<unsigned>(B);
            if (pow >= static_cast<unsigned __int128>(colored.palette_size)) over = true;
        }
        if (over || pow >= static_cast<unsigned __int128>(colored.palette_size)) break;
        ++B;
    }

    out.ruling = ruling_from_coloring(g, colored, B);
    return out;
}

}  // namespace trycolor
