#include "trycolor/report.hpp"

namespace trycolor {

Json to_json(const RunTrace& trace, const MessageAudit& audit) {
    Json j;
    j["rounds_used"] = trace.rounds_used;
    j["messages_sent"] = trace.messages_sent;
    j["max_message_bits"] = trace.max_message_bits;
    j["bit_budget"] = audit.bit_budget;
    Json violations = Json::array();
    for (const auto& v : audit.violations)
        violations.push_back({{"round", v.round}, {"from", v.from}, {"to", v.to}, {"bits", v.bits}});
    j["violations"] = violations;
    return j;
}

Json to_json(const ViolationReport& report) {
    Json j;
    j["kind"] = to_string(report.kind);
    j["pass"] = report.pass();
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(
            {{"nodes", v.nodes}, {"measured", v.measured}, {"bound", v.bound}});
    j["violations"] = violations;
    return j;
}

Json to_json(const DerivedResult& result) {
    Json j;
    j["palette"] = result.coloring.palette_size;
    j["colors_used"] = result.colors_used;
    j["rounds_used"] = result.rounds_used;
    Json stages = Json::array();
    for (const auto& s : result.stage_log)
        stages.push_back({{"stage", s.stage},
                          {"palette_before", s.palette_before},
                          {"palette_after", s.palette_after},
                          {"rounds", s.rounds}});
    j["stages"] = stages;
    j["max_message_bits"] = result.max_message_bits;
    j["bit_budget"] = result.bit_budget;
    j["messages_sent"] = result.messages_sent;
    j["audit_violations"] = result.audit_violations;
    return j;
}

Json to_json(const RulingRun& run) {
    Json j;
    j["members"] = run.set.members;
    j["member_count"] = run.set.members.size();
    j["r"] = run.set.r;
    j["B"] = run.B;
    j["measured_rounds"] = run.set.measured_rounds;
    j["trace"] = to_json(run.trace, run.audit);
    return j;
}

Json to_json(const TightnessReport& report) {
    Json j;
    j["delta"] = report.delta;
    j["m"] = report.m;
    j["k_max"] = report.k;
    j["q_sat"] = report.q_sat;
    j["q_unsat"] = report.q_unsat;
    j["sat_ok"] = report.sat_ok;
    j["unsat_ok"] = report.unsat_ok;
    j["expansions_sat"] = report.expansions_sat;
    j["expansions_unsat"] = report.expansions_unsat;
    j["config_vertices"] = report.config_vertices;
    j["config_edges"] = report.config_edges;
    j["cross_adjacency_complete"] = report.cross_adjacency_complete;
    return j;
}

}  // namespace trycolor
