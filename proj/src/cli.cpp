#include "trycolor/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "trycolor/errors.hpp"
#include "trycolor/mother.hpp"
#include "trycolor/oneround.hpp"
#include "trycolor/report.hpp"
#include "trycolor/ruling.hpp"

namespace trycolor {

namespace {

struct InstanceOptions {
    std::string graph_file;
    std::string kind = "random";
    int n = 100;
    int delta = 8;
    std::uint64_t seed = 0;
    std::string coloring = "greedy";  // greedy | identity | <path>
    int spread = 0;                   // widen the palette to this size when > 0
};

void add_instance_flags(CLI::App* cmd, InstanceOptions& inst) {
    cmd->add_option("--graph", inst.graph_file, "load a graph file instead of generating");
    cmd->add_option("--kind", inst.kind, "generator kind: ring|complete|star|random");
    cmd->add_option("--n", inst.n, "node count for generated graphs");
    cmd->add_option("--delta", inst.delta, "declared degree bound");
    cmd->add_option("--seed", inst.seed, "seed for generation and palette spreading");
    cmd->add_option("--coloring", inst.coloring,
                    "input coloring: greedy | identity | <coloring file>");
    cmd->add_option("--spread", inst.spread,
                    "inject the input coloring into a palette of this size");
}

Graph make_graph(const InstanceOptions& inst) {
    if (!inst.graph_file.empty()) return load_graph(inst.graph_file);
    return generate(graph_kind_from_string(inst.kind), inst.n, inst.delta, inst.seed);
}

Coloring make_coloring(const Graph& g, const InstanceOptions& inst) {
    Coloring phi;
    if (inst.coloring == "greedy")
        phi = greedy_input_coloring(g);
    else if (inst.coloring == "identity")
        phi = identity_coloring(g);
    else
        phi = load_coloring(inst.coloring);
    if (inst.spread > 0) phi = spread_coloring(phi, inst.spread, inst.seed + 1);
    return phi;
}

bool attach_verification(Json& report, const Graph& g, const DerivedResult& res,
                         const std::string& algo, int d, int target) {
    Json checks = Json::array();
    bool pass = res.audit_violations == 0;
    auto push = [&](const ViolationReport& vr) {
        checks.push_back(to_json(vr));
        pass = pass && vr.pass();
    };

    if (algo == "defective1" || algo == "defectiveR") {
        push(verify_defect(g, res.coloring, d));
    } else if (algo == "outdegree") {
        push(verify_outdegree(g, res.coloring, *res.orientation, d));
    } else {
        push(verify_proper(g, res.coloring));
    }
    if (algo == "linial")
        pass = pass && res.coloring.palette_size <= 256ll * g.delta_bound() * g.delta_bound();
    if (algo == "chop" || algo == "greedy")
        pass = pass && res.coloring.palette_size == target;

    report["verification"] = checks;
    report["pass"] = pass;
    return pass;
}

int cmd_gen(const InstanceOptions& inst, const std::string& out_path,
            const std::string& coloring_out, std::ostream& out) {
    Graph g = make_graph(inst);
    if (out_path.empty())
        save_graph(g, out);
    else
        save_graph(g, out_path);
    if (!coloring_out.empty()) save_coloring(make_coloring(g, inst), coloring_out);
    return 0;
}

int cmd_run(const InstanceOptions& inst, const std::string& algo, int d, int k,
            const std::string& eps_text, int target, const std::string& format,
            std::ostream& out) {
    Graph g = make_graph(inst);
    Coloring phi = make_coloring(g, inst);
    const int delta = g.delta_bound();

    Json report;
    report["command"] = "run";
    report["algo"] = algo;
    report["n"] = g.node_count();
    report["delta"] = delta;
    report["m"] = phi.palette_size;
    report["seed"] = inst.seed;

    bool pass = false;
    if (algo == "mother") {
        MotherParams p{phi.palette_size, delta, d, k};
        MotherOutput mo = run_mother(g, phi, p);
        report["d"] = d;
        report["k"] = k;
        report["bounds"] = {{"f", mo.bounds.f},   {"q", mo.bounds.q}, {"x", mo.bounds.x},
                            {"r", mo.bounds.r},   {"c", mo.bounds.c},
                            {"palette", mo.bounds.palette}};
        report["iterations_used"] = mo.iterations_used;
        report["palette"] = mo.psi.palette_size;
        report["colors_used"] = mo.psi.distinct_count();
        report["trace"] = to_json(mo.trace, mo.audit);
        Json checks = Json::array();
        pass = mo.audit.clean();
        auto push = [&](const ViolationReport& vr) {
            checks.push_back(to_json(vr));
            pass = pass && vr.pass();
        };
        push(verify_defect(g, mo.psi, d));
        push(verify_outdegree(g, mo.psi, mo.orientation, d));
        push(verify_partition(g, mo.psi, mo.partition, d));
        if (d == 0) push(verify_proper(g, mo.psi));
        report["verification"] = checks;
        report["pass"] = pass;
    } else {
        DerivedResult res;
        if (algo == "linial") {
            res = linial_fixed_point(g, phi);
        } else if (algo == "kdelta") {
            res = run_preset(g, phi, 2, 0, k);
        } else if (algo == "defective1") {
            res = run_preset(g, phi, 5, d, 0);
            report["d"] = d;
        } else if (algo == "defectiveR") {
            res = run_preset(g, phi, 6, d, 0);
            report["d"] = d;
        } else if (algo == "outdegree") {
            res = run_preset(g, phi, 4, d, 0);
            report["d"] = d;
        } else if (algo == "epscolor") {
            res = epsilon_coloring(g, phi, Ratio::parse(eps_text));
            report["eps"] = eps_text;
            report["defect_used"] = epsilon_defect(delta, Ratio::parse(eps_text));
        } else if (algo == "chop") {
            DerivedResult one = run_preset(g, phi, 1, 0, 0);
            res = chop_to_deltaplus1(g, one.coloring, Ratio::parse(eps_text));
            res.stage_log.insert(res.stage_log.begin(), one.stage_log.begin(),
                                 one.stage_log.end());
            res.rounds_used += one.rounds_used;
            target = delta + 1;
            report["phases"] = chop_phase_count(res);
        } else if (algo == "greedy") {
            DerivedResult one = run_preset(g, phi, 1, 0, 0);
            if (target <= 0) target = delta + 1;
            res = greedy_to_target(g, one.coloring, target);
            res.stage_log.insert(res.stage_log.begin(), one.stage_log.begin(),
                                 one.stage_log.end());
            res.rounds_used += one.rounds_used;
        } else {
            throw ParameterError("unknown algorithm: " + algo);
        }
        if (algo == "kdelta") report["k"] = k;
        report["result"] = to_json(res);
        pass = attach_verification(report, g, res, algo, d, target);
    }

    if (format == "csv") {
        out << "algo,n,delta,m,palette,colors_used,rounds,max_message_bits,pass\n";
        const Json& res = report.contains("result") ? report["result"] : report;
        int max_bits = res.value("max_message_bits", 0);
        if (report.contains("trace")) max_bits = report["trace"].value("max_message_bits", 0);
        int rounds = res.value("rounds_used", 0);
        if (report.contains("trace")) rounds = report["trace"].value("rounds_used", 0);
        out << algo << ',' << g.node_count() << ',' << delta << ',' << phi.palette_size << ','
            << res.value("palette", 0) << ',' << res.value("colors_used", 0) << ','
            << rounds << ',' << max_bits << ',' << (pass ? 1 : 0) << '\n';
    } else {
        out << report.dump(2) << '\n';
    }
    return pass ? 0 : 1;
}

int cmd_sweep(const InstanceOptions& inst, const std::string& algo, const std::string& k_list,
              const std::string& format, std::ostream& out) {
    if (algo != "kdelta") throw ParameterError("sweep supports --algo kdelta");
    Graph g = make_graph(inst);
    Coloring phi = make_coloring(g, inst);
    const int delta = g.delta_bound();

    MotherBounds base = derive_bounds({phi.palette_size, delta, 0, 1});
    std::vector<int> ks;
    if (k_list == "auto") {
        for (long long k = 1; k <= base.x; k *= 2) ks.push_back(static_cast<int>(k));
        if (ks.empty() || ks.back() != base.x) ks.push_back(static_cast<int>(base.x));
    } else {
        std::stringstream ss(k_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
    }

    bool all_pass = true;
    Json rows = Json::array();
    if (format != "json") out << "k,q,iterations,engine_rounds,colors,max_message_bits,verified\n";
    for (int k : ks) {
        MotherParams p{phi.palette_size, delta, 0, k};
        MotherBounds b = derive_bounds(p);
        MotherOutput mo = run_mother(g, phi, p);
        bool ok = verify_proper(g, mo.psi).pass() && mo.audit.clean();
        all_pass = all_pass && ok;
        if (format == "json") {
            rows.push_back({{"k", k},
                            {"q", b.q},
                            {"iterations", b.batch_rounds},
                            {"engine_rounds", mo.trace.rounds_used},
                            {"colors", mo.psi.distinct_count()},
                            {"max_message_bits", mo.trace.max_message_bits},
                            {"verified", ok}});
        } else {
            out << k << ',' << b.q << ',' << b.batch_rounds << ',' << mo.trace.rounds_used << ','
                << mo.psi.distinct_count() << ',' << mo.trace.max_message_bits << ','
                << (ok ? 1 : 0) << '\n';
        }
    }
    if (format == "json") out << rows.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

int cmd_oneround_reduce(const InstanceOptions& inst, int m, int k, std::ostream& out) {
    Graph g = make_graph(inst);
    Coloring phi = spread_coloring(greedy_input_coloring(g), m, inst.seed + 1);
    OneRoundResult r = reduce_one_round(g, phi, k);
    bool pass = verify_proper(g, r.coloring).pass() && r.trace.rounds_used == 1 &&
                r.audit.clean();
    Json report;
    report["command"] = "oneround reduce";
    report["delta"] = g.delta_bound();
    report["m"] = m;
    report["k"] = k;
    report["palette_after"] = r.coloring.palette_size;
    report["trace"] = to_json(r.trace, r.audit);
    report["verification"] = to_json(verify_proper(g, r.coloring));
    report["pass"] = pass;
    out << report.dump(2) << '\n';
    return pass ? 0 : 1;
}

int cmd_oneround_tight(int delta, int m, long long budget, std::ostream& out,
                       std::ostream& err) {
    auto t0 = std::chrono::steady_clock::now();
    TightnessReport t = tightness_check(delta, m, budget);
    auto t1 = std::chrono::steady_clock::now();
    // Wall time goes to stderr so reports stay byte-identical across runs.
    err << "oneround tight (" << delta << ", " << m << "): "
        << std::chrono::duration<double>(t1 - t0).count() << "s\n";
    Json report = to_json(t);
    report["command"] = "oneround tight";
    out << report.dump(2) << '\n';
    return t.sat_ok && t.unsat_ok ? 0 : 1;
}

int cmd_rulingset(const InstanceOptions& inst, int r, int B, std::ostream& out) {
    Graph g = make_graph(inst);
    Coloring phi = make_coloring(g, inst);
    Json report;
    report["command"] = "rulingset";
    report["n"] = g.node_count();
    report["delta"] = g.delta_bound();

    RulingRun run;
    if (B > 0) {
        run = ruling_from_coloring(g, phi, B);
    } else {
        BalancedRulingRun composed = balanced_ruling_set(g, phi, r);
        report["colors"] = composed.colors;
        report["coloring_rounds"] = composed.coloring_rounds;
        run = std::move(composed.ruling);
    }
    ViolationReport vr = verify_ruling(g, run.set);
    bool pass = vr.pass() && run.audit.clean();
    report["ruling"] = to_json(run);
    report["verification"] = to_json(vr);
    report["pass"] = pass;
    out << report.dump(2) << '\n';
    return pass ? 0 : 1;
}

int cmd_verify(const std::string& graph_file, const std::string& coloring_file,
               const std::string& mode, int bound, std::ostream& out) {
    Graph g = load_graph(graph_file);
    Coloring c = load_coloring(coloring_file);
    ViolationReport vr;
    if (mode == "proper")
        vr = verify_proper(g, c);
    else if (mode == "defect")
        vr = verify_defect(g, c, bound);
    else
        throw ParameterError("verify mode must be proper or defect");
    Json report = to_json(vr);
    report["command"] = "verify";
    out << report.dump(2) << '\n';
    return vr.pass() ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "trycolor: distributed color-trial algorithms, verifiers, and the one-round oracle"};
    app.require_subcommand(1);

    InstanceOptions inst;

    auto* gen = app.add_subcommand("gen", "generate a graph (and optionally a coloring) file");
    std::string gen_out, gen_coloring_out;
    add_instance_flags(gen, inst);
    gen->add_option("--out", gen_out, "graph output path (stdout when omitted)");
    gen->add_option("--coloring-out", gen_coloring_out, "also write the input coloring here");

    auto* run = app.add_subcommand("run", "run an algorithm and verify its output");
    std::string algo = "mother", eps_text = "1/2", format = "json";
    int d = 0, k = 1, target = 0;
    add_instance_flags(run, inst);
    run->add_option("--format", format, "json|csv");
    run->add_option("--algo", algo,
                    "mother|linial|kdelta|defective1|defectiveR|outdegree|epscolor|chop|greedy");
    run->add_option("--d", d, "defect / outdegree parameter");
    run->add_option("--k", k, "batch size");
    run->add_option("--eps", eps_text, "epsilon as p/q or decimal");
    run->add_option("--target", target, "greedy target palette (default delta+1)");

    auto* sweep = app.add_subcommand(
        "sweep",
        "sweep batch sizes; CSV columns: k, q, iterations (the batch schedule ceil(q/k)), "
        "engine_rounds, colors, max_message_bits, verified");
    std::string sweep_algo = "kdelta", k_list = "auto";
    add_instance_flags(sweep, inst);
    sweep->add_option("--format", format, "json|csv (default csv)");
    sweep->add_option("--algo", sweep_algo, "kdelta");
    sweep->add_option("--k", k_list, "comma list of batch sizes, or 'auto' for powers of two");

    auto* oneround = app.add_subcommand("oneround", "one-round reduction and its exact oracle");
    oneround->require_subcommand(1);
    auto* reduce = oneround->add_subcommand("reduce", "single-round m -> m-k reduction");
    int or_m = 0, or_k = 1, or_delta = 3;
    long long budget = kDefaultExpansionBudget;
    add_instance_flags(reduce, inst);
    reduce->add_option("--m", or_m, "input palette (>= k(delta-k+3))")->required();
    reduce->add_option("--k", or_k, "colors to remove");
    auto* tight = oneround->add_subcommand("tight", "exact sat/unsat frontier via the oracle");
    tight->add_option("--delta", or_delta, "degree bound")->required();
    tight->add_option("--m", or_m, "input palette")->required();
    tight->add_option("--budget", budget, "oracle expansion budget");

    auto* ruling = app.add_subcommand("rulingset", "compute and verify a (2, r)-ruling set");
    int rul_r = 2, rul_B = 0;
    add_instance_flags(ruling, inst);
    ruling->add_option("--r", rul_r, "domination radius (balanced composition)");
    ruling->add_option("--B", rul_B, "explicit base: rule the input coloring directly");

    auto* verify = app.add_subcommand("verify", "verify a coloring file against a graph file");
    std::string v_graph, v_coloring, v_mode = "proper";
    int v_bound = 0;
    verify->add_option("--graph", v_graph, "graph file")->required();
    verify->add_option("--coloring", v_coloring, "coloring file")->required();
    verify->add_option("--mode", v_mode, "proper|defect");
    verify->add_option("--bound", v_bound, "defect bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(inst, gen_out, gen_coloring_out, out);
        if (run->parsed()) return cmd_run(inst, algo, d, k, eps_text, target, format, out);
        if (sweep->parsed()) return cmd_sweep(inst, sweep_algo, k_list,
                                              sweep->count("--format") ? format : "csv", out);
        if (oneround->parsed()) {
            if (reduce->parsed()) return cmd_oneround_reduce(inst, or_m, or_k, out);
            return cmd_oneround_tight(or_delta, or_m, budget, out, err);
        }
        if (ruling->parsed()) return cmd_rulingset(inst, rul_r, rul_B, out);
        if (verify->parsed()) return cmd_verify(v_graph, v_coloring, v_mode, v_bound, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace trycolor
