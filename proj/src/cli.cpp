#include "rsym/cli.hpp"

#include "rsym/diagram.hpp"
#include "rsym/experiment.hpp"
#include "rsym/io.hpp"
#include "rsym/solver.hpp"
#include "rsym/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>

namespace rsym {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0, kFail = 1, kInput = 2;

std::string words_str(const PregroupTable& t, const Word& w) { return w.empty() ? "1" : word_to_string(t, w, " "); }

Rational parse_eps(const std::string& s) {
    Rational e;
    try {
        e = Rational::parse(s);
    } catch (const std::exception&) {
        throw InputError("epsilon must be a fraction such as 1/10, got \"" + s + "\"");
    }
    if (e <= 0) throw InputError("epsilon must be positive");
    return e;
}

ordered_json preprocess_json(const LoadedPresentation& lp) {
    const PregroupTable& t = lp.pre.pres.table;
    ordered_json j;
    j["status"] = lp.pre.status == PreprocessStatus::Ok ? "ok" : lp.pre.status == PreprocessStatus::NoRelators ? "no-relators" : "degenerate";
    if (!lp.pre.reason.empty()) j["reason"] = lp.pre.reason;
    j["log"] = lp.pre.log;
    std::vector<std::string> rels;
    for (const Word& r : lp.pre.pres.relators) rels.push_back(words_str(t, r));
    j["relators"] = rels;
    j["elements"] = t.size();
    j["vp_size"] = lp.pre.pres.vp.size();
    j["untwisted"] = lp.untwisted;
    return j;
}

void write_report(const std::string& path, const ordered_json& j) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw InputError("cannot write report to " + path);
    f << j.dump(2) << '\n';
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Tries the plain solver check first; the trivint variant only when the
// plain one fails and its hypothesis holds.
std::optional<SolverMode> certify_solver(const VerifierTables& vt) {
    SolverTables st = build_solver_tables(vt);
    if (verify_solver(st, SolverMode::Plain).ok) return SolverMode::Plain;
    if (trivint_hypothesis(vt.pres) && verify_solver(st, SolverMode::TrivInt).ok) return SolverMode::TrivInt;
    return std::nullopt;
}

const char* solver_status(std::optional<SolverMode> m) {
    if (!m) return "unverified";
    return *m == SolverMode::Plain ? "verified" : "trivint-verified";
}

std::string linear(const Rational& a, const Rational& b) {
    std::string s = a == 1 ? "n" : a.den() == 1 ? a.str() + "n" : "(" + a.str() + ")n";
    if (b > 0) s += " + " + b.str();
    if (b < 0) s += " - " + (-b).str();
    return s;
}

// Shared refusal paths before any table is built.
int refuse_unusable(const LoadedPresentation& lp, ordered_json& rep, std::ostream& out) {
    if (lp.pre.status != PreprocessStatus::Ok) {
        rep["outcome"] = lp.pre.status == PreprocessStatus::NoRelators ? "no-relators" : "degenerate";
        out << "outcome: " << rep["outcome"].get<std::string>() << " (" << lp.pre.reason << ")\n";
        return kFail;
    }
    if (!lp.untwisted) {
        rep["outcome"] = "unsupported";
        rep["reason"] = "interleaving required";
        out << "outcome: unsupported: interleaving required\n";
        return kFail;
    }
    return -1;
}

int cmd_validate(const std::string& file, const std::string& report, std::ostream& out) {
    LoadedPresentation lp = load_presentation_file(file);
    ordered_json rep;
    rep["command"] = "validate";
    rep["source"] = file;
    rep["axioms"] = "ok";
    rep["preprocess"] = preprocess_json(lp);
    out << "axioms: ok\n";
    for (const auto& l : lp.pre.log) out << "preprocess: " << l << '\n';
    for (const Word& r : lp.pre.pres.relators) out << "relator: " << words_str(lp.pre.pres.table, r) << '\n';
    out << "untwisted: " << (lp.untwisted ? "yes" : "no") << '\n';
    int code = kOk;
    if (lp.pre.status != PreprocessStatus::Ok) {
        out << "status: " << rep["preprocess"]["status"].get<std::string>() << " (" << lp.pre.reason << ")\n";
        code = kFail;
    } else {
        out << "status: ok\n";
    }
    write_report(report, rep);
    return code;
}

int cmd_is_hyperbolic(const std::string& file, const std::string& eps_s, const std::string& report, std::ostream& out) {
    const Rational eps = parse_eps(eps_s);
    LoadedPresentation lp = load_presentation_file(file);
    const auto t0 = std::chrono::steady_clock::now();
    ordered_json rep;
    rep["command"] = "is-hyperbolic";
    rep["source"] = file;
    rep["epsilon"] = eps.str();
    rep["preprocess"] = preprocess_json(lp);
    int code = refuse_unusable(lp, rep, out);
    if (code >= 0) {
        write_report(report, rep);
        return code;
    }
    VerifierTables vt;
    try {
        vt = build_tables(lp.pre.pres);
    } catch (const UnsupportedInput& e) {
        rep["outcome"] = "unsupported";
        rep["reason"] = e.what();
        out << "outcome: unsupported: " << e.what() << '\n';
        write_report(report, rep);
        return kFail;
    }
    const PregroupTable& t = vt.pres.table;
    VerifyResult vr = rsym_verify(vt, eps);
    if (!vr.ok) {
        rep["outcome"] = "fail";
        ordered_json f;
        f["relator"] = vr.relator;
        f["relator_word"] = words_str(t, vt.pres.relators.at(vr.relator));
        f["start_place"] = vt.place_str(vr.start);
        ordered_json trail = ordered_json::array();
        for (const TrailStep& s : vr.trail)
            trail.push_back({{"place", vt.place_str(s.place)}, {"l", s.l}, {"chi", s.chi.str()}, {"psi", s.psi.str()}});
        f["trail"] = trail;
        rep["failure"] = f;
        out << "outcome: fail\n";
        out << "relator " << vr.relator + 1 << ": " << f["relator_word"].get<std::string>() << '\n';
        out << "start place: " << f["start_place"].get<std::string>() << '\n';
        for (const TrailStep& s : vr.trail)
            out << "  -> " << vt.place_str(s.place) << " l=" << s.l << " chi=" << s.chi.str() << " psi=" << s.psi.str() << '\n';
        out << "time: " << ms_since(t0) << " ms\n";
        write_report(report, rep);
        return kFail;
    }
    std::optional<SolverMode> mode = certify_solver(vt);
    DehnBoundReport db = dehn_bounds(vt.pres, eps, mode);
    rep["outcome"] = "verified";
    rep["solver"] = solver_status(mode);
    ordered_json d;
    d["part"] = db.part;
    d["r"] = db.r;
    d["r_full"] = db.r_full;
    d["r_I"] = db.r_i;
    d["f"] = {{"slope", db.f_slope.str()}, {"const", db.f_const.str()}};
    d["pd"] = {{"slope", db.pd_slope.str()}, {"const", db.pd_const.str()}};
    if (db.solver_pd_slope) d["solver_pd_slope"] = *db.solver_pd_slope;
    d["dehn"] = {{"slope", db.d_slope.str()}, {"const", db.d_const.str()}};
    d["lambda0"] = db.lambda0.str();
    d["lambda"] = db.lambda.str();
    d["gamma"] = db.gamma.str();
    rep["bounds"] = d;
    out << "outcome: verified (hyperbolic)\n";
    out << "solver: " << solver_status(mode) << '\n';
    out << "area bound (part " << db.part << "): " << linear(db.pd_slope, db.pd_const) << '\n';
    if (db.solver_pd_slope) out << "area bound from solver: " << linear(*db.solver_pd_slope, 0) << '\n';
    out << "Dehn slope: D(n) <= " << linear(db.d_slope, db.d_const) << '\n';
    out << "lambda: " << db.lambda.str() << "  gamma: " << db.gamma.str() << '\n';
    out << "time: " << ms_since(t0) << " ms\n";
    write_report(report, rep);
    return kOk;
}

int cmd_solve_word(const std::string& file, const std::vector<std::string>& words, const std::string& word_file,
                   const std::string& report, std::ostream& out) {
    LoadedPresentation lp = load_presentation_file(file);
    std::vector<std::string> inputs = words;
    if (!word_file.empty()) {
        std::ifstream in(word_file);
        if (!in) throw InputError("cannot open " + word_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
            inputs.push_back(line);
        }
    }
    if (inputs.empty()) throw InputError("no words given (use --word or --file)");
    std::vector<Word> parsed;
    for (const auto& s : inputs) parsed.push_back(translate_word(lp.pre, parse_word(lp.input_table, s)));

    ordered_json rep;
    rep["command"] = "solve-word";
    rep["source"] = file;
    int code = refuse_unusable(lp, rep, out);
    if (code >= 0) {
        write_report(report, rep);
        return code;
    }
    VerifierTables vt;
    try {
        vt = build_tables(lp.pre.pres);
    } catch (const UnsupportedInput& e) {
        rep["outcome"] = "unsupported";
        rep["reason"] = e.what();
        out << "outcome: unsupported: " << e.what() << '\n';
        write_report(report, rep);
        return kFail;
    }
    std::optional<SolverMode> mode = certify_solver(vt);
    rep["solver"] = solver_status(mode);
    out << "solver: " << solver_status(mode) << '\n';
    if (!mode) out << "note: false answers are not certified for this presentation\n";
    RSymSolver solver(vt.pres, build_rewrite_list(vt, mode.value_or(SolverMode::Plain)));
    ordered_json results = ordered_json::array();
    bool all = true;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        SolveStats st;
        const bool triv = solver.solve(parsed[i], &st);
        all = all && triv;
        results.push_back({{"word", inputs[i]}, {"trivial", triv}, {"length", st.input_length}, {"letter_ops", st.letter_ops}});
        out << inputs[i] << ": " << (triv ? "true" : "false") << '\n';
    }
    rep["results"] = results;
    rep["outcome"] = all ? "true" : "false";
    write_report(report, rep);
    return all ? kOk : kFail;
}

int cmd_oracle_check(const std::string& file, const std::string& eps_s, int max_faces, int max_boundary,
                     const std::string& report, std::ostream& out) {
    const Rational eps = parse_eps(eps_s);
    LoadedPresentation lp = load_presentation_file(file);
    ordered_json rep;
    rep["command"] = "oracle-check";
    rep["source"] = file;
    rep["epsilon"] = eps.str();
    rep["max_faces"] = max_faces;
    rep["max_boundary"] = max_boundary;
    int code = refuse_unusable(lp, rep, out);
    if (code >= 0) {
        write_report(report, rep);
        return code;
    }
    bool verified = false;
    try {
        verified = rsym_verify(lp.pre.pres, eps).ok;
    } catch (const UnsupportedInput& e) {
        rep["outcome"] = "unsupported";
        rep["reason"] = e.what();
        out << "outcome: unsupported: " << e.what() << '\n';
        write_report(report, rep);
        return kFail;
    }
    std::vector<ColouredDiagram> ds;
    try {
        ds = enumerate_diagrams(lp.pre.pres, max_faces, max_boundary);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    int bad_conservation = 0, bad_identity = 0, bad_blob = 0, bad_vertex = 0, excess = 0, nonb = 0, viol = 0;
    for (const ColouredDiagram& d : ds) {
        const CurvatureMap k = compute_rsym_curvature(d);
        const DiagramAudit a = audit_diagram(d, k, verified ? &eps : nullptr);
        bad_conservation += !a.conserved;
        bad_identity += !a.graph_identity;
        bad_blob += !a.blob_lengths;
        bad_vertex += !a.vertex_formula;
        excess += a.boundary_face_excess;
        nonb += a.nonboundary_green;
        viol += a.curvature_violations;
    }
    rep["verifier"] = verified ? "verified" : "fail";
    rep["diagrams"] = ds.size();
    rep["conservation_failures"] = bad_conservation;
    rep["graph_identity_failures"] = bad_identity;
    rep["blob_length_failures"] = bad_blob;
    rep["vertex_formula_failures"] = bad_vertex;
    rep["boundary_faces_above_half"] = excess;
    rep["nonboundary_green_faces"] = nonb;
    rep["curvature_violations"] = viol;
    const bool clean = bad_conservation + bad_identity + bad_blob + bad_vertex + viol == 0;
    rep["outcome"] = clean ? "agree" : "disagree";
    out << "verifier: " << (verified ? "verified" : "fail") << " at epsilon " << eps.str() << '\n';
    out << "diagrams: " << ds.size() << '\n';
    out << "conservation failures: " << bad_conservation << '\n';
    out << "graph identity failures: " << bad_identity << '\n';
    out << "blob length failures: " << bad_blob << '\n';
    out << "vertex formula failures: " << bad_vertex << '\n';
    out << "boundary faces above 1/2: " << excess << '\n';
    out << "non-boundary green faces: " << nonb << ", curvature violations: " << viol << '\n';
    out << "outcome: " << (clean ? "agree" : "disagree") << '\n';
    write_report(report, rep);
    return clean ? kOk : kFail;
}

int cmd_experiment(const std::string& preset, int relators, int length, int trials, std::uint64_t seed,
                   const std::string& eps_s, const std::string& report, std::ostream& out) {
    const Rational eps = parse_eps(eps_s);
    ExperimentPreset p;
    try {
        p = experiment_preset(preset, relators);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (length < 1 || trials < 1 || relators < 1) throw InputError("length, trials and relators must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult r = run_experiment(p, length, trials, seed, eps);
    const PregroupTable t = construct_pregroup(p.spec);
    ordered_json rep;
    rep["command"] = "experiment";
    rep["preset"] = preset;
    rep["relators"] = relators;
    rep["length"] = length;
    rep["trials"] = trials;
    rep["seed"] = seed;
    rep["epsilon"] = eps.str();
    ordered_json tr = ordered_json::array();
    for (const TrialOutcome& o : r.trials) {
        std::vector<std::string> ws;
        for (const Word& w : o.relators) ws.push_back(words_str(t, w));
        tr.push_back({{"relators", ws},
                      {"outcome", o.pre != PreprocessStatus::Ok ? "degenerate" : o.unsupported ? "unsupported" : o.verified ? "verified" : "fail"}});
    }
    rep["results"] = tr;
    rep["successes"] = r.successes;
    out << preset << " relators=" << relators << " length=" << length << " seed=" << seed << ": " << r.successes << " of "
        << trials << " verified\n";
    out << "time: " << ms_since(t0) << " ms\n";
    write_report(report, rep);
    return kOk;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolicity certificates for pregroup presentations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string file, report, eps = "1/10", word_file, preset;
    std::vector<std::string> words;
    int max_faces = 3, max_boundary = 40, relators = 2, length = 20, trials = 20;
    std::uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "check axioms and preprocess a presentation");
    validate->add_option("presentation", file, "presentation file")->required();
    validate->add_option("--report", report, "write a JSON report");

    auto* hyp = app.add_subcommand("is-hyperbolic", "run the curvature verifier, solver check and Dehn bounds");
    hyp->add_option("presentation", file, "presentation file")->required();
    hyp->add_option("--epsilon", eps, "curvature constant as a fraction")->required();
    hyp->add_option("--report", report, "write a JSON report");

    auto* solve = app.add_subcommand("solve-word", "decide whether words are trivial");
    solve->add_option("presentation", file, "presentation file")->required();
    solve->add_option("--word", words, "word to test (repeatable)");
    solve->add_option("--file", word_file, "file with one word per line");
    solve->add_option("--report", report, "write a JSON report");

    auto* oracle = app.add_subcommand("oracle-check", "cross-check the verifier against enumerated diagrams");
    oracle->add_option("presentation", file, "presentation file")->required();
    oracle->add_option("--max-faces", max_faces, "internal face budget")->required();
    oracle->add_option("--max-boundary", max_boundary, "boundary length budget");
    oracle->add_option("--epsilon", eps, "curvature constant as a fraction");
    oracle->add_option("--report", report, "write a JSON report");

    auto* exp = app.add_subcommand("experiment", "random presentations, seeded");
    exp->add_option("--preset", preset, "free2, free10, free100, c2c3, c3c3, c3c3c3")->required();
    exp->add_option("--relators", relators, "relators per trial");
    exp->add_option("--length", length, "relator length");
    exp->add_option("--trials", trials, "number of trials");
    exp->add_option("--seed", seed, "RNG seed");
    exp->add_option("--epsilon", eps, "curvature constant as a fraction");
    exp->add_option("--report", report, "write a JSON report");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }

    try {
        if (*validate) return cmd_validate(file, report, out);
        if (*hyp) return cmd_is_hyperbolic(file, eps, report, out);
        if (*solve) return cmd_solve_word(file, words, word_file, report, out);
        if (*oracle) return cmd_oracle_check(file, eps, max_faces, max_boundary, report, out);
        if (*exp) return cmd_experiment(preset, relators, length, trials, seed, eps, report, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}

} // namespace rsym
