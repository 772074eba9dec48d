#pragma once

// Command-line front end. run_cli is kept free of process state so tests can drive it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqgraph/eqgraph.hpp"

namespace eqgraph::cli {

inline int exit_code(Errc c) {
    switch (c) {
        case Errc::NotPrime:
        case Errc::EvenModulus:
        case Errc::ModulusTooLarge:
        case Errc::InvalidElement:
        case Errc::InvalidArgument:
        case Errc::UnsupportedForm:
        case Errc::CubicFamilyInvalid:
            return 2;
        case Errc::ComponentTooLarge:
        case Errc::SearchBudgetExceeded:
        case Errc::BudgetExceeded:
            return 4;
        default:
            return 3;
    }
}

inline void diagnose(std::ostream& err, const std::string& code, const std::string& msg) {
    std::string line = msg;
    for (char& ch : line) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    err << "error: " << code << ": " << line << '\n';
}

inline std::vector<Elem> parse_coeffs(const std::string& text) {
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(Errc::InvalidElement, "coefficient '" + cell + "' is not a non-negative integer");
        }
        try {
            out.push_back(std::stoull(cell));
        } catch (const std::out_of_range&) {
            throw Error(Errc::InvalidElement, "coefficient '" + cell + "' is too large");
        }
    }
    if (out.empty()) throw Error(Errc::InvalidArgument, "--poly needs at least one coefficient");
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::Io, "cannot write " + path.string());
    f << text;
}

struct GraphArgs {
    Elem p = 0;
    Elem lambda = 0;
    std::string poly;
    std::size_t max_p = 20'000'000;
};

inline void add_graph_args(CLI::App* sub, GraphArgs& g, bool required) {
    auto* p = sub->add_option("--p", g.p, "odd prime modulus");
    auto* l = sub->add_option("--lambda", g.lambda, "non-square lambda in [1, p)");
    auto* f = sub->add_option("--poly", g.poly, "ascending coefficients c0,c1,... of f");
    if (required) {
        p->required();
        l->required();
        f->required();
    }
    sub->add_option("--max-p", g.max_p, "largest p accepted for a single graph")
        ->envname("EQGRAPH_MAX_P")
        ->check(CLI::PositiveNumber);
}

inline std::pair<FieldCtx, PolySpec> load_graph(const GraphArgs& a) {
    if (a.p > a.max_p) throw Error(Errc::BudgetExceeded, "p = " + std::to_string(a.p) + " exceeds --max-p " + std::to_string(a.max_p));
    FieldCtx ctx = make_ctx(a.p, true);
    PolySpec spec = PolySpec::make(ctx, parse_coeffs(a.poly), a.lambda);
    if (a.lambda == 0) throw Error(Errc::InvalidElement, "lambda must be non-zero");
    ctx.check(a.lambda);
    return {std::move(ctx), std::move(spec)};
}

inline nlohmann::json edges_json(const EqGraph& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        for (const Edge& e : g.successors(x)) arr.push_back({x, e.target, e.weight});
    }
    return arr;
}

struct SurveyArgs {
    std::string kind;
    std::string family = "linear";
    std::vector<Elem> primes;
    Elem p_max = 0;
    unsigned workers = 1;
    std::string state_dir;
    bool resume = false;
    std::string out_dir;
    std::string format = "csv";
    std::string table = "counts";
    std::size_t component_cap = 100;
    Elem hamilton_max_p = 23;
    std::size_t chunk = 64;
};

inline SurveyOptions survey_options(const SurveyArgs& a, const std::string& kind, Elem p) {
    SurveyOptions o;
    o.workers = a.workers;
    o.resume = a.resume;
    o.chunk = a.chunk;
    o.component_cap = a.component_cap;
    o.hamilton_max_p = a.hamilton_max_p;
    if (!a.state_dir.empty()) {
        std::filesystem::create_directories(a.state_dir);
        o.state_path = std::filesystem::path(a.state_dir) / (kind + "-" + a.family + "-" + std::to_string(p) + ".jsonl");
    }
    return o;
}

inline std::string hamilton_table(const std::vector<SurveyRecord>& recs, const std::string& table) {
    if (table == "counts") return hamilton_counts_csv(recs).str();
    if (table == "type2") return hamilton_type_csv(recs, 2).str();
    if (table == "type3") return hamilton_type_csv(recs, 3).str();
    if (table == "all") {
        return hamilton_counts_csv(recs).str() + "\n" + hamilton_type_csv(recs, 2).str() + "\n" +
               hamilton_type_csv(recs, 3).str();
    }
    throw Error(Errc::InvalidArgument, "unknown table '" + table + "'");
}

inline std::string records_json(const std::vector<SurveyRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) arr.push_back(survey_json(r));
    return arr.dump(2) + "\n";
}

inline int run_survey(const SurveyArgs& a, std::ostream& out) {
    const Family family = parse_family(a.family);
    if (a.format != "csv" && a.format != "json") throw Error(Errc::InvalidArgument, "survey output is csv or json");
    std::string csv, json;
    if (a.kind == "connectedness" || a.kind == "hamilton") {
        if (a.primes.empty()) throw Error(Errc::InvalidArgument, "--p is required");
        std::vector<SurveyRecord> recs;
        for (Elem p : a.primes) {
            make_ctx(p);
            if (a.kind == "connectedness") {
                recs.push_back(connectedness_survey(p, family, survey_options(a, a.kind, p)));
            } else {
                recs.push_back(hamilton_survey(p, family, survey_options(a, a.kind, p)).record);
            }
        }
        csv = a.kind == "connectedness" ? connectedness_csv(recs).str() : hamilton_table(recs, a.table);
        json = records_json(recs);
    } else if (a.kind == "conjectures") {
        if (a.p_max == 0) throw Error(Errc::InvalidArgument, "--p-max is required");
        SurveyArgs stateless = a;
        stateless.state_dir.clear();
        const auto rep = conjecture_check(a.p_max, family, survey_options(stateless, a.kind, a.p_max));
        CsvTable t{{"p", "U", "L", "M", "U_eq_L", "unpredicted"}, {}};
        nlohmann::json primes = nlohmann::json::array();
        for (const auto& pc : rep.primes) {
            t.rows.push_back({std::to_string(pc.p), std::to_string(pc.unconnected), std::to_string(pc.l),
                              std::to_string(pc.max_components), pc.u_equals_l ? "1" : "0",
                              std::to_string(pc.unpredicted_small_components)});
            primes.push_back({{"p", pc.p},
                              {"U", pc.unconnected},
                              {"L", pc.l},
                              {"M", pc.max_components},
                              {"in_range", pc.in_conjecture_range},
                              {"u_equals_l", pc.u_equals_l},
                              {"unpredicted_small_components", pc.unpredicted_small_components}});
        }
        csv = t.str();
        for (const auto& c : rep.counterexamples) csv += "counterexample: " + c + "\n";
        csv += std::to_string(rep.counterexamples.size()) + " counterexamples\n";
        json = nlohmann::json{{"schema", report_schema_version},
                              {"family", a.family},
                              {"p_max", a.p_max},
                              {"primes", primes},
                              {"counterexamples", rep.counterexamples}}
                   .dump(2) +
               "\n";
    } else {
        throw Error(Errc::InvalidArgument, "unknown survey '" + a.kind + "'");
    }
    if (!a.out_dir.empty()) {
        std::filesystem::create_directories(a.out_dir);
        const std::string stem = a.kind + "_" + a.family;
        write_file(std::filesystem::path(a.out_dir) / (stem + ".csv"), csv);
        write_file(std::filesystem::path(a.out_dir) / (stem + ".json"), json);
    }
    out << (a.format == "json" ? json : csv);
    return 0;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equational graphs G(lambda, f) over prime fields"};
    app.require_subcommand(1);
    app.footer(
        "Environment: EQGRAPH_WORKERS, EQGRAPH_COMPONENT_CAP, EQGRAPH_HAMILTON_MAX_P and EQGRAPH_MAX_P set\n"
        "defaults for --workers, --component-cap, --hamilton-max-p and --max-p; flags take precedence.\n"
        "Exit codes: 0 ok, 1 verification failure, 2 invalid arguments, 3 computation error, 4 budget exceeded.");

    GraphArgs graph_args;
    std::string graph_format = "json";
    bool dot_labels = false;
    auto* graph = app.add_subcommand("graph", "analyze or export one graph");
    add_graph_args(graph, graph_args, true);
    graph->add_option("--format", graph_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    graph->add_flag("--dot-labels", dot_labels, "label DOT edges with weights instead of line styles");

    GraphArgs ham_args;
    std::optional<std::size_t> max_type;
    bool witness = false;
    std::string ham_survey;
    SurveyArgs ham_survey_args;
    ham_survey_args.kind = "hamilton";
    auto* hamilton = app.add_subcommand("hamilton", "Hamiltonian cycles by Type");
    add_graph_args(hamilton, ham_args, false);
    hamilton->add_option("--max-type", max_type, "count only cycles of Type <= n, pruning the search");
    hamilton->add_flag("--witness", witness, "print a cycle of minimal Type for each component");
    hamilton->add_option("--survey", ham_survey, "survey a whole family at --p instead of one graph")
        ->check(CLI::IsMember({"linear", "cubic"}));
    hamilton->add_option("--table", ham_survey_args.table, "survey table: counts, type2, type3 or all");
    hamilton->add_option("--component-cap", ham_survey_args.component_cap, "largest component enumerated")
        ->envname("EQGRAPH_COMPONENT_CAP")
        ->check(CLI::PositiveNumber);
    hamilton->add_option("--hamilton-max-p", ham_survey_args.hamilton_max_p, "largest p for enumeration")
        ->envname("EQGRAPH_HAMILTON_MAX_P")
        ->check(CLI::PositiveNumber);
    hamilton->add_option("--workers", ham_survey_args.workers, "survey worker threads")
        ->envname("EQGRAPH_WORKERS")
        ->check(CLI::PositiveNumber);

    SurveyArgs survey_args;
    auto* survey = app.add_subcommand("survey", "connectedness, Hamiltonian or conjecture surveys");
    survey->add_option("kind", survey_args.kind, "connectedness, hamilton or conjectures")
        ->required()
        ->check(CLI::IsMember({"connectedness", "hamilton", "conjectures"}));
    survey->add_option("--family", survey_args.family, "linear or cubic");
    survey->add_option("--p", survey_args.primes, "primes to survey (comma separated)")->delimiter(',');
    survey->add_option("--p-max", survey_args.p_max, "upper end of the conjecture range");
    survey->add_option("--workers", survey_args.workers, "worker threads")
        ->envname("EQGRAPH_WORKERS")
        ->check(CLI::PositiveNumber);
    survey->add_option("--state", survey_args.state_dir, "directory for resumable per-prime state files");
    survey->add_flag("--resume", survey_args.resume, "continue from existing state files");
    survey->add_option("--out-dir", survey_args.out_dir, "also write <kind>_<family>.csv and .json here");
    survey->add_option("--format", survey_args.format, "stdout format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    survey->add_option("--table", survey_args.table, "hamilton table: counts, type2, type3 or all");
    survey->add_option("--component-cap", survey_args.component_cap, "largest component enumerated")
        ->envname("EQGRAPH_COMPONENT_CAP")
        ->check(CLI::PositiveNumber);
    survey->add_option("--hamilton-max-p", survey_args.hamilton_max_p, "largest p for a Hamiltonian survey")
        ->envname("EQGRAPH_HAMILTON_MAX_P")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> props;
    Elem verify_p_max = 31;
    auto* verify = app.add_subcommand("verify", "run proposition suites");
    verify->add_option("--props", props, "labels (comma separated); default all")->delimiter(',');
    verify->add_option("--p-max", verify_p_max, "largest prime checked")->check(CLI::PositiveNumber);

    GraphArgs struct_args;
    auto* structure = app.add_subcommand("structure", "fixed vertices, small components and degree bounds");
    add_graph_args(structure, struct_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        diagnose(err, "InvalidArgument", e.what());
        return 2;
    }

    try {
        if (graph->parsed()) {
            const auto [ctx, spec] = load_graph(graph_args);
            const EqGraph g = build(spec, ctx);
            if (graph_format == "dot") {
                out << export_dot(g, !dot_labels);
            } else {
                auto j = graph_summary_json(g);
                j["edges"] = edges_json(g);
                out << j.dump(2) << '\n';
            }
            return 0;
        }
        if (hamilton->parsed()) {
            if (!ham_survey.empty()) {
                if (ham_args.p == 0) throw Error(Errc::InvalidArgument, "--p is required");
                ham_survey_args.family = ham_survey;
                ham_survey_args.primes = {ham_args.p};
                return run_survey(ham_survey_args, out);
            }
            if (ham_args.p == 0 || ham_args.poly.empty()) {
                throw Error(Errc::InvalidArgument, "--p, --lambda and --poly (or --survey) are required");
            }
            if (ham_args.p > ham_survey_args.hamilton_max_p) {
                throw Error(Errc::BudgetExceeded, "p = " + std::to_string(ham_args.p) +
                                                      " exceeds --hamilton-max-p " +
                                                      std::to_string(ham_survey_args.hamilton_max_p));
            }
            const auto [ctx, spec] = load_graph(ham_args);
            const EqGraph g = build(spec, ctx);
            const auto comps = weak_components(g);
            std::vector<HamiltonReport> reports;
            for (const auto& c : comps) reports.push_back(enumerate(g, c, {max_type, ham_survey_args.component_cap, false}));
            auto j = hamilton_json(g, comps, reports, witness);
            if (max_type) j["max_type"] = *max_type;
            out << j.dump(2) << '\n';
            return 0;
        }
        if (survey->parsed()) return run_survey(survey_args, out);
        if (verify->parsed()) {
            if (props.empty()) props = verify::suite_labels();
            bool all = true;
            for (const auto& label : props) {
                const auto r = verify::run_suite(label, verify_p_max);
                all = all && r.pass();
                out << (r.pass() ? "PASS " : "FAIL ") << r.label << " p_max=" << r.p_max << " cases=" << r.cases
                    << " failures=" << r.failures;
                if (!r.first_failure.empty()) out << " first=\"" << r.first_failure << '"';
                out << '\n';
            }
            return all ? 0 : 1;
        }
        if (structure->parsed()) {
            const auto [ctx, spec] = load_graph(struct_args);
            const EqGraph g = build(spec, ctx);
            nlohmann::json j = spec_json(spec);
            j["schema"] = report_schema_version;
            j["fixed_vertices"] = fixed_vertices(g);
            j["zero_indegree"] = bound_json(zero_indegree_stats(g, ctx));
            if (auto form = binomial_form(spec); form && form->first != Family::Quadratic) {
                try {
                    const auto audit = audit_small_components(spec, ctx);
                    j["small_components"] = {{"predicted", findings_json(audit.predicted)},
                                             {"observed", findings_json(audit.observed)},
                                             {"exact", audit.exact}};
                } catch (const Error& e) {
                    j["small_components"] = {{"skipped", e.what()}};
                }
            }
            if (spec.coeffs == std::vector<Elem>{spec.coeff(0), 1}) {
                const auto s = s_lambda_size(ctx, spec.lambda);
                j["s_lambda"] = {{"brute_force", s.brute_force}, {"formula", s.formula}};
            }
            out << j.dump(2) << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::string msg = e.what();
        const std::string code(to_string(e.code()));
        const std::string prefix = code + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        diagnose(err, code, msg);
        return exit_code(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        diagnose(err, "Io", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        diagnose(err, "Io", e.what());
        return 3;
    }
    return 0;
}

}  // namespace eqgraph::cli
