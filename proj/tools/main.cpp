// Command-line front-end: check (verification), validate (against a
// referent), infer (risk + decision for crisp inputs), export (DOT of
// the net or a reachability graph), sweep (decision surface as CSV).
//
// Exit codes: 0 ok/clean/valid, 1 warnings/incomplete, 2 errors/incorrect,
// 3 usage, file or parse problems.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "edm/analysis.hpp"
#include "edm/dsl.hpp"
#include "edm/inference.hpp"
#include "edm/report_json.hpp"
#include "edm/validation.hpp"
#include "edm/version.hpp"

namespace {

using namespace edm;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw EdmError(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw EdmError(ErrorKind::IoError, "cannot write '" + out_path + "'");
    out << text;
}

nlohmann::json envelope(const std::string& subcommand,
                        const std::vector<std::string>& inputs,
                        nlohmann::json payload) {
    payload["tool_version"] = kVersion;
    payload["subcommand"] = subcommand;
    payload["inputs"] = inputs;
    return payload;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

CrispInput parse_assignments(const std::vector<std::string>& sets) {
    CrispInput inputs;
    for (const std::string& item : sets) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw EdmError(ErrorKind::UsageError,
                           "--set expects VAR=VALUE, got '" + item + "'");
        std::string name = item.substr(0, eq);
        try {
            inputs[name] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw EdmError(ErrorKind::UsageError,
                           "--set " + item + ": value is not a number");
        }
    }
    return inputs;
}

Marking parse_initial(const std::string& csv, const FuzzyPetriNet& net) {
    Marking marking;
    std::istringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        auto dot = item.find('.');
        if (dot == std::string::npos)
            throw EdmError(ErrorKind::UsageError,
                           "--initial expects VAR.TERM entries, got '" + item + "'");
        const std::string var = lower(item.substr(0, dot));
        const std::string term = lower(item.substr(dot + 1));
        bool found = false;
        for (PlaceId p = 0; p < net.places.size(); ++p) {
            const Proposition& prop = net.places[p].prop;
            if (lower(prop.variable) == var && lower(prop.term) == term) {
                marking.tokens.insert(p);
                found = true;
                break;
            }
        }
        if (!found)
            throw EdmError(ErrorKind::UsageError,
                           "'" + item + "' names no place of the net");
    }
    return marking;
}

void print_structural_findings(const VerificationReport& report) {
    for (const StructuralFinding& f : report.findings) {
        std::cout << std::left << std::setw(8) << to_string(f.severity)
                  << std::setw(20) << to_string(f.kind);
        for (std::size_t i = 0; i < f.subjects.size(); ++i)
            std::cout << (i ? ", " : "") << f.subjects[i];
        std::cout << "\n    " << f.explanation << "\n";
    }
    std::size_t total_nodes = 0;
    for (const ReachabilityGraph& g : report.graphs) total_nodes += g.nodes.size();
    std::cout << report.findings.size() << " finding(s), "
              << report.graphs.size() << " reachability run(s), " << total_nodes
              << " marking(s)\nverdict: " << to_string(report.verdict) << "\n";
}

void print_validation(const ValidationReport& report) {
    for (const StaticFinding& f : report.static_findings)
        std::cout << std::left << std::setw(8)
                  << (f.kind == StaticFindingKind::ExtraElement ? "info" : "error")
                  << std::setw(14) << to_string(f.kind) << f.subject << "\n    "
                  << f.detail << "\n";
    for (const std::string& note : report.notes)
        std::cout << "note    " << note << "\n";
    for (const DynamicFinding& f : report.dynamic_findings) {
        std::cout << (f.passed ? "pass    " : "fail    ") << f.rr_name << ": ";
        if (f.computed)
            std::cout << "computed " << f.computed->value() << " ";
        std::cout << to_string(f.cmp) << " " << f.threshold.value() << " ("
                  << f.detail << ")\n";
    }
    std::cout << "verdict: " << to_string(report.verdict) << "\n";
}

int exit_code(Verdict verdict) {
    switch (verdict) {
        case Verdict::Clean: return 0;
        case Verdict::Warnings: return 1;
        case Verdict::Errors: return 2;
    }
    return 2;
}

int exit_code(ValidationVerdict verdict) {
    switch (verdict) {
        case ValidationVerdict::Valid: return 0;
        case ValidationVerdict::SemanticallyIncomplete: return 1;
        case ValidationVerdict::SemanticallyIncorrect: return 2;
        case ValidationVerdict::Both: return 2;
    }
    return 2;
}

int cmd_check(const std::string& model_path, const std::string& format,
              const std::string& out_path, std::size_t max_states) {
    EdmModel model = parse_model(read_file(model_path));
    VerifyOptions options;
    options.max_states = max_states;
    VerificationReport report = verify(model, options);
    if (format == "json") {
        write_output(envelope("check", {model_path}, to_json(report)).dump(2) + "\n",
                     out_path);
    } else {
        print_structural_findings(report);
    }
    return exit_code(report.verdict);
}

int cmd_validate(const std::string& model_path, const std::string& referent_path,
                 const std::string& format, const std::string& out_path) {
    EdmModel model = parse_model(read_file(model_path));
    ReferentDocument referent = parse_referent(read_file(referent_path));
    ValidationReport report =
        validate(model, referent.model, referent.reasoning_rules);
    if (format == "json") {
        write_output(envelope("validate", {model_path, referent_path},
                              to_json(report)).dump(2) + "\n",
                     out_path);
    } else {
        print_validation(report);
    }
    return exit_code(report.verdict);
}

int cmd_infer(const std::string& model_path, const std::vector<std::string>& sets,
              const std::string& format, const std::string& out_path) {
    EdmModel model = parse_model(read_file(model_path));
    CrispInput inputs = parse_assignments(sets);
    RiskResult risk = assess_risk(inputs, model);
    DecisionResult decision = decide(inputs, model);
    if (format == "json") {
        nlohmann::json payload = {{"risk", to_json(risk)},
                                  {"decision", to_json(decision)}};
        write_output(envelope("infer", {model_path}, payload).dump(2) + "\n",
                     out_path);
        return 0;
    }
    std::cout << "risk rules:\n";
    for (const RuleActivation& a : risk.activations)
        std::cout << "  " << a.rule << "  " << a.activation.value() << "\n";
    std::cout << risk.variable << " = " << risk.crisp << " (";
    bool first = true;
    for (const auto& [term, deg] : risk.term_degrees) {
        std::cout << (first ? "" : ", ") << term << "=" << deg.value();
        first = false;
    }
    std::cout << ")\ndecision rules:\n";
    for (const RuleActivation& a : decision.activations)
        std::cout << "  " << a.rule << "  " << a.activation.value() << "\n";
    std::cout << "action: " << decision.action << " (activation "
              << decision.activation.value() << ")\n";
    if (decision.tie)
        std::cout << "warning: activation tie, first-declared action chosen\n";
    return 0;
}

int cmd_export(const std::string& model_path, const std::string& what,
               const std::string& initial_csv, const std::string& out_path,
               std::size_t max_states) {
    EdmModel model = parse_model(read_file(model_path));
    FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
    std::string dot;
    std::string summary;
    if (what == "fpn") {
        dot = export_dot(net);
        summary = std::to_string(net.places.size()) + " places / " +
                  std::to_string(net.transitions.size()) + " transitions";
    } else {
        Marking initial = parse_initial(initial_csv, net);
        ReachabilityGraph graph = reachability(net, initial, max_states);
        dot = export_dot(net, graph);
        summary = std::to_string(graph.nodes.size()) + " nodes / " +
                  std::to_string(graph.edges.size()) + " edges";
    }
    write_output(dot, out_path);
    // keep stdout parseable when the DOT text goes there
    (out_path.empty() ? std::cerr : std::cout) << summary << "\n";
    return 0;
}

int cmd_sweep(const std::string& model_path, int grid, const std::string& out_path) {
    if (grid < 2)
        throw EdmError(ErrorKind::UsageError, "--grid must be at least 2");
    EdmModel model = parse_model(read_file(model_path));
    auto erfs = model.variables_of(VarKind::InputErf);

    std::ostringstream csv;
    for (const LinguisticVariable* var : erfs) csv << var->name << ",";
    csv << "risk_crisp,action\n";

    std::vector<int> counter(erfs.size(), 0);
    while (true) {
        CrispInput inputs;
        for (std::size_t i = 0; i < erfs.size(); ++i) {
            const double step =
                (erfs[i]->universe_max - erfs[i]->universe_min) / (grid - 1);
            inputs[erfs[i]->name] =
                counter[i] == grid - 1 ? erfs[i]->universe_max
                                       : erfs[i]->universe_min + step * counter[i];
        }
        DecisionResult decision = decide(inputs, model);
        double crisp = assess_risk(inputs, model).crisp;
        for (const LinguisticVariable* var : erfs)
            csv << inputs[var->name] << ",";
        csv << crisp << "," << decision.action << "\n";

        // odometer increment, last variable fastest
        std::size_t pos = erfs.size();
        while (pos > 0) {
            if (++counter[pos - 1] < grid) break;
            counter[pos - 1] = 0;
            --pos;
        }
        if (pos == 0 || erfs.empty()) break;
    }
    write_output(csv.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy rule-base verification and validation for "
                 "risk-based decision models"};
    app.require_subcommand(1);

    std::string model_path, referent_path, format = "human", out_path;
    std::string what = "fpn", initial_csv;
    std::vector<std::string> sets;
    std::size_t max_states = 100000;
    int grid = 11;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "human or json")
            ->check(CLI::IsMember({"human", "json"}));
        cmd->add_option("--out", out_path, "write the result to a file");
    };

    CLI::App* check = app.add_subcommand("check", "verify structural errors");
    check->add_option("model", model_path, "model file (.edm)")->required();
    check->add_option("--max-states", max_states, "reachability node cap");
    add_format(check);

    CLI::App* validate = app.add_subcommand("validate", "validate against a referent");
    validate->add_option("model", model_path, "model file (.edm)")->required();
    validate->add_option("referent", referent_path, "referent file (.edm)")->required();
    add_format(validate);

    CLI::App* infer = app.add_subcommand("infer", "run the inference pipeline");
    infer->add_option("model", model_path, "model file (.edm)")->required();
    infer->add_option("--set", sets, "input assignment VAR=VALUE (repeatable)");
    add_format(infer);

    CLI::App* exp = app.add_subcommand("export", "emit DOT graphs");
    exp->add_option("model", model_path, "model file (.edm)")->required();
    exp->add_option("--what", what, "fpn or reach")
        ->check(CLI::IsMember({"fpn", "reach"}));
    exp->add_option("--initial", initial_csv,
                    "comma-separated VAR.TERM list for reach");
    exp->add_option("--max-states", max_states, "reachability node cap");
    exp->add_option("--out", out_path, "write the result to a file");

    CLI::App* sweep = app.add_subcommand("sweep", "decision surface as CSV");
    sweep->add_option("model", model_path, "model file (.edm)")->required();
    sweep->add_option("--grid", grid, "samples per input universe");
    sweep->add_option("--out", out_path, "write the result to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (check->parsed())
            return cmd_check(model_path, format, out_path, max_states);
        if (validate->parsed())
            return cmd_validate(model_path, referent_path, format, out_path);
        if (infer->parsed())
            return cmd_infer(model_path, sets, format, out_path);
        if (exp->parsed())
            return cmd_export(model_path, what, initial_csv, out_path, max_states);
        if (sweep->parsed())
            return cmd_sweep(model_path, grid, out_path);
    } catch (const edm::EdmError& e) {
        std::cerr << "error [" << edm::to_string(e.kind) << "] " << e.what();
        if (e.span.line > 0)
            std::cerr << " (line " << e.span.line << ", column " << e.span.column
                      << ")";
        std::cerr << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
