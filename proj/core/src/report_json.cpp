#include "edm/report_json.hpp"

#include <string>

namespace edm {

namespace {

using nlohmann::json;

FindingKind finding_kind_from(const std::string& s) {
    for (FindingKind k : {FindingKind::DanglingAntecedent, FindingKind::DeadEndConsequent,
                          FindingKind::Inconsistency, FindingKind::Circularity,
                          FindingKind::DuplicateRule, FindingKind::SubsumedRule,
                          FindingKind::EmptyRuleBase})
        if (s == to_string(k)) return k;
    throw EdmError(ErrorKind::IoError, "unknown finding kind '" + s + "'");
}

StaticFindingKind static_kind_from(const std::string& s) {
    for (StaticFindingKind k : {StaticFindingKind::MissingERF, StaticFindingKind::MissingRL,
                                StaticFindingKind::MissingAD, StaticFindingKind::MissingTerm,
                                StaticFindingKind::MissingRule, StaticFindingKind::ExtraElement})
        if (s == to_string(k)) return k;
    throw EdmError(ErrorKind::IoError, "unknown finding kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
    for (Verdict v : {Verdict::Clean, Verdict::Warnings, Verdict::Errors})
        if (s == to_string(v)) return v;
    throw EdmError(ErrorKind::IoError, "unknown verdict '" + s + "'");
}

ValidationVerdict validation_verdict_from(const std::string& s) {
    for (ValidationVerdict v : {ValidationVerdict::Valid,
                                ValidationVerdict::SemanticallyIncomplete,
                                ValidationVerdict::SemanticallyIncorrect,
                                ValidationVerdict::Both})
        if (s == to_string(v)) return v;
    throw EdmError(ErrorKind::IoError, "unknown verdict '" + s + "'");
}

} // namespace

json to_json(const VerificationReport& report) {
    json findings = json::array();
    for (const StructuralFinding& f : report.findings)
        findings.push_back({{"kind", to_string(f.kind)},
                            {"subjects", f.subjects},
                            {"severity", to_string(f.severity)},
                            {"explanation", f.explanation}});
    json graphs = json::array();
    for (const ReachabilityGraph& g : report.graphs)
        graphs.push_back({{"nodes", g.nodes.size()}, {"edges", g.edges.size()}});
    return {{"findings", findings},
            {"graphs", graphs},
            {"verdict", to_string(report.verdict)}};
}

VerificationReport verification_report_from_json(const json& j) {
    VerificationReport report;
    for (const json& f : j.at("findings")) {
        StructuralFinding finding;
        finding.kind = finding_kind_from(f.at("kind").get<std::string>());
        finding.subjects = f.at("subjects").get<std::vector<std::string>>();
        finding.severity = f.at("severity").get<std::string>() == "error"
                               ? Severity::Error
                               : Severity::Warning;
        finding.explanation = f.at("explanation").get<std::string>();
        report.findings.push_back(std::move(finding));
    }
    report.verdict = verdict_from(j.at("verdict").get<std::string>());
    return report;
}

json to_json(const ValidationReport& report) {
    json findings = json::array();
    for (const StaticFinding& f : report.static_findings) {
        const bool informational = f.kind == StaticFindingKind::ExtraElement;
        findings.push_back({{"kind", to_string(f.kind)},
                            {"subjects", json::array({f.subject})},
                            {"severity", informational ? "info" : "error"},
                            {"explanation", f.detail}});
    }
    for (const DynamicFinding& f : report.dynamic_findings) {
        json entry = {{"kind", "ReasoningRule"},
                      {"subjects", json::array({f.rr_name})},
                      {"severity", f.passed ? "info" : "error"},
                      {"explanation", f.detail},
                      {"comparator", to_string(f.cmp)},
                      {"threshold", f.threshold.value()},
                      {"passed", f.passed}};
        if (f.computed) entry["computed"] = f.computed->value();
        findings.push_back(std::move(entry));
    }
    return {{"findings", findings},
            {"notes", report.notes},
            {"verdict", to_string(report.verdict)}};
}

ValidationReport validation_report_from_json(const json& j) {
    ValidationReport report;
    for (const json& f : j.at("findings")) {
        const std::string kind = f.at("kind").get<std::string>();
        if (kind == "ReasoningRule") {
            DynamicFinding finding;
            finding.rr_name = f.at("subjects").at(0).get<std::string>();
            if (f.contains("computed"))
                finding.computed = Degree(f.at("computed").get<double>());
            finding.cmp = f.at("comparator").get<std::string>() == ">"
                              ? Comparator::Greater
                              : Comparator::GreaterEqual;
            finding.threshold = Degree(f.at("threshold").get<double>());
            finding.passed = f.at("passed").get<bool>();
            finding.detail = f.at("explanation").get<std::string>();
            report.dynamic_findings.push_back(std::move(finding));
        } else {
            StaticFinding finding;
            finding.kind = static_kind_from(kind);
            finding.subject = f.at("subjects").at(0).get<std::string>();
            finding.detail = f.at("explanation").get<std::string>();
            report.static_findings.push_back(std::move(finding));
        }
    }
    if (j.contains("notes"))
        report.notes = j.at("notes").get<std::vector<std::string>>();
    report.verdict = validation_verdict_from(j.at("verdict").get<std::string>());
    return report;
}

json to_json(const RiskResult& risk) {
    json terms = json::object();
    for (const auto& [term, degree] : risk.term_degrees)
        terms[term] = degree.value();
    json activations = json::array();
    for (const RuleActivation& a : risk.activations)
        activations.push_back({{"rule", a.rule}, {"activation", a.activation.value()}});
    return {{"variable", risk.variable},
            {"crisp", risk.crisp},
            {"universe", json::array({risk.universe_min, risk.universe_max})},
            {"term_degrees", terms},
            {"activations", activations},
            {"aggregated_curve", risk.aggregated_curve}};
}

json to_json(const DecisionResult& decision) {
    json all = json::object();
    for (const auto& [term, degree] : decision.all_activations)
        all[term] = degree.value();
    json activations = json::array();
    for (const RuleActivation& a : decision.activations)
        activations.push_back({{"rule", a.rule}, {"activation", a.activation.value()}});
    return {{"action", decision.action},
            {"activation", decision.activation.value()},
            {"all_activations", all},
            {"activations", activations},
            {"tie", decision.tie}};
}

} // namespace edm
