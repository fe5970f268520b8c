#include "edm/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "edm/fpn.hpp"
#include "edm/normalize.hpp"

namespace edm {

const char* to_string(StaticFindingKind kind) {
    switch (kind) {
        case StaticFindingKind::MissingERF: return "MissingERF";
        case StaticFindingKind::MissingRL: return "MissingRL";
        case StaticFindingKind::MissingAD: return "MissingAD";
        case StaticFindingKind::MissingTerm: return "MissingTerm";
        case StaticFindingKind::MissingRule: return "MissingRule";
        case StaticFindingKind::ExtraElement: return "ExtraElement";
    }
    return "?";
}

const char* to_string(ValidationVerdict verdict) {
    switch (verdict) {
        case ValidationVerdict::Valid: return "valid";
        case ValidationVerdict::SemanticallyIncomplete: return "semantically-incomplete";
        case ValidationVerdict::SemanticallyIncorrect: return "semantically-incorrect";
        case ValidationVerdict::Both: return "semantically-incomplete-and-incorrect";
    }
    return "?";
}

namespace {

struct NormalShape {
    std::set<Proposition> antecedents;
    Proposition consequent;
    auto operator<=>(const NormalShape&) const = default;
};

std::string shape_text(const NormalShape& shape) {
    std::string out;
    for (const Proposition& p : shape.antecedents) {
        if (!out.empty()) out += " & ";
        out += p.text();
    }
    return out + " -> " + shape.consequent.text();
}

// Proposition inventory of a rule base, the place set of its net.
struct Inventory {
    std::set<Proposition> places;
    // variables that own at least one place, keyed by (kind, name)
    std::map<std::pair<VarKind, std::string>, std::set<std::string>> variables;
    std::vector<std::pair<NormalShape, const NormalizedRule*>> rules;
    std::vector<NormalizedRule> storage;

    explicit Inventory(const EdmModel& model) {
        storage = normalize_model(model);
        for (const NormalizedRule& r : storage) {
            NormalShape shape{{r.antecedents.begin(), r.antecedents.end()},
                              r.consequent};
            for (const Proposition& p : shape.antecedents) places.insert(p);
            places.insert(shape.consequent);
            rules.emplace_back(std::move(shape), &r);
        }
        for (const Proposition& p : places) {
            const LinguisticVariable* var = model.find_variable(p.variable);
            VarKind kind = var ? var->kind : VarKind::InputErf;
            variables[{kind, p.variable}].insert(p.term);
        }
    }

    bool covers(const NormalShape& wanted) const {
        for (const auto& [shape, rule] : rules)
            if (shape.consequent == wanted.consequent &&
                std::includes(shape.antecedents.begin(), shape.antecedents.end(),
                              wanted.antecedents.begin(), wanted.antecedents.end()))
                return true;
        return false;
    }

    // covering rule with the smallest antecedent surplus, for cf notes
    const NormalizedRule* best_cover(const NormalShape& wanted) const {
        const NormalizedRule* best = nullptr;
        std::size_t best_surplus = 0;
        for (const auto& [shape, rule] : rules) {
            if (shape.consequent != wanted.consequent ||
                !std::includes(shape.antecedents.begin(), shape.antecedents.end(),
                               wanted.antecedents.begin(), wanted.antecedents.end()))
                continue;
            std::size_t surplus = shape.antecedents.size() - wanted.antecedents.size();
            if (!best || surplus < best_surplus) {
                best = rule;
                best_surplus = surplus;
            }
        }
        return best;
    }

    // closest rule with the same consequent, for actionable hints
    const NormalizedRule* nearest(const NormalShape& wanted) const {
        const NormalizedRule* best = nullptr;
        std::size_t best_overlap = 0;
        for (const auto& [shape, rule] : rules) {
            if (shape.consequent != wanted.consequent) continue;
            std::vector<Proposition> common;
            std::set_intersection(shape.antecedents.begin(), shape.antecedents.end(),
                                  wanted.antecedents.begin(), wanted.antecedents.end(),
                                  std::back_inserter(common));
            if (!best || common.size() > best_overlap) {
                best = rule;
                best_overlap = common.size();
            }
        }
        return best;
    }
};

StaticFindingKind missing_kind(VarKind kind) {
    switch (kind) {
        case VarKind::InputErf: return StaticFindingKind::MissingERF;
        case VarKind::InternalRl: return StaticFindingKind::MissingRL;
        case VarKind::OutputAd: return StaticFindingKind::MissingAD;
    }
    return StaticFindingKind::MissingERF;
}

} // namespace

std::vector<StaticFinding> static_validate(const EdmModel& model,
                                           const EdmModel& referent) {
    Inventory have(model), want(referent);
    std::vector<StaticFinding> findings;

    // referent variables and terms the model's net lacks
    for (const auto& [key, terms] : want.variables) {
        auto it = have.variables.find(key);
        if (it == have.variables.end()) {
            findings.push_back({missing_kind(key.first), key.second,
                                "referent " + std::string(to_string(key.first)) +
                                    " variable '" + key.second +
                                    "' does not appear in the model's net"});
            continue;
        }
        for (const std::string& term : terms)
            if (!it->second.count(term))
                findings.push_back({StaticFindingKind::MissingTerm,
                                    key.second + "(" + term + ")",
                                    "referent state '" + key.second + "(" + term +
                                        ")' does not appear in the model's net"});
    }

    // referent rules no model rule covers
    for (const auto& [shape, rule] : want.rules) {
        if (have.covers(shape)) continue;
        std::string detail = "referent rule '" + rule->label() +
                             "' (" + shape_text(shape) + ") has no counterpart";
        if (const NormalizedRule* hint = have.nearest(shape))
            detail += "; closest model rule is '" + hint->label() + "'";
        findings.push_back({StaticFindingKind::MissingRule, rule->origin, detail});
    }

    // model surplus, informational
    for (const auto& [key, terms] : have.variables) {
        auto it = want.variables.find(key);
        if (it == want.variables.end()) {
            findings.push_back({StaticFindingKind::ExtraElement, key.second,
                                "model " + std::string(to_string(key.first)) +
                                    " variable '" + key.second +
                                    "' has no counterpart in the referent"});
            continue;
        }
        for (const std::string& term : terms)
            if (!it->second.count(term))
                findings.push_back({StaticFindingKind::ExtraElement,
                                    key.second + "(" + term + ")",
                                    "model state '" + key.second + "(" + term +
                                        ")' has no counterpart in the referent"});
    }
    for (const auto& [shape, rule] : have.rules)
        if (!want.covers(shape))
            findings.push_back({StaticFindingKind::ExtraElement, rule->origin,
                                "model rule '" + rule->label() + "' (" +
                                    shape_text(shape) +
                                    ") has no counterpart in the referent"});

    return findings;
}

std::vector<std::string> cf_drift_notes(const EdmModel& model,
                                        const EdmModel& referent) {
    Inventory have(model), want(referent);
    std::vector<std::string> notes;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [shape, rule] : want.rules) {
        const NormalizedRule* match = have.best_cover(shape);
        if (!match) continue;
        double delta = std::fabs(match->cf.value() - rule->cf.value());
        if (delta <= 0.05) continue;
        if (!seen.insert({rule->origin, match->origin}).second) continue;
        std::ostringstream note;
        note << "certainty factor of '" << match->origin << "' (" << match->cf.value()
             << ") differs from referent rule '" << rule->origin << "' ("
             << rule->cf.value() << ")";
        notes.push_back(note.str());
    }
    return notes;
}

namespace {

DynamicFinding evaluate_reasoning_rule(const FuzzyPetriNet& net,
                                       const ReasoningRule& rr) {
    std::map<Proposition, Degree> inputs;
    for (const auto& [prop, degree] : rr.premises) {
        if (!net.find_place(prop))
            throw EdmError(ErrorKind::UnknownProposition,
                           "reasoning rule '" + rr.name + "': premise " +
                               prop.text() + " has no place in the model's net");
        inputs.emplace(prop, degree);
    }
    if (!net.find_place(rr.conclusion))
        throw EdmError(ErrorKind::UnknownProposition,
                       "reasoning rule '" + rr.name + "': conclusion " +
                           rr.conclusion.text() + " has no place in the model's net");

    std::map<Proposition, Degree> derived = reason(net, inputs);
    DynamicFinding finding;
    finding.rr_name = rr.name;
    finding.cmp = rr.cmp;
    finding.threshold = rr.threshold;
    auto it = derived.find(rr.conclusion);
    if (it == derived.end()) {
        finding.passed = false;
        finding.detail =
            rr.conclusion.text() + " is underivable from the given premises";
    } else {
        finding.computed = it->second;
        const double value = it->second.value();
        finding.passed = rr.cmp == Comparator::Greater
                             ? value > rr.threshold.value()
                             : value >= rr.threshold.value();
        std::ostringstream detail;
        detail << rr.conclusion.text() << " = " << value << " "
               << (finding.passed ? "satisfies" : "misses") << " "
               << to_string(rr.cmp) << " " << rr.threshold.value();
        finding.detail = detail.str();
    }
    return finding;
}

} // namespace

std::vector<DynamicFinding> dynamic_validate(const EdmModel& model,
                                             const std::vector<ReasoningRule>& rrs) {
    FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
    std::vector<DynamicFinding> findings;
    findings.reserve(rrs.size());
    for (const ReasoningRule& rr : rrs)
        findings.push_back(evaluate_reasoning_rule(net, rr));
    return findings;
}

ValidationReport validate(const EdmModel& model, const EdmModel& referent,
                          const std::vector<ReasoningRule>& rrs,
                          const ValidateOptions& options) {
    ValidationReport report;
    report.static_findings = static_validate(model, referent);
    report.notes = cf_drift_notes(model, referent);

    bool incomplete = false;
    for (const StaticFinding& f : report.static_findings)
        if (f.kind != StaticFindingKind::ExtraElement) incomplete = true;

    bool incorrect = false;
    if (!incomplete) {
        report.dynamic_findings = dynamic_validate(model, rrs);
    } else if (options.dynamic_despite_incompleteness && !rrs.empty()) {
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        for (const ReasoningRule& rr : rrs) {
            try {
                report.dynamic_findings.push_back(evaluate_reasoning_rule(net, rr));
            } catch (const EdmError& e) {
                if (e.kind != ErrorKind::UnknownProposition) throw;
                DynamicFinding finding;
                finding.rr_name = rr.name;
                finding.cmp = rr.cmp;
                finding.threshold = rr.threshold;
                finding.passed = false;
                finding.detail = e.what();
                report.dynamic_findings.push_back(std::move(finding));
            }
        }
    }
    for (const DynamicFinding& f : report.dynamic_findings)
        if (!f.passed) incorrect = true;

    if (incomplete && incorrect) report.verdict = ValidationVerdict::Both;
    else if (incomplete) report.verdict = ValidationVerdict::SemanticallyIncomplete;
    else if (incorrect) report.verdict = ValidationVerdict::SemanticallyIncorrect;
    else report.verdict = ValidationVerdict::Valid;
    return report;
}

} // namespace edm
