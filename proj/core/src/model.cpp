#include "edm/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace edm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
        case ErrorKind::NumericLiteralOutOfRange: return "NumericLiteralOutOfRange";
        case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorKind::CFOutOfRange: return "CFOutOfRange";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::UnknownTerm: return "UnknownTerm";
        case ErrorKind::EmptyClause: return "EmptyClause";
        case ErrorKind::ConsequentKindMismatch: return "ConsequentKindMismatch";
        case ErrorKind::AntecedentKindMismatch: return "AntecedentKindMismatch";
        case ErrorKind::MixedConsequentKinds: return "MixedConsequentKinds";
        case ErrorKind::InvalidUniverse: return "InvalidUniverse";
        case ErrorKind::BadMembershipFunction: return "BadMembershipFunction";
        case ErrorKind::CoverageGap: return "CoverageGap";
        case ErrorKind::OutOfUniverse: return "OutOfUniverse";
        case ErrorKind::MissingInput: return "MissingInput";
        case ErrorKind::MissingAntecedentDegree: return "MissingAntecedentDegree";
        case ErrorKind::NoRuleFired: return "NoRuleFired";
        case ErrorKind::AmbiguousDecision: return "AmbiguousDecision";
        case ErrorKind::UnsupportedModel: return "UnsupportedModel";
        case ErrorKind::EmptyRuleSet: return "EmptyRuleSet";
        case ErrorKind::CyclicNet: return "CyclicNet";
        case ErrorKind::UnknownProposition: return "UnknownProposition";
        case ErrorKind::StateExplosion: return "StateExplosion";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "UnknownError";
}

const char* to_string(VarKind kind) {
    switch (kind) {
        case VarKind::InputErf: return "erf";
        case VarKind::InternalRl: return "rl";
        case VarKind::OutputAd: return "ad";
    }
    return "?";
}

const char* to_string(RuleTypeTag tag) {
    switch (tag) {
        case RuleTypeTag::ErfsToRls: return "Type1-ERFs-to-RLs";
        case RuleTypeTag::RlsToAsDs: return "Type2-RLs-to-AsDs";
        case RuleTypeTag::ErfsToAsDs: return "Type3-ERFs-to-AsDs";
    }
    return "?";
}

const Term* LinguisticVariable::find_term(const std::string& term_name) const {
    for (const Term& t : terms)
        if (t.name == term_name) return &t;
    return nullptr;
}

const LinguisticVariable* EdmModel::find_variable(const std::string& var_name) const {
    for (const LinguisticVariable& v : variables)
        if (v.name == var_name) return &v;
    return nullptr;
}

const LinguisticVariable* EdmModel::find_variable(const std::string& var_name,
                                                  VarKind kind) const {
    const LinguisticVariable* v = find_variable(var_name);
    return v && v->kind == kind ? v : nullptr;
}

std::vector<const LinguisticVariable*> EdmModel::variables_of(VarKind kind) const {
    std::vector<const LinguisticVariable*> out;
    for (const LinguisticVariable& v : variables)
        if (v.kind == kind) out.push_back(&v);
    return out;
}

std::vector<const EthicalRule*> EdmModel::all_rules() const {
    std::vector<const EthicalRule*> out;
    out.reserve(ferrs.size() + ferds.size());
    for (const EthicalRule& r : ferrs) out.push_back(&r);
    for (const EthicalRule& r : ferds) out.push_back(&r);
    return out;
}

bool structurally_equal(const EthicalRule& lhs, const EthicalRule& rhs) {
    return lhs.name == rhs.name && lhs.antecedent == rhs.antecedent &&
           lhs.consequents == rhs.consequents && lhs.cf == rhs.cf;
}

bool structurally_equal(const EdmModel& lhs, const EdmModel& rhs) {
    auto rules_equal = [](const std::vector<EthicalRule>& a,
                          const std::vector<EthicalRule>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!structurally_equal(a[i], b[i])) return false;
        return true;
    };
    return lhs.name == rhs.name && lhs.variables == rhs.variables &&
           rules_equal(lhs.ferrs, rhs.ferrs) && rules_equal(lhs.ferds, rhs.ferds);
}

TrapezoidMF default_partition(double lo, double hi, std::size_t n, std::size_t index) {
    const double span = hi - lo;
    if (n <= 1) return {lo, lo, hi, hi};
    const double h = span / static_cast<double>(n - 1);
    const double center = lo + h * static_cast<double>(index);
    if (index == 0) return {lo, lo, lo + 0.4 * h, lo + 0.8 * h};
    if (index == n - 1) return {hi - 0.8 * h, hi - 0.4 * h, hi, hi};
    // Interior supports widen slightly beyond n == 3 so that adjacent
    // terms always overlap and the partition keeps covering the universe.
    const double half_support = n == 3 ? 0.4 * h : 0.55 * h;
    return {center - half_support, center - 0.1 * h, center + 0.1 * h,
            center + half_support};
}

namespace {

void check_variable(const LinguisticVariable& var) {
    if (!(var.universe_min < var.universe_max))
        throw EdmError(ErrorKind::InvalidUniverse,
                       "variable '" + var.name + "': universe is empty");
    if (var.terms.empty())
        throw EdmError(ErrorKind::InvalidUniverse,
                       "variable '" + var.name + "': no terms declared");
    std::set<std::string> seen;
    for (const Term& t : var.terms) {
        if (!seen.insert(t.name).second)
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "variable '" + var.name + "': duplicate term '" +
                               t.name + "'");
        const TrapezoidMF& mf = *t.mf;
        if (!(mf.a <= mf.b && mf.b <= mf.c && mf.c <= mf.d))
            throw EdmError(ErrorKind::BadMembershipFunction,
                           "term '" + var.name + "(" + t.name +
                               ")': trapezoid knots must be nondecreasing");
        if (mf.a < var.universe_min || mf.d > var.universe_max)
            throw EdmError(ErrorKind::BadMembershipFunction,
                           "term '" + var.name + "(" + t.name +
                               ")': membership function leaves the universe");
    }
}

// Membership functions are piecewise linear with breakpoints at their
// knots, so coverage holds on the whole universe iff it holds at every
// knot and at the midpoint of every adjacent knot pair.
void check_coverage(const LinguisticVariable& var) {
    std::vector<double> points{var.universe_min, var.universe_max};
    for (const Term& t : var.terms) {
        const TrapezoidMF& mf = *t.mf;
        for (double knot : {mf.a, mf.b, mf.c, mf.d})
            if (knot > var.universe_min && knot < var.universe_max)
                points.push_back(knot);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<double> probes = points;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        probes.push_back(0.5 * (points[i] + points[i + 1]));

    for (double x : probes) {
        bool covered = false;
        for (const Term& t : var.terms)
            if (t.mf->membership(x) > 0.0) { covered = true; break; }
        if (!covered) {
            std::ostringstream msg;
            msg << "variable '" << var.name << "': no term has membership > 0 at x = "
                << x;
            throw EdmError(ErrorKind::CoverageGap, msg.str());
        }
    }
}

void dedupe(std::vector<Proposition>& props) {
    std::vector<Proposition> out;
    for (const Proposition& p : props)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    props = std::move(out);
}

void resolve_rule(EthicalRule& rule, const EdmModel& model, bool is_ferr) {
    auto resolve_prop = [&](const Proposition& p) -> const LinguisticVariable& {
        const LinguisticVariable* var = model.find_variable(p.variable);
        if (!var)
            throw EdmError(ErrorKind::UnknownVariable,
                           "rule '" + rule.name + "': unknown variable '" +
                               p.variable + "'",
                           rule.src);
        if (!var->find_term(p.term))
            throw EdmError(ErrorKind::UnknownTerm,
                           "rule '" + rule.name + "': variable '" + p.variable +
                               "' has no term '" + p.term + "'",
                           rule.src);
        return *var;
    };

    if (rule.antecedent.empty())
        throw EdmError(ErrorKind::EmptyClause,
                       "rule '" + rule.name + "': antecedent has no clauses",
                       rule.src);
    for (auto& clause : rule.antecedent) {
        if (clause.empty())
            throw EdmError(ErrorKind::EmptyClause,
                           "rule '" + rule.name + "': empty conjunction clause",
                           rule.src);
        dedupe(clause);
        for (const Proposition& p : clause) {
            const LinguisticVariable& var = resolve_prop(p);
            if (var.kind == VarKind::OutputAd)
                throw EdmError(ErrorKind::AntecedentKindMismatch,
                               "rule '" + rule.name + "': antecedent " + p.text() +
                                   " refers to an output variable",
                               rule.src);
        }
    }

    if (rule.consequents.empty())
        throw EdmError(ErrorKind::EmptyClause,
                       "rule '" + rule.name + "': no consequents", rule.src);
    dedupe(rule.consequents);
    const VarKind required = is_ferr ? VarKind::InternalRl : VarKind::OutputAd;
    for (const Proposition& p : rule.consequents) {
        const LinguisticVariable& var = resolve_prop(p);
        if (var.kind != required)
            throw EdmError(ErrorKind::ConsequentKindMismatch,
                           "rule '" + rule.name + "': consequent " + p.text() +
                               " must name a " +
                               (is_ferr ? "risk-level" : "action") + " variable",
                           rule.src);
    }

    rule.tag = classify_rule(rule, model);
}

} // namespace

EdmModel resolve_model(EdmModel model) {
    std::set<std::string> var_names;
    for (LinguisticVariable& var : model.variables) {
        if (!var_names.insert(var.name).second)
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "duplicate variable '" + var.name + "'");
        for (std::size_t i = 0; i < var.terms.size(); ++i)
            if (!var.terms[i].mf)
                var.terms[i].mf = default_partition(var.universe_min,
                                                    var.universe_max,
                                                    var.terms.size(), i);
        check_variable(var);
        check_coverage(var);
    }

    std::set<std::string> rule_names;
    for (const EthicalRule* r : model.all_rules())
        if (!rule_names.insert(r->name).second)
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "duplicate rule '" + r->name + "'", r->src);

    for (EthicalRule& r : model.ferrs) resolve_rule(r, model, true);
    for (EthicalRule& r : model.ferds) resolve_rule(r, model, false);
    return model;
}

RuleTypeTag classify_rule(const EthicalRule& rule, const EdmModel& model) {
    auto kind_of = [&](const Proposition& p) {
        const LinguisticVariable* var = model.find_variable(p.variable);
        if (!var)
            throw EdmError(ErrorKind::UnknownVariable,
                           "rule '" + rule.name + "': unknown variable '" +
                               p.variable + "'");
        return var->kind;
    };

    bool any_rl = false, any_ad = false;
    for (const Proposition& p : rule.consequents) {
        switch (kind_of(p)) {
            case VarKind::InternalRl: any_rl = true; break;
            case VarKind::OutputAd: any_ad = true; break;
            case VarKind::InputErf:
                throw EdmError(ErrorKind::ConsequentKindMismatch,
                               "rule '" + rule.name + "': consequent " + p.text() +
                                   " refers to an input variable");
        }
    }
    if (any_rl && any_ad)
        throw EdmError(ErrorKind::MixedConsequentKinds,
                       "rule '" + rule.name +
                           "': consequents mix risk levels and actions");
    if (any_rl) return RuleTypeTag::ErfsToRls;

    bool any_erf_antecedent = false;
    for (const auto& clause : rule.antecedent)
        for (const Proposition& p : clause)
            if (kind_of(p) == VarKind::InputErf) any_erf_antecedent = true;
    return any_erf_antecedent ? RuleTypeTag::ErfsToAsDs : RuleTypeTag::RlsToAsDs;
}

} // namespace edm
