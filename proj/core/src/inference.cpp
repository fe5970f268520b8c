#include "edm/inference.hpp"

#include <algorithm>

namespace edm {

namespace {

const LinguisticVariable& single_variable(const EdmModel& model, VarKind kind,
                                          const char* role) {
    auto vars = model.variables_of(kind);
    if (vars.size() != 1)
        throw EdmError(ErrorKind::UnsupportedModel,
                       "model '" + model.name + "' declares " +
                           std::to_string(vars.size()) + " " + role +
                           " variables, the inference pipeline needs exactly one");
    return *vars.front();
}

} // namespace

std::map<std::string, Degree> fuzzify(double value, const LinguisticVariable& variable) {
    if (value < variable.universe_min || value > variable.universe_max)
        throw EdmError(ErrorKind::OutOfUniverse,
                       "value " + std::to_string(value) + " outside universe [" +
                           std::to_string(variable.universe_min) + ", " +
                           std::to_string(variable.universe_max) + "] of '" +
                           variable.name + "'");
    std::map<std::string, Degree> out;
    for (const Term& t : variable.terms)
        out.emplace(t.name, Degree(t.mf->membership(value)));
    return out;
}

Degree evaluate_rule(const EthicalRule& rule, const FuzzifiedState& state) {
    double strongest_clause = 0.0;
    for (const auto& clause : rule.antecedent) {
        double clause_degree = 1.0;
        for (const Proposition& p : clause) {
            auto it = state.find(p);
            if (it == state.end())
                throw EdmError(ErrorKind::MissingAntecedentDegree,
                               "rule '" + rule.name + "': no degree for " + p.text());
            clause_degree = std::min(clause_degree, it->second.value());
        }
        strongest_clause = std::max(strongest_clause, clause_degree);
    }
    return Degree(strongest_clause * rule.cf.value());
}

FuzzifiedState fuzzify_inputs(const CrispInput& inputs, const EdmModel& model) {
    for (const auto& [name, value] : inputs) {
        (void)value;
        if (!model.find_variable(name, VarKind::InputErf))
            throw EdmError(ErrorKind::UnknownVariable,
                           "'" + name + "' is not an input variable of '" +
                               model.name + "'");
    }
    FuzzifiedState state;
    for (const LinguisticVariable* var : model.variables_of(VarKind::InputErf)) {
        auto it = inputs.find(var->name);
        if (it == inputs.end())
            throw EdmError(ErrorKind::MissingInput,
                           "no value given for input '" + var->name + "'");
        for (const auto& [term, deg] : fuzzify(it->second, *var))
            state.emplace(Proposition{var->name, term}, deg);
    }
    return state;
}

RiskResult assess_risk(const CrispInput& inputs, const EdmModel& model) {
    const LinguisticVariable& risk =
        single_variable(model, VarKind::InternalRl, "risk-level");
    FuzzifiedState state = fuzzify_inputs(inputs, model);

    RiskResult result;
    result.variable = risk.name;
    result.universe_min = risk.universe_min;
    result.universe_max = risk.universe_max;
    for (const Term& t : risk.terms) result.term_degrees.emplace(t.name, Degree(0.0));

    for (const EthicalRule& rule : model.ferrs) {
        Degree activation = evaluate_rule(rule, state);
        result.activations.push_back({rule.name, activation});
        for (const Proposition& q : rule.consequents) {
            auto it = result.term_degrees.find(q.term);
            if (it != result.term_degrees.end() && activation > it->second)
                it->second = activation;
        }
    }

    // min-clip implication, pointwise max aggregation, centroid.
    const double span = risk.universe_max - risk.universe_min;
    const double step = span / static_cast<double>(kDefuzzSamples - 1);
    result.aggregated_curve.resize(kDefuzzSamples);
    double mass = 0.0, moment = 0.0;
    for (std::size_t k = 0; k < kDefuzzSamples; ++k) {
        const double x = risk.universe_min + step * static_cast<double>(k);
        double mu = 0.0;
        for (const Term& t : risk.terms) {
            const double clip = result.term_degrees.at(t.name).value();
            if (clip <= 0.0) continue;
            mu = std::max(mu, std::min(clip, t.mf->membership(x)));
        }
        result.aggregated_curve[k] = mu;
        mass += mu;
        moment += mu * x;
    }
    if (mass == 0.0)
        throw EdmError(ErrorKind::NoRuleFired,
                       "no risk rule fired, aggregate membership is zero");
    result.crisp = moment / mass;
    result.crisp = std::clamp(result.crisp, risk.universe_min, risk.universe_max);
    return result;
}

DecisionResult decide(const CrispInput& inputs, const EdmModel& model,
                      bool break_ties) {
    const LinguisticVariable& action =
        single_variable(model, VarKind::OutputAd, "action");
    const LinguisticVariable& risk =
        single_variable(model, VarKind::InternalRl, "risk-level");

    RiskResult risk_result = assess_risk(inputs, model);
    FuzzifiedState state = fuzzify_inputs(inputs, model);
    for (const auto& [term, deg] : fuzzify(risk_result.crisp, risk))
        state.emplace(Proposition{risk.name, term}, deg);

    DecisionResult result;
    for (const Term& t : action.terms) result.all_activations.emplace(t.name, Degree(0.0));
    for (const EthicalRule& rule : model.ferds) {
        Degree activation = evaluate_rule(rule, state);
        result.activations.push_back({rule.name, activation});
        for (const Proposition& q : rule.consequents) {
            auto it = result.all_activations.find(q.term);
            if (it != result.all_activations.end() && activation > it->second)
                it->second = activation;
        }
    }

    double best = 0.0;
    for (const auto& [term, deg] : result.all_activations)
        best = std::max(best, deg.value());
    if (best == 0.0)
        throw EdmError(ErrorKind::NoRuleFired, "no decision rule fired");

    // argmax in declaration order so ties resolve deterministically
    std::vector<std::string> winners;
    for (const Term& t : action.terms)
        if (result.all_activations.at(t.name).value() == best)
            winners.push_back(t.name);
    if (winners.size() > 1) {
        if (!break_ties)
            throw EdmError(ErrorKind::AmbiguousDecision,
                           std::to_string(winners.size()) +
                               " actions share the top activation");
        result.tie = true;
    }
    result.action = winners.front();
    result.activation = Degree(best);
    return result;
}

} // namespace edm
