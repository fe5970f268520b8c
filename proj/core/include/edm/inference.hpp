#pragma once

#include <map>
#include <string>
#include <vector>

#include "edm/model.hpp"

namespace edm {

/// Crisp ERF readings, one per input variable, in universe units.
using CrispInput = std::map<std::string, double>;

/// Per-proposition truth degrees, the working state of the engine.
using FuzzifiedState = std::map<Proposition, Degree>;

struct RuleActivation {
    std::string rule;
    Degree activation{};
};

struct RiskResult {
    double crisp = 0;                         // defuzzified level
    std::map<std::string, Degree> term_degrees; // clip level per risk term
    std::vector<double> aggregated_curve;     // sampled aggregate membership
    std::vector<RuleActivation> activations;  // per FERR rule
    std::string variable;
    double universe_min = 0, universe_max = 0;
};

struct DecisionResult {
    std::string action;
    Degree activation{};
    std::map<std::string, Degree> all_activations;
    std::vector<RuleActivation> activations; // per FERD rule
    bool tie = false;                        // argmax needed the declaration-order tie-break
};

inline constexpr std::size_t kDefuzzSamples = 1001;

/// Per-term trapezoid membership of a crisp value.
std::map<std::string, Degree> fuzzify(double value, const LinguisticVariable& variable);

/// Rule strength: min over each conjunction clause, max over clauses,
/// scaled by the certainty factor.
Degree evaluate_rule(const EthicalRule& rule, const FuzzifiedState& state);

/// Fuzzifies every input ERF of the model. Throws MissingInput /
/// UnknownVariable / OutOfUniverse on bad readings.
FuzzifiedState fuzzify_inputs(const CrispInput& inputs, const EdmModel& model);

/// Mamdani pipeline over the FERR rules: activation per rule, min-clip
/// implication, max aggregation, centroid defuzzification.
RiskResult assess_risk(const CrispInput& inputs, const EdmModel& model);

/// Runs assess_risk, re-fuzzifies the crisp risk level, evaluates the
/// FERD rules on risk and input degrees and picks the strongest action.
/// Ties go to the first-declared action term with `tie` set; pass
/// break_ties = false to get an AmbiguousDecision error instead.
DecisionResult decide(const CrispInput& inputs, const EdmModel& model,
                      bool break_ties = true);

} // namespace edm
