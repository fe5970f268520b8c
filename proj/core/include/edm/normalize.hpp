#pragma once

#include <string>
#include <vector>

#include "edm/model.hpp"

namespace edm {

/// Single-consequent conjunctive rule, the unit compiled into the net.
/// origin + clause_index + consequent_index record which disjunct of
/// which source rule it came from (both indices 0-based).
struct NormalizedRule {
    std::string origin;
    int clause_index = 0;
    int consequent_index = 0;
    std::vector<Proposition> antecedents;
    Proposition consequent;
    Degree cf{1.0};

    std::string label() const;
    bool operator==(const NormalizedRule&) const = default;
};

/// One normalized rule per (disjunct clause x consequent) pair, clause
/// major, each inheriting the parent certainty factor.
std::vector<NormalizedRule> normalize_rule(const EthicalRule& rule);

/// Concatenation over all FERRs then FERDs in declaration order.
std::vector<NormalizedRule> normalize_model(const EdmModel& model);

} // namespace edm
