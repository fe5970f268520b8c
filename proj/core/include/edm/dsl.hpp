#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edm/model.hpp"

namespace edm {

enum class Comparator { Greater, GreaterEqual };

const char* to_string(Comparator cmp);

/// A dynamic-validation test case: premise degrees fed into the net and
/// a threshold the derived conclusion degree has to clear.
struct ReasoningRule {
    std::string name;
    std::vector<std::pair<Proposition, Degree>> premises;
    Proposition conclusion;
    Comparator cmp = Comparator::Greater;
    Degree threshold{};
    SourceSpan src{};
};

struct ReferentDocument {
    EdmModel model;
    std::vector<ReasoningRule> reasoning_rules;
};

/// Parses a `.edm` document and resolves it. Reasoning-rule clauses are
/// accepted but dropped; use parse_referent to keep them.
EdmModel parse_model(std::string_view text);

/// Parses a `.edm` document keeping its reasoning rules (may be empty).
ReferentDocument parse_referent(std::string_view text);

/// Canonical text form; parse_model(serialize_model(m)) is structurally
/// equal to m for any resolved model.
std::string serialize_model(const EdmModel& model);

} // namespace edm
