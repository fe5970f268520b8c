#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edm/dsl.hpp"
#include "edm/model.hpp"

namespace edm {

enum class StaticFindingKind {
    MissingERF,
    MissingRL,
    MissingAD,
    MissingTerm,
    MissingRule,
    ExtraElement,
};

const char* to_string(StaticFindingKind kind);

struct StaticFinding {
    StaticFindingKind kind;
    std::string subject;
    std::string detail;

    bool operator==(const StaticFinding&) const = default;
};

struct DynamicFinding {
    std::string rr_name;
    std::optional<Degree> computed; // absent when the conclusion is underivable
    Comparator cmp = Comparator::Greater;
    Degree threshold{};
    bool passed = false;
    std::string detail;

    bool operator==(const DynamicFinding&) const = default;
};

enum class ValidationVerdict { Valid, SemanticallyIncomplete, SemanticallyIncorrect, Both };

const char* to_string(ValidationVerdict verdict);

struct ValidationReport {
    std::vector<StaticFinding> static_findings;
    std::vector<DynamicFinding> dynamic_findings;
    std::vector<std::string> notes; // informational, e.g. certainty factor drift
    ValidationVerdict verdict = ValidationVerdict::Valid;
};

/// Compares the model's proposition inventory and normalized rules with
/// the referent's. A referent rule counts as covered when some model
/// rule shares its consequent and requires at least its antecedents;
/// everything uncovered is Missing*, model elements the referent does
/// not cover come back as ExtraElement.
std::vector<StaticFinding> static_validate(const EdmModel& model,
                                           const EdmModel& referent);

/// Certainty-factor drift notes for matched rules (delta above 0.05).
std::vector<std::string> cf_drift_notes(const EdmModel& model,
                                        const EdmModel& referent);

/// Runs each reasoning rule through the model's net with the premise
/// degrees as inputs and compares the derived conclusion degree against
/// the threshold. Premises or conclusions naming propositions the model
/// has no place for raise UnknownProposition.
std::vector<DynamicFinding> dynamic_validate(const EdmModel& model,
                                             const std::vector<ReasoningRule>& rrs);

struct ValidateOptions {
    /// Run the dynamic stage even when static validation found the model
    /// incomplete. Reasoning rules naming propositions the model lacks
    /// then come back as failed findings instead of raising.
    bool dynamic_despite_incompleteness = false;
};

/// Static stage always runs; the dynamic stage runs when no Missing*
/// finding was raised (the reasoning rules speak the referent's
/// vocabulary, which an incomplete model does not cover yet) or when the
/// options force it.
ValidationReport validate(const EdmModel& model, const EdmModel& referent,
                          const std::vector<ReasoningRule>& rrs,
                          const ValidateOptions& options = {});

} // namespace edm
