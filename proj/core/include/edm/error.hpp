#pragma once

#include <stdexcept>
#include <string>

namespace edm {

/// Position of a token or construct inside a source text. Lines and
/// columns are 1-based; length may be zero (end-of-input markers).
struct SourceSpan {
    int line = 0;
    int column = 0;
    int length = 0;

    bool operator==(const SourceSpan&) const = default;
};

enum class ErrorKind {
    // parsing
    SyntaxError,
    DuplicateDeclaration,
    NumericLiteralOutOfRange,
    // model resolution
    DegreeOutOfRange,
    CFOutOfRange,
    UnknownVariable,
    UnknownTerm,
    EmptyClause,
    ConsequentKindMismatch,
    AntecedentKindMismatch,
    MixedConsequentKinds,
    InvalidUniverse,
    BadMembershipFunction,
    CoverageGap,
    // inference
    OutOfUniverse,
    MissingInput,
    MissingAntecedentDegree,
    NoRuleFired,
    AmbiguousDecision,
    UnsupportedModel,
    // nets and analysis
    EmptyRuleSet,
    CyclicNet,
    UnknownProposition,
    StateExplosion,
    // tooling
    IoError,
    UsageError,
};

const char* to_string(ErrorKind kind);

class EdmError : public std::runtime_error {
public:
    EdmError(ErrorKind kind, const std::string& message, SourceSpan span = {})
        : std::runtime_error(message), kind(kind), span(span) {}

    ErrorKind kind;
    SourceSpan span;
};

} // namespace edm
