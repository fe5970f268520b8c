#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "edm/fpn.hpp"

namespace edm {

struct ReachabilityGraph {
    struct Edge {
        std::size_t from;
        TransId transition;
        std::size_t to;
    };
    std::vector<Marking> nodes; // BFS order, nodes[root] is the initial marking
    std::vector<Edge> edges;
    std::size_t root = 0;
};

/// Breadth-first closure under fire_boolean; equal markings are merged.
/// Throws StateExplosion when the node count exceeds max_states.
ReachabilityGraph reachability(const FuzzyPetriNet& net, const Marking& initial,
                               std::size_t max_states = 100000);

enum class FindingKind {
    DanglingAntecedent,
    DeadEndConsequent,
    Inconsistency,
    Circularity,
    DuplicateRule,
    SubsumedRule,
    EmptyRuleBase,
};

enum class Severity { Warning, Error };

const char* to_string(FindingKind kind);
const char* to_string(Severity severity);

struct StructuralFinding {
    FindingKind kind;
    std::vector<std::string> subjects; // places and/or rule names involved
    Severity severity = Severity::Warning;
    std::string explanation;

    bool operator==(const StructuralFinding&) const = default;
};

enum class Verdict { Clean, Warnings, Errors };

const char* to_string(Verdict verdict);

struct VerificationReport {
    std::vector<StructuralFinding> findings;
    std::vector<ReachabilityGraph> graphs; // one per initial ERF assignment
    Verdict verdict = Verdict::Clean;
};

/// Non-input places no rule derives (dangling antecedents) and
/// non-output places no rule consumes (dead-end consequents).
std::vector<StructuralFinding> check_incompleteness(const FuzzyPetriNet& net);

/// Reachable markings holding two or more terms of the same internal or
/// output variable (mutually exclusive states derived together).
std::vector<StructuralFinding> check_inconsistency(const FuzzyPetriNet& net,
                                                   const ReachabilityGraph& graph);

/// Elementary cycles of the place->transition->place digraph, each
/// reported with the participating rules. Enumeration stops after
/// max_cycles with a truncation warning.
std::vector<StructuralFinding> check_circularity(const FuzzyPetriNet& net,
                                                 std::size_t max_cycles = 10000);

/// Duplicate rules, rules subsumed by a weaker-conditioned rule with the
/// same conclusion, and rules whose conclusions a sibling rule implies.
std::vector<StructuralFinding> check_redundancy(const std::vector<NormalizedRule>& rules);

struct VerifyOptions {
    std::size_t max_states = 100000;
    std::size_t max_cycles = 10000;
};

/// Full verification: normalize, compile, reachability from every
/// single-term assignment of the input variables, then all four checks.
VerificationReport verify(const EdmModel& model, const VerifyOptions& options = {});

/// DOT rendering of a reachability graph; node labels are marking bit
/// vectors over p1..pn.
std::string export_dot(const FuzzyPetriNet& net, const ReachabilityGraph& graph);

} // namespace edm
