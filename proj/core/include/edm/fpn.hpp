#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edm/normalize.hpp"

namespace edm {

using PlaceId = std::uint32_t;
using TransId = std::uint32_t;

struct FpnPlace {
    Proposition prop; // gamma: place -> proposition (bijective)
    VarKind kind = VarKind::InputErf;
};

struct FpnTransition {
    std::string origin;
    int clause_index = 0;
    int consequent_index = 0;
    Degree cf{1.0}; // f: transition -> [0,1]
    std::vector<PlaceId> inputs;
    PlaceId output = 0;
};

/// Rule net: one place per proposition used by the rules, one transition
/// per normalized rule. Places and transitions are numbered p1../t1.. in
/// declaration and rule order respectively.
struct FuzzyPetriNet {
    std::vector<FpnPlace> places;
    std::vector<FpnTransition> transitions;

    bool input_fn(PlaceId p, TransId t) const;  // I: P x T -> {0,1}
    bool output_fn(TransId t, PlaceId p) const; // O: T x P -> {0,1}

    std::optional<PlaceId> find_place(const Proposition& prop) const;
    const std::vector<TransId>& producers(PlaceId p) const {
        return producers_by_place[p];
    }
    const std::vector<TransId>& consumers(PlaceId p) const {
        return consumers_by_place[p];
    }

    /// True when the place->transition->place dependency digraph has no
    /// directed cycle.
    bool acyclic() const;

    // adjacency and lookup, filled by compile_fpn
    std::vector<std::vector<TransId>> producers_by_place, consumers_by_place;
    std::map<Proposition, PlaceId> place_index;
};

/// Builds the net from normalized rules. Place numbering follows the
/// model's variable and term declaration order, restricted to
/// propositions that actually occur in the rules.
FuzzyPetriNet compile_fpn(const std::vector<NormalizedRule>& rules,
                          const EdmModel& model);

/// Certainty-factor propagation to fixpoint: a transition whose input
/// places all carry degrees contributes min(inputs) * cf to its output
/// place; places fed by several transitions keep the maximum. Places
/// that are neither given nor derived stay absent from the result.
/// Throws CyclicNet on cyclic nets and UnknownProposition for inputs
/// that are not places.
std::map<Proposition, Degree> reason(const FuzzyPetriNet& net,
                                     const std::map<Proposition, Degree>& inputs);

/// Token state. Tokens are never consumed (derived facts stay derived);
/// degrees are only used by reasoning mode.
struct Marking {
    std::set<PlaceId> tokens;
    std::map<PlaceId, Degree> degrees;

    bool operator==(const Marking& other) const { return tokens == other.tokens; }
    bool operator<(const Marking& other) const { return tokens < other.tokens; }
};

/// All firings that enlarge the marking: transitions whose input places
/// are all marked and whose output place is not yet marked.
std::vector<std::pair<TransId, Marking>> fire_boolean(const FuzzyPetriNet& net,
                                                      const Marking& marking);

/// GraphViz rendering: circles for places, boxes for transitions,
/// transition labels carry the rule origin and certainty factor.
std::string export_dot(const FuzzyPetriNet& net);

} // namespace edm
