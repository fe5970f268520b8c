#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "edm/error.hpp"

namespace edm {

/// A truth/membership/confidence value constrained to [0,1].
class Degree {
public:
    Degree() = default;
    explicit Degree(double v) : v_(v) {
        if (!(v >= 0.0 && v <= 1.0))
            throw EdmError(ErrorKind::DegreeOutOfRange,
                           "degree " + std::to_string(v) + " outside [0,1]");
    }

    double value() const { return v_; }
    auto operator<=>(const Degree&) const = default;

private:
    double v_ = 0.0;
};

/// Trapezoidal membership function with knots a <= b <= c <= d.
/// Membership is 1 on [b,c], linear on [a,b] and [c,d], 0 outside.
/// A degenerate edge (a == b or c == d) keeps membership 1 at the knot,
/// which is how full-degree plateaus at universe boundaries are written.
struct TrapezoidMF {
    double a = 0, b = 0, c = 0, d = 0;

    double membership(double x) const {
        if (x < a) return 0.0;
        if (x <= b) return a == b ? 1.0 : (x - a) / (b - a);
        if (x <= c) return 1.0;
        if (x < d) return (d - x) / (d - c);
        return 0.0;
    }

    bool operator==(const TrapezoidMF&) const = default;
};

enum class VarKind { InputErf, InternalRl, OutputAd };

const char* to_string(VarKind kind);

/// One linguistic term of a variable. A term parsed without explicit
/// membership parameters has mf unset until resolve_model fills the
/// default partition in.
struct Term {
    std::string name;
    std::optional<TrapezoidMF> mf;

    bool operator==(const Term&) const = default;
};

struct LinguisticVariable {
    std::string name;
    double universe_min = 0;
    double universe_max = 0;
    std::vector<Term> terms;
    VarKind kind = VarKind::InputErf;

    const Term* find_term(const std::string& term_name) const;

    bool operator==(const LinguisticVariable&) const = default;
};

/// Reference to one term of one variable, e.g. Severity(low).
struct Proposition {
    std::string variable;
    std::string term;

    std::string text() const { return variable + "(" + term + ")"; }
    auto operator<=>(const Proposition&) const = default;
};

enum class RuleTypeTag { ErfsToRls, RlsToAsDs, ErfsToAsDs };

const char* to_string(RuleTypeTag tag);

/// A fuzzy rule: DNF antecedent (disjunction of conjunctive clauses),
/// one or more consequents, and a certainty factor.
struct EthicalRule {
    std::string name;
    std::vector<std::vector<Proposition>> antecedent; // clauses, each a conjunction
    std::vector<Proposition> consequents;
    Degree cf{1.0};
    SourceSpan src{};
    std::optional<RuleTypeTag> tag{};
};

/// Structural equality ignoring source spans and attached type tags.
bool structurally_equal(const EthicalRule& lhs, const EthicalRule& rhs);

struct EdmModel {
    std::string name;
    std::vector<LinguisticVariable> variables;
    std::vector<EthicalRule> ferrs; // risk-assessment rules
    std::vector<EthicalRule> ferds; // decision rules

    const LinguisticVariable* find_variable(const std::string& var_name) const;
    const LinguisticVariable* find_variable(const std::string& var_name,
                                            VarKind kind) const;
    /// Variables of the given kind, in declaration order.
    std::vector<const LinguisticVariable*> variables_of(VarKind kind) const;
    /// All rules, FERRs before FERDs, in declaration order.
    std::vector<const EthicalRule*> all_rules() const;
};

bool structurally_equal(const EdmModel& lhs, const EdmModel& rhs);

/// Default trapezoid for term `index` of an `n`-term partition over
/// [lo, hi]. The partition is symmetric, covers the whole universe and
/// pins full membership at both boundaries.
TrapezoidMF default_partition(double lo, double hi, std::size_t n, std::size_t index);

/// Validates a model against all structural invariants: every
/// proposition resolves, membership functions are well-formed and cover
/// their universe, consequent kinds match the rule class. Unset
/// membership functions are filled with the default partition and each
/// rule gets its type tag attached. Throws EdmError on violations.
EdmModel resolve_model(EdmModel model);

/// Tags a rule by the kinds of its antecedents and consequents:
/// consequents in RL space give ErfsToRls; consequents in AD space give
/// RlsToAsDs when every antecedent is an RL, ErfsToAsDs otherwise.
RuleTypeTag classify_rule(const EthicalRule& rule, const EdmModel& model);

} // namespace edm
