// Acceptance suite: replays the worked patient-dilemma example end to
// end and backs the prose-level guarantees with property checks. One
// line per criterion; exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "edm/analysis.hpp"
#include "edm/dsl.hpp"
#include "edm/inference.hpp"
#include "edm/validation.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace edm;

namespace {

struct Check {
    std::vector<std::string> failures;
    double elapsed_s = 0;

    void expect(bool condition, const std::string& what) {
        if (!condition) failures.push_back(what);
    }
    void expect_near(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol))
            failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                               std::to_string(want));
    }
};

EdmModel load(const std::string& path) { return testsupport::load_model(path); }

// --- criterion bodies ----------------------------------------------------

void criterion_normalization_golden(Check& c) {
    EdmModel model = load(testsupport::model_path("patient.edm"));
    std::vector<NormalizedRule> rules = normalize_model(model);
    c.expect(rules.size() == 12, "expected 12 normalized rules");

    using P = Proposition;
    struct Row {
        std::vector<P> ants;
        P cons;
    };
    const std::vector<Row> golden = {
        {{{"Severity", "low"}, {"Mental", "good"}}, {"Risk", "low"}},
        {{{"Severity", "medium"}, {"Mental", "good"}}, {"Risk", "low"}},
        {{{"Severity", "low"}, {"Mental", "average"}}, {"Risk", "low"}},
        {{{"Severity", "low"}, {"Mental", "bad"}}, {"Risk", "low"}},
        {{{"Severity", "high"}, {"Mental", "good"}}, {"Risk", "medium"}},
        {{{"Severity", "medium"}, {"Mental", "average"}}, {"Risk", "medium"}},
        {{{"Severity", "high"}, {"Mental", "average"}}, {"Risk", "high"}},
        {{{"Severity", "medium"}, {"Mental", "bad"}}, {"Risk", "high"}},
        {{{"Severity", "high"}, {"Mental", "bad"}}, {"Risk", "high"}},
        {{{"Risk", "low"}}, {"Action", "accept"}},
        {{{"Risk", "high"}}, {"Action", "try_again_now"}},
        {{{"Risk", "medium"}}, {"Action", "try_again_later"}},
    };
    for (std::size_t i = 0; i < golden.size() && i < rules.size(); ++i) {
        c.expect(rules[i].antecedents == golden[i].ants,
                 "antecedents differ at rule " + std::to_string(i + 1));
        c.expect(rules[i].consequent == golden[i].cons,
                 "consequent differs at rule " + std::to_string(i + 1));
    }
}

void criterion_fpn_cardinalities(Check& c) {
    EdmModel patient = load(testsupport::model_path("patient.edm"));
    FuzzyPetriNet p_net = compile_fpn(normalize_model(patient), patient);
    c.expect(p_net.places.size() == 12, "patient net must have 12 places");
    c.expect(p_net.transitions.size() == 12, "patient net must have 12 transitions");

    ReferentDocument doc =
        testsupport::load_referent(testsupport::model_path("referent.edm"));
    FuzzyPetriNet r_net = compile_fpn(normalize_model(doc.model), doc.model);
    c.expect(r_net.places.size() == 15, "referent net must have 15 places");
    c.expect(r_net.transitions.size() == 14, "referent net must have 14 transitions");

    // transition factors grouped by originating rule:
    // R1r..R6r carry (0.80, 0.70, 0.90, 0.95, 0.70, 0.80)
    const std::vector<std::pair<std::string, double>> expected = {
        {"R1r", 0.80}, {"R2r", 0.70}, {"R3r", 0.90},
        {"R4r", 0.95}, {"R5r", 0.70}, {"R6r", 0.80}};
    for (const FpnTransition& t : r_net.transitions) {
        bool matched = false;
        for (const auto& [origin, cf] : expected)
            if (t.origin == origin) {
                matched = true;
                c.expect_near(t.cf.value(), cf, 0.0,
                              "certainty factor of a transition from " + origin);
            }
        c.expect(matched, "unexpected transition origin " + t.origin);
    }
}

void criterion_reachability_replication(Check& c) {
    EdmModel patient = load(testsupport::model_path("patient.edm"));
    FuzzyPetriNet net = compile_fpn(normalize_model(patient), patient);
    Marking initial;
    initial.tokens = {*net.find_place({"Severity", "low"}),
                      *net.find_place({"Mental", "good"})};
    ReachabilityGraph graph = reachability(net, initial);

    c.expect(graph.nodes.size() == 3, "graph must be a 3-node chain");
    c.expect(graph.edges.size() == 2, "graph must have exactly 2 firings");
    if (graph.edges.size() == 2) {
        c.expect(graph.edges[0].transition == 0, "first firing must be t1");
        c.expect(graph.edges[1].transition == 9, "second firing must be t10");
    }
    std::set<PlaceId> expected_final = {
        *net.find_place({"Severity", "low"}), *net.find_place({"Mental", "good"}),
        *net.find_place({"Risk", "low"}), *net.find_place({"Action", "accept"})};
    c.expect(graph.nodes.back().tokens == expected_final,
             "final marking must add risk(low) and action(accept)");
}

void criterion_structural_fixtures(Check& c) {
    // incompleteness example
    {
        EdmModel m = load(testsupport::fixture_path("incomplete.edm"));
        auto findings = check_incompleteness(compile_fpn(normalize_model(m), m));
        c.expect(findings.size() == 2, "incomplete fixture must yield 2 findings");
        if (findings.size() == 2) {
            c.expect(findings[0].kind == FindingKind::DanglingAntecedent &&
                         findings[0].subjects ==
                             std::vector<std::string>{"state(p3)"},
                     "expected dangling antecedent state(p3)");
            c.expect(findings[1].kind == FindingKind::DeadEndConsequent &&
                         findings[1].subjects ==
                             std::vector<std::string>{"state(p4)"},
                     "expected dead-end consequent state(p4)");
        }
    }
    // inconsistency example (negated conclusion modeled as a mutually
    // exclusive state of the same variable)
    {
        EdmModel m = load(testsupport::fixture_path("inconsistent.edm"));
        FuzzyPetriNet net = compile_fpn(normalize_model(m), m);
        Marking initial;
        for (PlaceId p = 0; p < net.places.size(); ++p)
            if (net.places[p].kind == VarKind::InputErf) initial.tokens.insert(p);
        auto findings = check_inconsistency(net, reachability(net, initial));
        c.expect(findings.size() == 1, "inconsistent fixture must yield 1 finding");
        if (!findings.empty())
            c.expect(findings[0].subjects ==
                         std::vector<std::string>{"outcome(not_p5)", "outcome(p5)"},
                     "expected the two outcome states to conflict");
    }
    // circularity example
    {
        EdmModel m = load(testsupport::fixture_path("circular.edm"));
        auto findings = check_circularity(compile_fpn(normalize_model(m), m));
        c.expect(findings.size() == 1, "circular fixture must yield 1 finding");
        if (!findings.empty())
            c.expect(findings[0].subjects == std::vector<std::string>{"R1", "R2", "R3"},
                     "the cycle must list R1, R2, R3");
    }
    // redundancy example
    {
        EdmModel m = load(testsupport::fixture_path("redundant.edm"));
        auto findings = check_redundancy(normalize_model(m));
        c.expect(findings.size() == 4, "redundant fixture must yield 4 findings");
        auto has = [&](FindingKind kind, std::vector<std::string> subjects) {
            for (const auto& f : findings)
                if (f.kind == kind && f.subjects == subjects) return true;
            return false;
        };
        c.expect(has(FindingKind::DuplicateRule, {"R1", "R2"}),
                 "R1 must duplicate R2");
        c.expect(has(FindingKind::SubsumedRule, {"R1", "R3"}),
                 "R1 must be subsumed by R3");
        c.expect(has(FindingKind::SubsumedRule, {"R2", "R3"}),
                 "R2 must be subsumed by R3");
        c.expect(has(FindingKind::SubsumedRule, {"R4", "R5"}),
                 "R4 must be subsumed by R5");
    }
    // the patient model itself is clean
    {
        VerificationReport report = verify(load(testsupport::model_path("patient.edm")));
        c.expect(report.findings.empty(), "patient model must verify clean");
        c.expect(report.verdict == Verdict::Clean, "patient verdict must be clean");
    }
}

void criterion_static_validation(Check& c) {
    EdmModel patient = load(testsupport::model_path("patient.edm"));
    EdmModel referent =
        testsupport::load_referent(testsupport::model_path("referent.edm")).model;

    auto findings = static_validate(patient, referent);
    std::multiset<std::pair<std::string, std::string>> got;
    for (const auto& f : findings) got.insert({to_string(f.kind), f.subject});
    const std::multiset<std::pair<std::string, std::string>> want = {
        {"MissingERF", "LTconsequences"},
        {"MissingRule", "R5r"},
        {"MissingRule", "R6r"},
        {"MissingRule", "R6r"},
    };
    c.expect(got == want,
             "patient vs referent must report exactly the missing input and "
             "the missing decision rules");
    c.expect(static_validate(referent, referent).empty(),
             "referent vs itself must report nothing");
}

void criterion_dynamic_rr1(Check& c) {
    EdmModel revised = load(testsupport::model_path("patient_revised.edm"));
    ReferentDocument doc =
        testsupport::load_referent(testsupport::model_path("referent.edm"));
    auto findings = dynamic_validate(revised, {doc.reasoning_rules[0]});
    c.expect(findings.size() == 1 && findings[0].computed.has_value(),
             "RR1 must produce a computed degree");
    if (!findings.empty() && findings[0].computed) {
        c.expect_near(findings[0].computed->value(), 0.72, 1e-9,
                      "RR1 degree for Risk(high)");
        c.expect(findings[0].passed, "RR1 must pass against > 0.7");
    }
}

void criterion_dynamic_rr2(Check& c) {
    EdmModel revised = load(testsupport::model_path("patient_revised.edm"));
    ReferentDocument doc =
        testsupport::load_referent(testsupport::model_path("referent.edm"));
    auto findings = dynamic_validate(revised, {doc.reasoning_rules[1]});
    c.expect(findings.size() == 1 && findings[0].computed.has_value(),
             "RR2 must produce a computed degree");
    if (!findings.empty() && findings[0].computed) {
        // every step applies min(inputs) * cf, including the final decision
        // rule: min(min(0.9,0.8)*0.8, 0.8)*0.8 = 0.512
        c.expect(findings[0].computed->value() < 0.7, "RR2 degree must stay below 0.7");
        c.expect_near(findings[0].computed->value(), 0.512, 1e-9,
                      "RR2 degree for Action(try_again_later)");
        c.expect(!findings[0].passed, "RR2 must fail against > 0.7");
    }
}

void criterion_normalization_semantics(Check& c) {
    testsupport::ModelGen gen(90210);
    for (int iter = 0; iter < 1000; ++iter) {
        EdmModel model = gen.random_model();
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        auto inputs = gen.random_inputs(net);

        auto via_net = reason(net, inputs);
        std::map<Proposition, double> plain;
        for (const auto& [p, d] : inputs) plain.emplace(p, d.value());
        auto direct = testsupport::oracle_direct_eval(model, plain);

        if (via_net.size() != direct.size()) {
            c.expect(false, "derived proposition sets differ at iteration " +
                                std::to_string(iter));
            return;
        }
        for (const auto& [prop, deg] : via_net) {
            auto it = direct.find(prop);
            if (it == direct.end() || std::fabs(deg.value() - it->second) > 1e-12) {
                c.expect(false, "degree mismatch on " + prop.text() +
                                    " at iteration " + std::to_string(iter));
                return;
            }
        }
    }
}

void criterion_defuzzification_oracle(Check& c) {
    EdmModel patient = load(testsupport::model_path("patient.edm"));
    testsupport::ModelGen gen(1847);
    for (int iter = 0; iter < 500; ++iter) {
        CrispInput in{{"Severity", gen.unit() * 10.0}, {"Mental", gen.unit() * 10.0}};
        const double got = assess_risk(in, patient).crisp;
        const double want = testsupport::oracle_risk_centroid(patient, in);
        if (std::fabs(got - want) > 1e-3 * 100.0) {
            c.expect(false, "centroid off by " + std::to_string(got - want) +
                                " at iteration " + std::to_string(iter));
            return;
        }
    }
}

void criterion_monotonicity(Check& c) {
    testsupport::ModelGen gen(5150);

    // 500 perturbation pairs through rule evaluation
    for (int iter = 0; iter < 500; ++iter) {
        EdmModel model = gen.random_model();
        const auto rules = model.all_rules();
        const EthicalRule& rule =
            *rules[gen.int_in(0, static_cast<int>(rules.size()) - 1)];
        FuzzifiedState state;
        for (const auto& clause : rule.antecedent)
            for (const Proposition& p : clause)
                state.emplace(p, Degree(gen.unit()));
        const double before = evaluate_rule(rule, state).value();

        if (gen.unit() < 0.5 && !state.empty()) {
            auto it = std::next(state.begin(),
                                gen.int_in(0, static_cast<int>(state.size()) - 1));
            it->second =
                Degree(it->second.value() + (1.0 - it->second.value()) * gen.unit());
            if (evaluate_rule(rule, state).value() < before) {
                c.expect(false, "rule evaluation decreased after raising a degree");
                return;
            }
        } else {
            EthicalRule stronger = rule;
            stronger.cf =
                Degree(rule.cf.value() + (1.0 - rule.cf.value()) * gen.unit());
            if (evaluate_rule(stronger, state).value() < before) {
                c.expect(false, "rule evaluation decreased after raising the factor");
                return;
            }
        }
    }

    // 500 perturbation pairs through net propagation
    for (int iter = 0; iter < 500; ++iter) {
        EdmModel model = gen.random_model();
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        auto inputs = gen.random_inputs(net);
        if (inputs.empty()) continue;
        auto before = reason(net, inputs);

        auto raised = inputs;
        auto it = std::next(raised.begin(),
                            gen.int_in(0, static_cast<int>(raised.size()) - 1));
        it->second =
            Degree(it->second.value() + (1.0 - it->second.value()) * gen.unit());
        auto after = reason(net, raised);
        for (const auto& [prop, deg] : before) {
            auto found = after.find(prop);
            if (found == after.end() || found->second.value() < deg.value()) {
                c.expect(false, "net propagation decreased after raising an input");
                return;
            }
        }
    }
}

struct Criterion {
    int number;
    const char* title;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "normalization golden test (12 rules, exact order)",
         criterion_normalization_golden},
        {2, "net cardinalities (12/12 patient, 15/14 referent, factors)",
         criterion_fpn_cardinalities},
        {3, "reachability replication (3-node chain via t1, t10)",
         criterion_reachability_replication},
        {4, "structural-error fixtures (all four classes, patient clean)",
         criterion_structural_fixtures},
        {5, "static validation (missing input + rules, reflexive empty)",
         criterion_static_validation},
        {6, "dynamic validation RR1 (0.72 > 0.7, pass)", criterion_dynamic_rr1},
        {7, "dynamic validation RR2 (0.512 < 0.7, fail)", criterion_dynamic_rr2},
        {8, "normalization semantics preserved on 1000 random models",
         criterion_normalization_semantics},
        {9, "defuzzification matches a 10001-point oracle on 500 inputs",
         criterion_defuzzification_oracle},
        {10, "monotonicity of rule evaluation and net propagation",
         criterion_monotonicity},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        check.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        // time budgets are part of the criteria
        if (check.failures.empty()) {
            if (criterion.number == 1 && check.elapsed_s >= 1.0)
                check.failures.push_back("exceeded the 1 s budget");
            if (criterion.number == 8 && check.elapsed_s >= 30.0)
                check.failures.push_back("exceeded the 30 s budget");
            if (criterion.number == 9 && check.elapsed_s >= 10.0)
                check.failures.push_back("exceeded the 10 s budget");
        }

        const bool ok = check.failures.empty();
        if (!ok) ++failed;
        std::printf("%s  %2d. %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.title, check.elapsed_s);
        for (const std::string& reason : check.failures)
            std::printf("        - %s\n", reason.c_str());
    }

    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
