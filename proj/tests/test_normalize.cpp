#include <doctest.h>

#include <random>

#include "edm/inference.hpp"
#include "edm/normalize.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

using namespace edm;

namespace {

struct GoldenRule {
    std::vector<Proposition> antecedents;
    Proposition consequent;
    double cf;
};

// the twelve single-consequent rules of the patient model, in order
const std::vector<GoldenRule> kPatientNormalized = {
    {{{"Severity", "low"}, {"Mental", "good"}}, {"Risk", "low"}, 0.80},
    {{{"Severity", "medium"}, {"Mental", "good"}}, {"Risk", "low"}, 0.80},
    {{{"Severity", "low"}, {"Mental", "average"}}, {"Risk", "low"}, 0.80},
    {{{"Severity", "low"}, {"Mental", "bad"}}, {"Risk", "low"}, 0.80},
    {{{"Severity", "high"}, {"Mental", "good"}}, {"Risk", "medium"}, 0.70},
    {{{"Severity", "medium"}, {"Mental", "average"}}, {"Risk", "medium"}, 0.70},
    {{{"Severity", "high"}, {"Mental", "average"}}, {"Risk", "high"}, 0.90},
    {{{"Severity", "medium"}, {"Mental", "bad"}}, {"Risk", "high"}, 0.90},
    {{{"Severity", "high"}, {"Mental", "bad"}}, {"Risk", "high"}, 0.90},
    {{{"Risk", "low"}}, {"Action", "accept"}, 0.80},
    {{{"Risk", "high"}}, {"Action", "try_again_now"}, 0.90},
    {{{"Risk", "medium"}}, {"Action", "try_again_later"}, 0.70},
};

} // namespace

TEST_CASE("patient model normalizes to the twelve golden rules in order") {
    EdmModel model = testsupport::load_model(testsupport::model_path("patient.edm"));
    std::vector<NormalizedRule> rules = normalize_model(model);
    REQUIRE(rules.size() == kPatientNormalized.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        CAPTURE(i);
        CHECK(rules[i].antecedents == kPatientNormalized[i].antecedents);
        CHECK(rules[i].consequent == kPatientNormalized[i].consequent);
        CHECK(rules[i].cf.value() ==
              doctest::Approx(kPatientNormalized[i].cf).epsilon(1e-12));
    }
}

TEST_CASE("four clauses fan out to four rules with the same consequent") {
    EdmModel model = testsupport::load_model(testsupport::model_path("patient.edm"));
    std::vector<NormalizedRule> rules = normalize_rule(model.ferrs[0]);
    REQUIRE(rules.size() == 4);
    for (const NormalizedRule& r : rules) {
        CHECK(r.origin == "R1");
        CHECK(r.consequent == Proposition{"Risk", "low"});
        CHECK(r.cf.value() == doctest::Approx(0.80));
    }
}

TEST_CASE("multi-consequent rules split per consequent") {
    EthicalRule rule;
    rule.name = "R";
    rule.antecedent = {{{"a", "x"}}};
    rule.consequents = {{"r", "u"}, {"r", "v"}};
    rule.cf = Degree(0.4);
    std::vector<NormalizedRule> rules = normalize_rule(rule);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].consequent == Proposition{"r", "u"});
    CHECK(rules[1].consequent == Proposition{"r", "v"});
    CHECK(rules[0].antecedents == rules[1].antecedents);
}

TEST_CASE("already-normal rules are a fixed point") {
    EthicalRule rule;
    rule.name = "R";
    rule.antecedent = {{{"a", "x"}, {"b", "y"}}};
    rule.consequents = {{"r", "u"}};
    rule.cf = Degree(0.9);
    std::vector<NormalizedRule> once = normalize_rule(rule);
    REQUIRE(once.size() == 1);

    EthicalRule again;
    again.name = once[0].origin;
    again.antecedent = {once[0].antecedents};
    again.consequents = {once[0].consequent};
    again.cf = once[0].cf;
    CHECK(normalize_rule(again) == once);
}

TEST_CASE("referent model yields fourteen rules with grouped factors") {
    EdmModel referent =
        testsupport::load_referent(testsupport::model_path("referent.edm")).model;
    std::vector<NormalizedRule> rules = normalize_model(referent);
    REQUIRE(rules.size() == 14);
    const double cfs[] = {0.80, 0.80, 0.80, 0.80, 0.70, 0.70, 0.90,
                          0.90, 0.90, 0.95, 0.70, 0.80, 0.80, 0.80};
    for (std::size_t i = 0; i < rules.size(); ++i)
        CHECK(rules[i].cf.value() == doctest::Approx(cfs[i]).epsilon(1e-12));
}

TEST_CASE("empty model normalizes to nothing") {
    EdmModel empty = testsupport::load_model(testsupport::fixture_path("empty.edm"));
    CHECK(normalize_model(empty).empty());
}

TEST_CASE("count law: |normalize_rule| = clauses * consequents") {
    testsupport::ModelGen gen(1111);
    for (int i = 0; i < 300; ++i) {
        EdmModel model = gen.random_model();
        for (const EthicalRule* rule : model.all_rules())
            CHECK(normalize_rule(*rule).size() ==
                  rule->antecedent.size() * rule->consequents.size());
    }
}

TEST_CASE("normalization preserves rule semantics") {
    testsupport::ModelGen gen(2222);
    for (int iter = 0; iter < 300; ++iter) {
        EdmModel model = gen.random_model();
        const EthicalRule& rule =
            *model.all_rules()[gen.int_in(0, static_cast<int>(model.all_rules().size()) - 1)];

        FuzzifiedState state;
        for (const auto& clause : rule.antecedent)
            for (const Proposition& p : clause)
                state.emplace(p, Degree(gen.unit()));

        Degree direct = evaluate_rule(rule, state);
        for (const Proposition& target : rule.consequents) {
            double best = 0.0;
            for (const NormalizedRule& nr : normalize_rule(rule)) {
                if (nr.consequent != target) continue;
                double m = 1.0;
                for (const Proposition& p : nr.antecedents)
                    m = std::min(m, state.at(p).value());
                best = std::max(best, m * nr.cf.value());
            }
            CHECK(best == doctest::Approx(direct.value()).epsilon(1e-15));
        }
    }
}
