#include <doctest.h>

#include <set>

#include "edm/analysis.hpp"
#include "edm/fpn.hpp"
#include "support/catch_kind.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace edm;
using testsupport::error_kind_of;

namespace {

FuzzyPetriNet compile_file(const std::string& path) {
    EdmModel model = testsupport::load_model(path);
    return compile_fpn(normalize_model(model), model);
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace

TEST_CASE("patient net: twelve places, twelve transitions, fixed numbering") {
    FuzzyPetriNet net = compile_file(testsupport::model_path("patient.edm"));
    REQUIRE(net.places.size() == 12);
    REQUIRE(net.transitions.size() == 12);

    const char* expected[][2] = {
        {"Severity", "low"}, {"Severity", "medium"}, {"Severity", "high"},
        {"Mental", "good"}, {"Mental", "average"}, {"Mental", "bad"},
        {"Risk", "low"}, {"Risk", "medium"}, {"Risk", "high"},
        {"Action", "accept"}, {"Action", "try_again_later"},
        {"Action", "try_again_now"},
    };
    for (PlaceId p = 0; p < 12; ++p) {
        CAPTURE(p);
        CHECK(net.places[p].prop == Proposition{expected[p][0], expected[p][1]});
    }

    // t1 realizes Severity(low) & Mental(good) -> Risk(low)
    CHECK(net.transitions[0].inputs == std::vector<PlaceId>{0, 3});
    CHECK(net.transitions[0].output == 6);
    CHECK(net.input_fn(0, 0));
    CHECK(net.input_fn(3, 0));
    CHECK(!net.input_fn(1, 0));
    CHECK(net.output_fn(0, 6));
}

TEST_CASE("referent net: fifteen places, fourteen transitions, factors per origin") {
    EdmModel referent =
        testsupport::load_referent(testsupport::model_path("referent.edm")).model;
    FuzzyPetriNet net = compile_fpn(normalize_model(referent), referent);
    REQUIRE(net.places.size() == 15);
    REQUIRE(net.transitions.size() == 14);

    // the three long-term-consequence places append after the shared twelve
    CHECK(net.places[12].prop == Proposition{"LTconsequences", "low"});
    CHECK(net.places[13].prop == Proposition{"LTconsequences", "medium"});
    CHECK(net.places[14].prop == Proposition{"LTconsequences", "high"});

    const double cfs[] = {0.80, 0.80, 0.80, 0.80, 0.70, 0.70, 0.90,
                          0.90, 0.90, 0.95, 0.70, 0.80, 0.80, 0.80};
    for (TransId t = 0; t < 14; ++t)
        CHECK(net.transitions[t].cf.value() == doctest::Approx(cfs[t]).epsilon(1e-12));
}

TEST_CASE("minimal net and the empty rule set") {
    EdmModel model = testsupport::load_model(testsupport::fixture_path("empty.edm"));
    CHECK(error_kind_of([&] { compile_fpn({}, model); }) == ErrorKind::EmptyRuleSet);

    NormalizedRule rule{"R", 0, 0, {{"x", "low"}}, {"risk", "any"}, Degree(1.0)};
    FuzzyPetriNet net = compile_fpn({rule}, model);
    CHECK(net.places.size() == 2);
    CHECK(net.transitions.size() == 1);

    NormalizedRule no_inputs{"R0", 0, 0, {}, {"risk", "any"}, Degree(1.0)};
    CHECK(error_kind_of([&] { compile_fpn({no_inputs}, model); }) ==
          ErrorKind::EmptyClause);
}

TEST_CASE("place labels form a bijection onto the used propositions") {
    for (const char* file : {"patient.edm", "patient_revised.edm"}) {
        FuzzyPetriNet net = compile_file(testsupport::model_path(file));
        std::set<Proposition> distinct;
        for (const FpnPlace& p : net.places) distinct.insert(p.prop);
        CHECK(distinct.size() == net.places.size());
        for (const FpnPlace& p : net.places) {
            auto id = net.find_place(p.prop);
            REQUIRE(id.has_value());
            CHECK(net.places[*id].prop == p.prop);
        }
    }
}

TEST_CASE("reason reproduces the worked referent chains") {
    FuzzyPetriNet net = compile_file(testsupport::model_path("patient_revised.edm"));

    auto derived = reason(net, {{{"Severity", "high"}, Degree(0.9)},
                                {{"Mental", "bad"}, Degree(0.8)}});
    CHECK(derived.at({"Risk", "high"}).value() ==
          doctest::Approx(0.72).epsilon(1e-12));

    derived = reason(net, {{{"Severity", "medium"}, Degree(0.9)},
                           {{"Mental", "good"}, Degree(0.8)},
                           {{"LTconsequences", "medium"}, Degree(0.8)}});
    CHECK(derived.at({"Risk", "low"}).value() ==
          doctest::Approx(0.64).epsilon(1e-12));
    CHECK(derived.at({"Action", "try_again_later"}).value() ==
          doctest::Approx(0.512).epsilon(1e-12));
    // nothing reaches the medium risk state from these premises
    CHECK(derived.find({"Risk", "medium"}) == derived.end());
}

TEST_CASE("reason propagates identity through a single full-confidence rule") {
    EdmModel model = testsupport::load_model(testsupport::fixture_path("empty.edm"));
    NormalizedRule rule{"R", 0, 0, {{"x", "low"}}, {"risk", "any"}, Degree(1.0)};
    FuzzyPetriNet net = compile_fpn({rule}, model);
    for (double v : {0.0, 0.25, 0.7, 1.0}) {
        auto out = reason(net, {{{"x", "low"}, Degree(v)}});
        CHECK(out.at({"risk", "any"}).value() == v);
    }
}

TEST_CASE("reason rejects unknown propositions and cyclic nets") {
    FuzzyPetriNet net = compile_file(testsupport::model_path("patient.edm"));
    CHECK(error_kind_of([&] {
              reason(net, {{{"Severity", "extreme"}, Degree(0.5)}});
          }) == ErrorKind::UnknownProposition);

    FuzzyPetriNet cyclic = compile_file(testsupport::fixture_path("circular.edm"));
    CHECK(error_kind_of([&] {
              reason(cyclic, {{{"state", "p1"}, Degree(0.5)}});
          }) == ErrorKind::CyclicNet);
}

TEST_CASE("reason never exceeds the strongest input and is monotone") {
    testsupport::ModelGen gen(313);
    int done = 0;
    while (done < 300) {
        EdmModel model = gen.random_wiring(gen.int_in(3, 6), gen.int_in(1, 6));
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        if (!net.acyclic()) continue;
        ++done;

        std::map<Proposition, Degree> inputs;
        double strongest = 0.0;
        for (const FpnPlace& place : net.places) {
            if (gen.unit() < 0.5) continue;
            double v = gen.unit();
            inputs.emplace(place.prop, Degree(v));
            strongest = std::max(strongest, v);
        }
        if (inputs.empty()) continue;

        auto base = reason(net, inputs);
        for (const auto& [prop, deg] : base) {
            CHECK(deg.value() >= 0.0);
            CHECK(deg.value() <= strongest + 1e-15);
        }

        // raising one input never lowers any output
        auto raised_inputs = inputs;
        auto it = std::next(raised_inputs.begin(),
                            gen.int_in(0, static_cast<int>(raised_inputs.size()) - 1));
        it->second =
            Degree(it->second.value() + (1.0 - it->second.value()) * gen.unit());
        auto raised = reason(net, raised_inputs);
        for (const auto& [prop, deg] : base) {
            auto found = raised.find(prop);
            REQUIRE(found != raised.end());
            CHECK(found->second.value() >= deg.value() - 1e-15);
        }
    }
}

TEST_CASE("net reasoning agrees with direct rule evaluation") {
    testsupport::ModelGen gen(414);
    for (int iter = 0; iter < 300; ++iter) {
        EdmModel model = gen.random_model();
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        auto inputs = gen.random_inputs(net);

        auto via_net = reason(net, inputs);
        std::map<Proposition, double> plain;
        for (const auto& [p, d] : inputs) plain.emplace(p, d.value());
        auto direct = testsupport::oracle_direct_eval(model, plain);

        CHECK(via_net.size() == direct.size());
        for (const auto& [prop, deg] : via_net) {
            REQUIRE(direct.count(prop) == 1);
            CHECK(deg.value() == doctest::Approx(direct[prop]).epsilon(1e-12));
        }
    }
}

TEST_CASE("boolean firing enlarges the marking one place at a time") {
    FuzzyPetriNet net = compile_file(testsupport::model_path("patient.edm"));

    Marking initial;
    initial.tokens = {0, 3}; // Severity(low), Mental(good)
    auto firings = fire_boolean(net, initial);
    REQUIRE(firings.size() == 1);
    CHECK(firings[0].first == 0); // t1
    CHECK(firings[0].second.tokens == std::set<PlaceId>{0, 3, 6});

    Marking risk_low;
    risk_low.tokens = {6};
    firings = fire_boolean(net, risk_low);
    REQUIRE(firings.size() == 1);
    CHECK(firings[0].first == 9); // t10
    CHECK(firings[0].second.tokens == std::set<PlaceId>{6, 9});

    CHECK(fire_boolean(net, Marking{}).empty());
}

TEST_CASE("boolean firing keeps supersets (monotone tokens)") {
    testsupport::ModelGen gen(515);
    for (int iter = 0; iter < 200; ++iter) {
        EdmModel model = gen.random_wiring(gen.int_in(3, 6), gen.int_in(1, 6));
        FuzzyPetriNet net = compile_fpn(normalize_model(model), model);
        Marking marking;
        for (PlaceId p = 0; p < net.places.size(); ++p)
            if (gen.unit() < 0.5) marking.tokens.insert(p);
        for (const auto& [trans, next] : fire_boolean(net, marking)) {
            CHECK(next.tokens.size() == marking.tokens.size() + 1);
            CHECK(std::includes(next.tokens.begin(), next.tokens.end(),
                                marking.tokens.begin(), marking.tokens.end()));
        }
    }
}

TEST_CASE("DOT export of the nets") {
    FuzzyPetriNet net = compile_file(testsupport::model_path("patient.edm"));
    std::string dot = export_dot(net);
    CHECK(count_occurrences(dot, "shape=circle") == 12);
    CHECK(count_occurrences(dot, "shape=box") == 12);
    CHECK(count_occurrences(dot, " -> ") == 33); // 21 antecedent + 12 consequent arcs

    FuzzyPetriNet referent = compile_file(testsupport::model_path("patient_revised.edm"));
    std::string referent_dot = export_dot(referent);
    CHECK(count_occurrences(referent_dot, "shape=circle") == 15);
    CHECK(count_occurrences(referent_dot, "shape=box") == 14);

    // single-node reachability graph renders too
    ReachabilityGraph graph = reachability(net, Marking{});
    std::string graph_dot = export_dot(net, graph);
    CHECK(count_occurrences(graph_dot, "label=\"000000000000\"") == 1);
    CHECK(count_occurrences(graph_dot, " -> ") == 0);
}
