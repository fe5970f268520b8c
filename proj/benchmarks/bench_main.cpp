#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "edm/analysis.hpp"
#include "edm/dsl.hpp"
#include "edm/inference.hpp"
#include "edm/validation.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const std::string& patient_text() {
    static const std::string text = slurp(std::string(EDM_MODELS_DIR) + "/patient.edm");
    return text;
}

const edm::EdmModel& patient() {
    static const edm::EdmModel model = edm::parse_model(patient_text());
    return model;
}

const edm::ReferentDocument& referent() {
    static const edm::ReferentDocument doc =
        edm::parse_referent(slurp(std::string(EDM_MODELS_DIR) + "/referent.edm"));
    return doc;
}

void BM_parse_model(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::parse_model(patient_text()));
}
BENCHMARK(BM_parse_model);

void BM_normalize_and_compile(benchmark::State& state) {
    const edm::EdmModel& model = patient();
    for (auto _ : state) {
        auto net = edm::compile_fpn(edm::normalize_model(model), model);
        benchmark::DoNotOptimize(net);
    }
}
BENCHMARK(BM_normalize_and_compile);

void BM_assess_risk(benchmark::State& state) {
    const edm::EdmModel& model = patient();
    edm::CrispInput inputs{{"Severity", 6.5}, {"Mental", 2.5}};
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::assess_risk(inputs, model));
}
BENCHMARK(BM_assess_risk);

void BM_decide(benchmark::State& state) {
    const edm::EdmModel& model = patient();
    edm::CrispInput inputs{{"Severity", 6.5}, {"Mental", 2.5}};
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::decide(inputs, model));
}
BENCHMARK(BM_decide);

void BM_reason(benchmark::State& state) {
    const edm::ReferentDocument& doc = referent();
    auto net = edm::compile_fpn(edm::normalize_model(doc.model), doc.model);
    std::map<edm::Proposition, edm::Degree> inputs{
        {{"Severity", "high"}, edm::Degree(0.9)},
        {{"Mental", "bad"}, edm::Degree(0.8)},
        {{"LTconsequences", "low"}, edm::Degree(0.7)},
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::reason(net, inputs));
}
BENCHMARK(BM_reason);

void BM_verify(benchmark::State& state) {
    const edm::EdmModel& model = patient();
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::verify(model));
}
BENCHMARK(BM_verify);

void BM_validate(benchmark::State& state) {
    const edm::ReferentDocument& doc = referent();
    const edm::EdmModel& model = patient();
    for (auto _ : state)
        benchmark::DoNotOptimize(edm::validate(model, doc.model, doc.reasoning_rules));
}
BENCHMARK(BM_validate);

} // namespace

BENCHMARK_MAIN();
