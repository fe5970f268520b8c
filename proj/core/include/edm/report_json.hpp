#pragma once

#include <nlohmann/json.hpp>

#include "edm/analysis.hpp"
#include "edm/inference.hpp"
#include "edm/validation.hpp"

namespace edm {

/// Report payloads: {"findings": [...], "verdict": "..."} plus summary
/// fields. Findings carry kind, subjects, severity and explanation;
/// dynamic-validation findings add computed/comparator/threshold/passed.
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const RiskResult& risk);
nlohmann::json to_json(const DecisionResult& decision);

VerificationReport verification_report_from_json(const nlohmann::json& j);
ValidationReport validation_report_from_json(const nlohmann::json& j);

} // namespace edm
