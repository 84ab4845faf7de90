#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nlswap/box.hpp"
#include "nlswap/functional.hpp"
#include "nlswap/scenario.hpp"

namespace nlswap {

/// Machine-readable report document. Every value is an exact Scalar; the
/// "*_decimal" fields are 12-digit annotations recomputed from it.
nlohmann::json report_to_json(const ScenarioReport& report);
ScenarioReport report_from_json(const nlohmann::json& doc);

/// Plain-text rendering for terminals.
std::string render_report_table(const ScenarioReport& report);

/// Inputs down, outputs across; zero entries print as "·".
std::string render_box_table(const BoxTable& box);
std::string render_validation(const ValidationReport& report);

std::string outcome_text(const std::vector<int>& outcomes);

}  // namespace nlswap
