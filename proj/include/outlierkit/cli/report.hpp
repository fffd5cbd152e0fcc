#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "outlierkit/report.hpp"

namespace outlierkit::cli {

/// Machine-readable report. Observation indices are 1-based. `config` is
/// echoed verbatim so the run can be reproduced.
nlohmann::ordered_json report_to_json(const OutlierReport& report, std::span<const double> x,
                                      const nlohmann::ordered_json& config,
                                      const std::vector<std::string>& warnings = {});

/// Human-readable report: decision, outliers per side with values and
/// z-scores, and for BP the step trail laid out one row per step.
std::string report_to_text(const OutlierReport& report, std::span<const double> x,
                           const std::vector<std::string>& warnings = {});

}  // namespace outlierkit::cli
