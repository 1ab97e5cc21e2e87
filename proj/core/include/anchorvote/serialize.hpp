#pragma once

// JSON encodings of analysis records.

#include <nlohmann/json.hpp>

#include "anchorvote/bounds.hpp"
#include "anchorvote/density.hpp"
#include "anchorvote/welfare.hpp"

namespace anchorvote {

nlohmann::json to_json(const ReportDistribution& dist, const ReportMenu& menu);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const TighteningReport& report);
nlohmann::json to_json(const OutcomeDistribution& dist);
nlohmann::json to_json(const WelfareStats& stats);

/// Shortest decimal that round-trips the double (for CSV cells); "nan" for NaN.
std::string format_number(double x);

}  // namespace anchorvote
