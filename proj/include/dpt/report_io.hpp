#pragma once

#include <string>

#include <json.hpp>

#include "dpt/bench.hpp"

namespace dpt {

nlohmann::ordered_json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::ordered_json& j);

// JSON array of reports in suite order, two-space indent, trailing newline.
std::string suite_to_json(const SuiteReport& suite);
SuiteReport suite_from_json(const std::string& text);

}  // namespace dpt
