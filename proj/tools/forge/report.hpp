#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "forge/suites.hpp"

namespace forge::cli {

// Stable report schema; timings are included only on request so that reports are byte-identical across runs.
nlohmann::ordered_json report_json(const std::vector<suites::SuiteReport>& reports, unsigned seed, bool timings);

// One "PASS|FAIL suite group check (n cases)" line per check, with the residual on failures.
std::string report_text(const std::vector<suites::SuiteReport>& reports, bool timings);

bool all_ok(const std::vector<suites::SuiteReport>& reports);

}  // namespace forge::cli
