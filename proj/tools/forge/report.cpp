#include "report.hpp"

#include <cstdio>

#include "forge/cherednik.hpp"

namespace forge::cli {

bool all_ok(const std::vector<suites::SuiteReport>& reports) {
  if (reports.empty()) return false;
  for (const auto& r : reports)
    if (!r.ok()) return false;
  return true;
}

nlohmann::ordered_json report_json(const std::vector<suites::SuiteReport>& reports, unsigned seed, bool timings) {
  nlohmann::ordered_json j;
  j["tool"] = "forge";
  j["version"] = suites::kVersion;
  j["conventions"] = {{"commutator_sign", rca::kCommutatorSign}, {"flatness_sign", suites::kFlatnessSign}};
  j["seed"] = seed;
  j["ok"] = all_ok(reports);
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["group"] = r.group;
    s["ok"] = r.ok();
    s["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["status"] = c.pass ? "pass" : "fail";
      cj["cases"] = c.cases;
      if (!c.pass) cj["residual"] = c.detail;
      if (timings) cj["elapsed_ms"] = c.elapsed_ms;
      s["checks"].push_back(std::move(cj));
    }
    j["suites"].push_back(std::move(s));
  }
  return j;
}

std::string report_text(const std::vector<suites::SuiteReport>& reports, bool timings) {
  std::string out;
  for (const auto& r : reports)
    for (const auto& c : r.checks) {
      out += c.pass ? "PASS " : "FAIL ";
      out += r.suite + " " + r.group + " " + c.name + " (" + std::to_string(c.cases) + " cases";
      if (timings) {
        char buf[32];
        std::snprintf(buf, sizeof buf, ", %.1f ms", c.elapsed_ms);
        out += buf;
      }
      out += ")\n";
      if (!c.pass) out += "  " + c.detail + "\n";
    }
  return out;
}

}  // namespace forge::cli
