#pragma once

// Uniform check-result records plus deterministic text/JSON rendering.
// Identical inputs must produce byte-identical output, so all floating
// residuals are formatted through one fixed "%.2e" path.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdc {

struct CheckResult {
  std::string group;     // e.g. "3d", "sphere", "operator/theorem1"
  std::string name;      // which identity was checked
  bool pass = false;
  bool exact = true;     // symbolic (exact) vs floating (residual vs tolerance)
  double residual = 0.0; // max abs entry for numeric checks
  double tolerance = 0.0;
  std::string detail;      // witness or correction note
  std::string mask_radius; // "(n,k,l)" when the suite publishes its interior mask
};

inline std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", r);
  return buf;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline std::string render_text(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks) {
    out += c.pass ? "PASS" : "FAIL";
    out += "  [" + c.group + "] " + c.name;
    if (c.exact) {
      out += "  (exact)";
    } else {
      out += "  residual=" + format_residual(c.residual) +
             " tol=" + format_residual(c.tolerance);
    }
    if (!c.detail.empty()) out += "  -- " + c.detail;
    out += "\n";
  }
  size_t failed = 0;
  for (const auto& c : checks)
    if (!c.pass) ++failed;
  out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
         " checks passed\n";
  return out;
}

inline nlohmann::ordered_json check_to_json(const CheckResult& c) {
  nlohmann::ordered_json j;
  j["group"] = c.group;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["kind"] = c.exact ? "exact" : "numeric";
  if (!c.exact) {
    j["residual"] = format_residual(c.residual);
    j["tolerance"] = format_residual(c.tolerance);
  }
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline nlohmann::ordered_json render_json(const std::vector<CheckResult>& checks,
                                          const nlohmann::ordered_json& plan) {
  nlohmann::ordered_json root;
  root["plan"] = plan;
  root["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) root["checks"].push_back(check_to_json(c));
  size_t failed = 0;
  for (const auto& c : checks)
    if (!c.pass) ++failed;
  root["summary"]["total"] = checks.size();
  root["summary"]["failed"] = failed;
  root["summary"]["pass"] = (failed == 0);
  return root;
}

}  // namespace qdc
