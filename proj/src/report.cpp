#include "ahlab/report.hpp"

namespace ah {

const char* kToolVersion = "0.1.0";

bool Report::overall() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json to_json(const Report& r, bool include_timing) {
  nlohmann::json j;
  j["tool"] = r.tool;
  j["version"] = r.version.empty() ? kToolVersion : r.version;
  j["manifold"] = r.manifold_id;
  j["seed"] = r.seed;
  j["jet_order"] = r.jet_order;
  j["status"] = r.overall() ? "pass" : "fail";
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["samples"] = c.samples;
    if (c.max_residual) cj["max_residual"] = *c.max_residual;
    if (c.min_margin) cj["min_margin"] = *c.min_margin;
    if (c.threshold) cj["threshold"] = *c.threshold;
    cj["pass"] = c.pass;
    if (include_timing) cj["elapsed_ms"] = c.elapsed_ms;
    if (!c.detail.is_null()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::json strip_timing(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace ah
