#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ah {

struct CheckRecord {
  std::string name;
  int samples = 0;
  std::optional<double> max_residual;
  std::optional<double> min_margin;
  std::optional<double> threshold;
  bool pass = false;
  double elapsed_ms = 0.0;
  nlohmann::json detail;  // optional structured payload (e.g. wu samples)
};

struct Report {
  std::string tool = "ahlab";
  std::string version;
  std::string manifold_id;
  uint64_t seed = 0;
  int jet_order = 3;
  std::vector<CheckRecord> checks;

  bool overall() const;
};

extern const char* kToolVersion;

/// JSON serialization; timing fields are omitted when `include_timing` is
/// false so reports can be compared across runs.
nlohmann::json to_json(const Report& r, bool include_timing = true);

/// Strips every "elapsed_ms" field from a parsed report, for determinism
/// comparisons.
nlohmann::json strip_timing(nlohmann::json j);

}  // namespace ah
