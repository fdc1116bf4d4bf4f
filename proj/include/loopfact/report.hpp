#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace loopfact {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0;
  double tolerance = 0;
  std::optional<double> runtime_ms;
  std::string detail;  // error message when the check could not run
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
  /// Same fields as to_json, one row per check.
  std::string to_table() const;
};

/// Shortest decimal that reads back to the same binary64 value.
std::string format_double(double v);

}  // namespace loopfact
