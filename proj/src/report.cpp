#include "loopfact/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace loopfact {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json out;
  out["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.passed ? "pass" : "fail";
    // Non-finite residuals are not representable in JSON.
    if (std::isfinite(c.residual))
      e["residual"] = c.residual;
    else
      e["residual"] = nullptr;
    e["tolerance"] = c.tolerance;
    if (c.runtime_ms) e["runtime_ms"] = *c.runtime_ms;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(e);
  }
  out["checks"] = arr;
  return out;
}

std::string VerificationReport::to_table() const {
  bool timing = false;
  for (const auto& c : checks) timing = timing || c.runtime_ms.has_value();
  std::ostringstream os;
  os << std::left << std::setw(14) << "name" << std::setw(8) << "status"
     << std::setw(26) << "residual" << std::setw(26) << "tolerance";
  if (timing) os << "runtime_ms";
  os << '\n';
  for (const auto& c : checks) {
    os << std::setw(14) << c.name << std::setw(8)
       << (c.passed ? "pass" : "fail") << std::setw(26)
       << (std::isfinite(c.residual) ? format_double(c.residual) : "null")
       << std::setw(26) << format_double(c.tolerance);
    if (c.runtime_ms) os << format_double(*c.runtime_ms);
    os << '\n';
    if (!c.detail.empty()) os << "  " << c.detail << '\n';
  }
  os << (passed() ? "all checks passed" : "some checks failed") << '\n';
  return os.str();
}

}  // namespace loopfact
