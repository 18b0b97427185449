#pragma once

#include <string>
#include <vector>

namespace fracdyn {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Built-in oracle checks: classical and Mittag-Leffler relaxation, fuzzy
/// driver exactness, Caputo operator cross-validation, Fractor round trip.
std::vector<CheckResult> run_self_checks();

}  // namespace fracdyn
