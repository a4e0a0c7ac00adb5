#pragma once

#include <string>
#include <vector>

namespace fluxtwin::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Registered property checks, grouped into suites: "coords", "twin",
// "gauge", "kernel", "spectral", "acceptance", "all". Every check is
// deterministic (fixed seeds).
std::vector<std::string> suite_names();
std::vector<std::string> checks_in_suite(const std::string& suite);
CheckResult run_check(const std::string& name);
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace fluxtwin::verify
