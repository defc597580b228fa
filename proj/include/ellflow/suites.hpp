#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ellflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (error, minimum, ...)
  double tolerance = 0.0;  // bound it was compared against
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
  const CheckResult* first_failure() const;
};

struct SuiteOptions {
  std::uint64_t seed = 0x5eed2024;
  int points = 1000;  // random samples per invariant pair / state set
  int pairs = 10;     // random invariant pairs in the kernel suite
};

/// kernel, modular, flow, table3
const std::vector<std::string>& suite_names();

/// Runs one suite; "all" concatenates every suite into one report.
/// Unknown names raise InvalidArgument.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opt = {});

}  // namespace ellflow
