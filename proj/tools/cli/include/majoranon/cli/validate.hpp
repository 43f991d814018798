#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace majoranon::cli {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool at_least = false;  // pass when measured >= bound instead of <= bound
  bool passed = false;
};

/// Fast oracle and invariant checks (a few seconds in total).
std::vector<CheckResult> run_validation_suite();

/// One line per check; returns true when every check passed.
bool print_validation_table(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace majoranon::cli
