#pragma once

// The exact-verification suite shared by `verify all` and the acceptance
// test binary. Each criterion reports a single pass/fail line.

#include <functional>
#include <string>
#include <vector>

namespace kloos {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a summary of what was checked
  double seconds = 0;
};

constexpr int kCriterionCount = 10;

/// Runs criterion id (1..kCriterionCount). Never throws: an exception inside
/// a check is reported as a failure with its message.
CriterionResult run_criterion(int id, int workers = 1);

/// All criteria in order; on_result is called as each finishes.
std::vector<CriterionResult> run_acceptance(int workers = 1,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace kloos
