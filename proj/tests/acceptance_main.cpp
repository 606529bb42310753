#include <cstdio>

#include "kloos/acceptance.hpp"

int main() {
  int failures = 0;
  kloos::run_acceptance(1, [&](const kloos::CriterionResult& r) {
    std::printf("%s\n", kloos::format_result_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  });
  std::printf("%d/%d criteria passed\n", kloos::kCriterionCount - failures, kloos::kCriterionCount);
  return failures == 0 ? 0 : 1;
}
