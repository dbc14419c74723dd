// Runs every acceptance criterion and prints one PASS/FAIL line each, with the
// sub-check details underneath. Exit status 1 if any criterion fails.

#include "lpaffine/acceptance.hpp"

#include <cstdio>

int main() {
  int failed = 0;
  for (int id = 1; id <= lpaffine::kCriterionCount; ++id) {
    const auto r = lpaffine::run_criterion(id);
    std::printf("%s %2d %-40s residual/tol %.3e  %.2f s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.residual, r.seconds);
    for (const auto& d : r.details) std::printf("      %s\n", d.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %d criteria passed\n", lpaffine::kCriterionCount - failed,
              lpaffine::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
