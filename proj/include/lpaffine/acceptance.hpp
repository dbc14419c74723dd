#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpaffine {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Worst residual over the criterion's checks, relative to its tolerance
  /// where the checks use different tolerances (≤ 1 passes).
  double residual = 0.0;
  double seconds = 0.0;
  /// One line per sub-check, plus informational values.
  std::vector<std::string> details;
};

inline constexpr int kCriterionCount = 13;
inline constexpr std::uint64_t kAcceptanceSeed = 20100517;

std::string criterion_name(int id);

CriterionResult run_criterion(int id, std::uint64_t seed = kAcceptanceSeed);

/// Criterion ids of a named suite: "all", "oracles" (1, 2, 11),
/// "identities" (3–7, 13), "surface" (8–10), "omega" (12), or a single
/// number. Throws InvalidArgument for anything else.
std::vector<int> suite_criteria(const std::string& suite);

}  // namespace lpaffine
