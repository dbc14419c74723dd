#pragma once

#include "lpaffine/body.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lpaffine {

enum class RuleKind { circle_trapezoid, circle_graded, s2_product, monte_carlo };

/// Nodes and surface-measure weights on S^{n-1} (or on an arc of S^1).
struct SphereRule {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::circle_trapezoid;
  std::uint64_t seed = 0;

  std::size_t size() const { return nodes.size(); }
  double weight_sum() const;
};

enum class Classification { finite, plus_infinity, minus_infinity_logdomain, failed };

std::string to_string(Classification c);

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  Classification classification = Classification::failed;
  int refinements = 0;
  std::size_t nodes = 0;

  bool is_finite() const { return classification == Classification::finite; }
};

inline constexpr std::uint64_t kDefaultSeed = 20100517;

/// |S^{n-1}| = 2π^{n/2}/Γ(n/2).
double sphere_area(int n);

/// Fixed-shape pairwise (tree) reduction; the summation order depends only on
/// the length of the input.
double pairwise_sum(std::span<const double> values);

/// m equispaced angles with weights 2π/m. Requires m ≥ 8, even.
SphereRule circle_rule(int m);

/// Gauss–Legendre in cos(polar angle) × equispaced azimuth on S^2, with
/// `level` Legendre nodes and 2·level azimuths (2·level² nodes). Exact for
/// spherical polynomials of degree ≤ 2·level − 1.
SphereRule s2_rule(int level);

/// N normalized Gaussian vectors from mt19937_64(seed) and Box–Muller, weight
/// |S^{n-1}|/N each. Bitwise reproducible for fixed (n, N, seed).
SphereRule mc_rule(int n, std::size_t N, std::uint64_t seed);

/// Tanh-sinh rule on the arc [theta0, theta1] of S^1, split at every
/// breakpoint inside the arc. Nodes never coincide with a split point and are
/// placed by their exact angular offset from the nearest split direction, so
/// algebraic endpoint singularities are integrated at full accuracy.
/// Step 2^{-(level+1)}.
SphereRule graded_arc_rule(double theta0, double theta1, std::span<const Vec> breakpoints,
                           int level);

/// Full circle split at the breakpoints.
SphereRule graded_circle_rule(std::span<const Vec> breakpoints, int level);

/// Gauss–Legendre nodes/weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);

/// A sequence of successively finer rules (each refinement roughly doubles the
/// node count) plus the singular directions of the integrands it serves.
class RuleFamily {
 public:
  /// Dimension policy: n = 2 trapezoid (graded when breakpoints are given),
  /// n = 3 product rule, n ≥ 4 Monte Carlo.
  static RuleFamily for_dimension(int n, std::vector<Vec> breakpoints = {},
                                  std::uint64_t seed = kDefaultSeed);
  static RuleFamily trapezoid(int m0 = 32);
  static RuleFamily graded(std::vector<Vec> breakpoints);
  static RuleFamily graded_arc(double theta0, double theta1, std::vector<Vec> breakpoints);
  static RuleFamily s2(int level0 = 8);
  static RuleFamily monte_carlo(int n, std::size_t N0, std::uint64_t seed);

  SphereRule rule(int refinement) const;
  int dim() const { return dim_; }
  bool is_monte_carlo() const { return kind_ == RuleKind::monte_carlo; }
  const std::vector<Vec>& breakpoints() const { return breakpoints_; }

 private:
  RuleKind kind_ = RuleKind::circle_trapezoid;
  int dim_ = 2;
  int base_ = 32;
  std::size_t mc_base_ = 0;
  std::uint64_t seed_ = kDefaultSeed;
  double theta0_ = 0.0;
  double theta1_ = 0.0;
  bool arc_ = false;
  std::vector<Vec> breakpoints_;
};

using SphereIntegrand = std::function<double(const Vec&)>;

inline constexpr int kMaxDoublings = 12;
inline constexpr int kMaxMonteCarloDoublings = 6;
inline constexpr int kMaxS2Doublings = 6;
inline constexpr double kNoiseFloorTol = 1e-6;
/// Floor on the relative tolerance of Monte Carlo integration.
inline constexpr double kMonteCarloTol = 1e-3;

/// Integrates g over the sphere (or arc) with successive refinement until two
/// consecutive values differ by less than tol·∫|g| (Monte Carlo: until the
/// standard error is below that) or by less than atol. When three successive
/// differences stay below kNoiseFloorTol·∫|g| without shrinking, the rule has
/// hit the rounding floor of g and the result is accepted with that
/// difference as its error estimate. A non-finite node value, or a power
/// law |g| ~ d^e with e ≤ -1 at a breakpoint, short-circuits to plus_infinity.
IntegralResult integrate(const SphereIntegrand& g, const RuleFamily& family, double tol = 1e-12,
                         double atol = 1e-300);

/// Evaluates g on one rule with the library's fixed reduction order.
double apply_rule(const SphereIntegrand& g, const SphereRule& rule);

/// Local power-law exponent of |g| approaching `direction` along the circle
/// from the side `side` (+1 counter-clockwise, -1 clockwise). NaN when g
/// vanishes or changes sign there.
double local_exponent(const SphereIntegrand& g, const Vec& direction, int side);

/// Unit vector at angular offset `offset` from the unit vector e (counter-
/// clockwise for positive offset), computed without forming e's angle.
Vec rotate_2d(const Vec& e, double offset);

}  // namespace lpaffine
