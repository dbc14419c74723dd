#pragma once

#include "lpaffine/body.hpp"
#include "lpaffine/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lpaffine {

/// Order of a Rényi divergence. α = 1 is only reachable through kl().
class Order {
 public:
  enum class Tag { finite, kl, plus_inf, minus_inf };

  static Order finite(double alpha);
  static Order kl() { return Order(Tag::kl, 1.0); }
  static Order plus_inf() { return Order(Tag::plus_inf, 0.0); }
  static Order minus_inf() { return Order(Tag::minus_inf, 0.0); }

  Tag tag() const { return tag_; }
  double alpha() const { return alpha_; }
  std::string to_string() const;

 private:
  Order(Tag tag, double alpha) : tag_(tag), alpha_(alpha) {}
  Tag tag_;
  double alpha_;
};

enum class Dir { PQ, QP };

std::string to_string(Dir d);

struct ExtendedValue {
  enum class Reason { computed, polytope_rule, node_sup, nonintegrable };

  double value = 0.0;
  Reason reason = Reason::computed;
  double err_estimate = 0.0;

  bool is_finite() const { return std::isfinite(value); }
};

std::string to_string(ExtendedValue::Reason r);

/// Quadrature family adequate for all bodies at once (shared singular
/// directions in the plane).
RuleFamily rule_family_for(const std::vector<ConvexBody>& bodies, std::uint64_t seed = kDefaultSeed);

/// Default relative tolerance for sphere integrals in dimension n.
double default_tolerance(int n);

/// Maximum of g over a dense node set of S^{n−1} (plus the singular
/// directions), refined by a local search in the plane. Used for essential
/// suprema of continuous ratios.
double sup_on_sphere(const SphereIntegrand& g, int n, const std::vector<Vec>& breakpoints);

/// ∫ p^α q^{1−α} dσ.
ExtendedValue hellinger(const ConvexBody& K, double alpha);

/// D_α(P_K‖Q_K) for dir = PQ, D_α(Q_K‖P_K) for dir = QP.
ExtendedValue renyi(const ConvexBody& K, Order order, Dir dir);

/// Same for finite α ≠ 1 and KL, but integrating over ∂K in the radial
/// parametrization with volumes from boundary integrals. n = 2.
ExtendedValue renyi_on_boundary(const ConvexBody& K, Order order, Dir dir);

/// ∫ √(pq) dσ.
double bhattacharyya(const ConvexBody& K);

/// |D_α(Q‖P) − α/(1−α)·D_{1−α}(P‖Q)| on one rule; 0 when both sides are the
/// same infinity, +∞ when only one side diverges.
double skew_residual(const ConvexBody& K, double alpha);

/// Rényi divergence of the product measures of n bodies in R^n, α finite or
/// KL.
ExtendedValue mixed_renyi(const std::vector<ConvexBody>& bodies, Order order, Dir dir);

/// |D_mixed − (1/n)Σ D_α(K_i)|. Diagnostic only: the two sides differ in
/// general.
double product_factorization_residual(const std::vector<ConvexBody>& bodies, double alpha, Dir dir);

}  // namespace lpaffine
