#pragma once

#include "lpaffine/divergence.hpp"

#include <vector>

namespace lpaffine {

/// Order p of an L_p affine surface area, including the two one-sided limits
/// at p = −n.
class PParameter {
 public:
  enum class Tag { finite, plus_inf, minus_inf, at_minus_n_right, at_minus_n_left };

  /// Throws InvalidArgument for p = −n.
  static PParameter finite(double p, int n);
  static PParameter plus_inf() { return PParameter(Tag::plus_inf, 0.0); }
  static PParameter minus_inf() { return PParameter(Tag::minus_inf, 0.0); }
  static PParameter at_minus_n_right() { return PParameter(Tag::at_minus_n_right, 0.0); }
  static PParameter at_minus_n_left() { return PParameter(Tag::at_minus_n_left, 0.0); }

  Tag tag() const { return tag_; }
  double p() const { return p_; }
  std::string to_string() const;

 private:
  PParameter(Tag tag, double p) : tag_(tag), p_(p) {}
  Tag tag_;
  double p_;
};

/// as_p(K). Smooth bodies integrate f^{n/(n+p)} h^{−n(p−1)/(n+p)} over the
/// sphere; polytopes follow κ = 0 almost everywhere.
ExtendedValue as_p(const ConvexBody& K, const PParameter& p);
double as_p(const ConvexBody& K, double p);

/// n|K|^{n/(n+p)}|K°|^{p/(n+p)} exp(−n/(n+p)·D_{p/(n+p)}(P‖Q)) with every
/// ingredient integrated over ∂K. n = 2.
double as_p_via_renyi(const ConvexBody& K, double p);

/// ∫ [∏ h_i^{1−p} f_i]^{1/(n+p)} dσ; p = ±∞ gives ∫ ∏ h_i^{−1} dσ.
double mixed_as_p(const std::vector<ConvexBody>& bodies, double p);

/// (1/n) ∫ ∏ h_i^{−1} dσ.
double dual_mixed_volume(const std::vector<ConvexBody>& bodies);

/// Ω_K = (|K|/|K°| e^{−D_KL(P‖Q)})^n.
double omega(const ConvexBody& K);
/// A_K = |K°|/|K| e^{−D_KL(Q‖P)}.
double a_invariant(const ConvexBody& K);

/// |(as_p/(n|K°|))^{(n+p)/n} − |K|/|K°| e^{−D_KL(P‖Q)}| for each p.
std::vector<double> omega_limit_diagnostic(const ConvexBody& K, const std::vector<double>& p_list);

/// |as_p(K) − as_{n²/p}(K°)| / as_p(K), p > 0.
double duality_residual(const ConvexBody& K, double p);

/// Relative residual of as_p(TK) = |det T|^{(n−p)/(n+p)} as_p(K).
double affine_invariance_residual(const ConvexBody& K, const Mat& T, double p);

struct ConvexityCheck {
  double lhs;
  double rhs;
  bool holds;
};

/// Both sides of the mixed-density inequality for K, L, 0 ≤ p ≤ ∞, λ ∈ [0,1].
ConvexityCheck convexity_inequality_check(const ConvexBody& K, const ConvexBody& L, double p,
                                          double lambda);

/// p = nα/(1−α) and its inverse α = p/(n+p).
double p_from_alpha(double alpha, int n);
double alpha_from_p(double p, int n);

/// |D_α(P_1×…×P_n‖Q_1×…×Q_n) − log(as_p(K_1,…,K_n)/(n∏|K_i|^{(1−α)/n}|K_i°|^{α/n}))/(α−1)|
/// with p = nα/(1−α).
double mixed_identity_residual(const std::vector<ConvexBody>& bodies, double alpha);

}  // namespace lpaffine
