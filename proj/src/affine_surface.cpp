#include "lpaffine/affine_surface.hpp"

#include "lpaffine/boundary.hpp"
#include "lpaffine/errors.hpp"

#include <cmath>
#include <limits>

namespace lpaffine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Reason = ExtendedValue::Reason;

void check_family(const std::vector<ConvexBody>& bodies, const char* what) {
  if (bodies.empty()) throw InvalidArgument(std::string(what) + ": no bodies");
  const int n = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n) throw InvalidArgument(std::string(what) + ": need n bodies in R^n");
  for (const auto& K : bodies) {
    if (K.dim() != n) throw InvalidArgument(std::string(what) + ": dimension mismatch");
    if (!K.is_c2plus()) throw UnsupportedSmoothness(std::string(what) + ": body is a polytope");
  }
}

double finite_or_throw(const IntegralResult& r, const char* what) {
  if (r.classification == Classification::failed) {
    throw NonConvergence(std::string(what) + ": integral did not converge");
  }
  if (r.classification == Classification::plus_infinity) return kInf;
  return r.value;
}

ExtendedValue polytope_as_p(const ConvexBody& K, const PParameter& p) {
  auto v = [](double x) { return ExtendedValue{x, Reason::polytope_rule, 0.0}; };
  switch (p.tag()) {
    case PParameter::Tag::finite:
      if (p.p() == 0.0) return v(K.dim() * volume(K));
      return v(p.p() > 0.0 ? 0.0 : kInf);
    case PParameter::Tag::plus_inf:
    case PParameter::Tag::minus_inf:
    case PParameter::Tag::at_minus_n_left: return v(0.0);
    case PParameter::Tag::at_minus_n_right: return v(kInf);
  }
  return v(0.0);
}

}  // namespace

PParameter PParameter::finite(double p, int n) {
  if (!std::isfinite(p)) throw InvalidArgument("PParameter::finite: p must be finite");
  if (p == -static_cast<double>(n)) throw InvalidArgument("PParameter::finite: p = -n is excluded");
  return PParameter(Tag::finite, p);
}

std::string PParameter::to_string() const {
  switch (tag_) {
    case Tag::finite: return std::to_string(p_);
    case Tag::plus_inf: return "inf";
    case Tag::minus_inf: return "-inf";
    case Tag::at_minus_n_right: return "-n+";
    case Tag::at_minus_n_left: return "-n-";
  }
  return "";
}

ExtendedValue as_p(const ConvexBody& K, const PParameter& p) {
  if (!K.is_c2plus()) return polytope_as_p(K, p);
  const int n = K.dim();
  const double nn = n;
  switch (p.tag()) {
    case PParameter::Tag::plus_inf:
    case PParameter::Tag::minus_inf: return {nn * polar_volume(K), Reason::computed, 0.0};
    case PParameter::Tag::at_minus_n_right: {
      const double s = sup_on_sphere(
          [&](const Vec& u) { return std::pow(K.support(u), n + 1) * curvature_function(K, u); }, n,
          K.support_singular_directions());
      return {s, Reason::node_sup, 0.0};
    }
    case PParameter::Tag::at_minus_n_left: {
      const double s = sup_on_sphere(
          [&](const Vec& u) { return 1.0 / (std::pow(K.support(u), n + 1) * curvature_function(K, u)); },
          n, K.support_singular_directions());
      return {s, Reason::node_sup, 0.0};
    }
    case PParameter::Tag::finite: break;
  }
  const double pp = p.p();
  if (pp == 0.0) return {nn * volume(K), Reason::computed, 0.0};
  const double a = nn / (nn + pp);
  const double b = -nn * (pp - 1.0) / (nn + pp);
  auto r = integrate(
      [&](const Vec& u) { return std::pow(curvature_function(K, u), a) * std::pow(K.support(u), b); },
      rule_family_for({K}), default_tolerance(n));
  if (r.classification == Classification::failed) throw NonConvergence("as_p: integral did not converge");
  if (r.classification == Classification::plus_infinity) return {kInf, Reason::nonintegrable, 0.0};
  return {r.value, Reason::computed, r.err_estimate};
}

double as_p(const ConvexBody& K, double p) {
  if (std::isinf(p)) return as_p(K, p > 0.0 ? PParameter::plus_inf() : PParameter::minus_inf()).value;
  return as_p(K, PParameter::finite(p, K.dim())).value;
}

double as_p_via_renyi(const ConvexBody& K, double p) {
  if (K.dim() != 2) throw InvalidArgument("as_p_via_renyi: n = 2 only");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("as_p_via_renyi: body is a polytope");
  if (!std::isfinite(p) || p == -2.0) throw InvalidArgument("as_p_via_renyi: need finite p != -n");
  const double n = 2.0;
  const double alpha = alpha_from_p(p, 2);
  const double D = renyi_on_boundary(K, Order::finite(alpha), Dir::PQ).value;
  const double V = volume_by_boundary(K);
  const double Vp = polar_volume_by_boundary(K);
  return n * std::pow(V, n / (n + p)) * std::pow(Vp, p / (n + p)) * std::exp(-(n / (n + p)) * D);
}

double mixed_as_p(const std::vector<ConvexBody>& bodies, double p) {
  check_family(bodies, "mixed_as_p");
  const int n = bodies.front().dim();
  if (p == -static_cast<double>(n)) throw InvalidArgument("mixed_as_p: p = -n is excluded");
  if (std::isnan(p)) throw InvalidArgument("mixed_as_p: p is NaN");
  auto g = [&](const Vec& u) {
    if (std::isinf(p)) {
      double prod = 1.0;
      for (const auto& K : bodies) prod /= K.support(u);
      return prod;
    }
    double log_prod = 0.0;
    for (const auto& K : bodies) {
      log_prod += (1.0 - p) * std::log(K.support(u)) + std::log(curvature_function(K, u));
    }
    return std::exp(log_prod / (n + p));
  };
  return finite_or_throw(integrate(g, rule_family_for(bodies), default_tolerance(n)), "mixed_as_p");
}

double dual_mixed_volume(const std::vector<ConvexBody>& bodies) {
  return mixed_as_p(bodies, kInf) / bodies.front().dim();
}

double omega(const ConvexBody& K) {
  const double D = renyi(K, Order::kl(), Dir::PQ).value;
  return std::pow(volume(K) / polar_volume(K) * std::exp(-D), K.dim());
}

double a_invariant(const ConvexBody& K) {
  const double D = renyi(K, Order::kl(), Dir::QP).value;
  return polar_volume(K) / volume(K) * std::exp(-D);
}

std::vector<double> omega_limit_diagnostic(const ConvexBody& K, const std::vector<double>& p_list) {
  const double nn = K.dim();
  const double Vp = polar_volume(K);
  const double target = volume(K) / Vp * std::exp(-renyi(K, Order::kl(), Dir::PQ).value);
  std::vector<double> out;
  for (double p : p_list) {
    if (!(p > 0.0)) throw InvalidArgument("omega_limit_diagnostic: p must be positive");
    const double base = as_p(K, p) / (nn * Vp);
    out.push_back(std::abs(std::exp((nn + p) / nn * std::log(base)) - target));
  }
  return out;
}

double duality_residual(const ConvexBody& K, double p) {
  if (!(p > 0.0)) throw InvalidArgument("duality_residual: p must be positive");
  const double nn = K.dim();
  const double a = as_p(K, p);
  const double b = as_p(K.polar(), std::isinf(p) ? 0.0 : nn * nn / p);
  return std::abs(a - b) / a;
}

double affine_invariance_residual(const ConvexBody& K, const Mat& T, double p) {
  const double nn = K.dim();
  const double lhs = as_p(K.linear_image(T), p);
  const double rhs = std::pow(std::abs(T.determinant()), (nn - p) / (nn + p)) * as_p(K, p);
  if (rhs == 0.0) return std::abs(lhs);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

ConvexityCheck convexity_inequality_check(const ConvexBody& K, const ConvexBody& L, double p,
                                          double lambda) {
  if (K.dim() != L.dim()) throw InvalidArgument("convexity_inequality_check: dimension mismatch");
  if (!K.is_c2plus() || !L.is_c2plus()) {
    throw UnsupportedSmoothness("convexity_inequality_check: body is a polytope");
  }
  if (!(p >= 0.0)) throw InvalidArgument("convexity_inequality_check: need p >= 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("convexity_inequality_check: need lambda in [0,1]");
  const int n = K.dim();
  const double nn = n;
  const double a = std::isinf(p) ? 0.0 : nn / (nn + p);
  const double b = std::isinf(p) ? 1.0 : p / (nn + p);
  const double VK = volume(K), VKp = polar_volume(K), VL = volume(L), VLp = polar_volume(L);
  auto g = [&](const Vec& u) {
    const double hK = K.support(u), hL = L.support(u);
    const double first = lambda * curvature_function(K, u) * hK / VK +
                         (1.0 - lambda) * curvature_function(L, u) * hL / VL;
    const double second = lambda / (std::pow(hK, n) * VKp) + (1.0 - lambda) / (std::pow(hL, n) * VLp);
    return std::pow(first, a) * std::pow(second, b);
  };
  const double lhs = finite_or_throw(integrate(g, rule_family_for({K, L}), default_tolerance(n)),
                                     "convexity_inequality_check");
  auto normalized = [&](const ConvexBody& B, double V, double Vp) {
    return as_p(B, p) / (std::pow(V, a) * std::pow(Vp, b));
  };
  const double rhs = std::pow(normalized(K, VK, VKp), lambda) * std::pow(normalized(L, VL, VLp), 1.0 - lambda);
  return {lhs, rhs, lhs >= rhs - 1e-10};
}

double p_from_alpha(double alpha, int n) {
  if (alpha == 1.0) throw InvalidArgument("p_from_alpha: alpha = 1 maps to p = infinity");
  return n * alpha / (1.0 - alpha);
}

double alpha_from_p(double p, int n) {
  if (p == -static_cast<double>(n)) throw InvalidArgument("alpha_from_p: p = -n is excluded");
  if (std::isinf(p)) return 1.0;
  return p / (n + p);
}

double mixed_identity_residual(const std::vector<ConvexBody>& bodies, double alpha) {
  check_family(bodies, "mixed_identity_residual");
  const int n = bodies.front().dim();
  const double nn = n;
  const double p = p_from_alpha(alpha, n);
  const double D = mixed_renyi(bodies, Order::finite(alpha), Dir::PQ).value;
  double log_norm = std::log(nn);
  for (const auto& K : bodies) {
    log_norm += (1.0 - alpha) / nn * std::log(volume(K)) + alpha / nn * std::log(polar_volume(K));
  }
  const double rhs = (std::log(mixed_as_p(bodies, p)) - log_norm) / (alpha - 1.0);
  return std::abs(D - rhs);
}

}  // namespace lpaffine
