#include "lpaffine/divergence.hpp"

#include "lpaffine/boundary.hpp"
#include "lpaffine/cone_measure.hpp"
#include "lpaffine/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace lpaffine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// KL integrands of near-symmetric pairs are rounding noise around zero
constexpr double kKlAtol = 1e-14;
using Density = std::function<double(const Vec&)>;
using Reason = ExtendedValue::Reason;

double power_mix(double p, double q, double alpha) {
  if (p == 0.0 && q == 0.0) return 0.0;
  return std::pow(p, alpha) * std::pow(q, 1.0 - alpha);
}

// ∫ a log(a/b), with 0·log(0/b) = 0
double kl_term(double a, double b) {
  if (a == 0.0) return 0.0;
  return a * std::log(a / b);
}

ExtendedValue from_integral(const IntegralResult& r) {
  if (r.classification == Classification::failed) {
    throw NonConvergence("divergence integral did not converge");
  }
  if (r.classification == Classification::plus_infinity) return {kInf, Reason::nonintegrable, 0.0};
  return {r.value, Reason::computed, r.err_estimate};
}

// D = log H/(α−1) with the infinite cases
ExtendedValue log_over(const ExtendedValue& H, double alpha) {
  const double s = alpha > 1.0 ? 1.0 : -1.0;
  if (std::isinf(H.value)) return {s * kInf, Reason::nonintegrable, 0.0};
  if (H.value <= 0.0) return {-s * kInf, Reason::nonintegrable, 0.0};
  return {std::log(H.value) / (alpha - 1.0), Reason::computed,
          H.err_estimate / (H.value * std::abs(alpha - 1.0))};
}

void require_smooth(const ConvexBody& K, const char* what) {
  if (!K.is_c2plus()) throw UnsupportedSmoothness(std::string(what) + ": body is a polytope");
}

ExtendedValue polytope_renyi(Order order, Dir dir) {
  auto v = [](double x) { return ExtendedValue{x, Reason::polytope_rule, 0.0}; };
  if (dir == Dir::QP) return v(kInf);
  switch (order.tag()) {
    case Order::Tag::kl: return v(0.0);
    case Order::Tag::plus_inf:
    case Order::Tag::minus_inf: return v(-kInf);
    case Order::Tag::finite: {
      const double a = order.alpha();
      if (a == 0.0) return v(0.0);
      if (a > 0.0 && a < 1.0) return v(kInf);
      return v(-kInf);
    }
  }
  return v(0.0);
}

}  // namespace

double sup_on_sphere(const SphereIntegrand& ratio, int n, const std::vector<Vec>& breakpoints) {
  double best = 0.0;
  if (n == 2) {
    const int m = 4096;
    const double step = 2.0 * std::numbers::pi / m;
    int arg = 0;
    for (int j = 0; j < m; ++j) {
      const double v = ratio(unit_vector_2d(j * step));
      if (std::isnan(v)) continue;
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    for (const Vec& b : breakpoints) {
      const double v = ratio(b.normalized());
      if (!std::isnan(v)) best = std::max(best, v);
    }
    if (std::isinf(best)) return best;
    auto neg = [&](double t) {
      const double v = ratio(unit_vector_2d(t));
      return std::isnan(v) ? 0.0 : -v;
    };
    const auto r = boost::math::tools::brent_find_minima(neg, (arg - 1) * step, (arg + 1) * step, 50);
    return std::max(best, -r.second);
  }
  const SphereRule rule = n == 3 ? s2_rule(96) : mc_rule(n, 200000, kDefaultSeed);
  for (const Vec& u : rule.nodes) {
    const double v = ratio(u);
    if (!std::isnan(v)) best = std::max(best, v);
  }
  return best;
}

namespace {

double node_sup(const Density& ratio, int n, const std::vector<Vec>& breakpoints) {
  return sup_on_sphere(ratio, n, breakpoints);
}

ExtendedValue log_sup(double s) {
  if (std::isinf(s)) return {kInf, Reason::node_sup, 0.0};
  if (s <= 0.0) return {-kInf, Reason::node_sup, 0.0};
  return {std::log(s), Reason::node_sup, 0.0};
}

// generic driver over a pair of densities on a common rule
struct Pair {
  Density p;
  Density q;
  RuleFamily family;
  int n;
  std::vector<Vec> breakpoints;
};

ExtendedValue renyi_pair(const Pair& d, Order order, Dir dir) {
  const Density& a = dir == Dir::PQ ? d.p : d.q;
  const Density& b = dir == Dir::PQ ? d.q : d.p;
  const double tol = default_tolerance(d.n);
  switch (order.tag()) {
    case Order::Tag::finite: {
      const double al = order.alpha();
      auto H = from_integral(integrate(
          [&](const Vec& u) { return power_mix(a(u), b(u), al); }, d.family, tol));
      return log_over(H, al);
    }
    case Order::Tag::kl: {
      auto r = integrate([&](const Vec& u) { return kl_term(a(u), b(u)); }, d.family, tol, kKlAtol);
      return from_integral(r);
    }
    case Order::Tag::plus_inf:
      return log_sup(node_sup([&](const Vec& u) { return a(u) / b(u); }, d.n, d.breakpoints));
    case Order::Tag::minus_inf: {
      auto v = log_sup(node_sup([&](const Vec& u) { return b(u) / a(u); }, d.n, d.breakpoints));
      v.value = -v.value;
      return v;
    }
  }
  return {};
}

Pair sphere_pair(const ConvexBody& K) {
  const DensityPair dp = density_pair(K);
  const auto bps = K.support_singular_directions();
  return {dp.p_sphere, dp.q_sphere, rule_family_for({K}), K.dim(), bps};
}

}  // namespace

Order Order::finite(double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("Order::finite: alpha must be finite");
  if (alpha == 1.0) throw InvalidArgument("Order::finite: alpha = 1 is the KL order");
  return Order(Tag::finite, alpha);
}

std::string Order::to_string() const {
  switch (tag_) {
    case Tag::finite: return std::to_string(alpha_);
    case Tag::kl: return "kl";
    case Tag::plus_inf: return "inf";
    case Tag::minus_inf: return "-inf";
  }
  return "";
}

std::string to_string(Dir d) { return d == Dir::PQ ? "PQ" : "QP"; }

std::string to_string(ExtendedValue::Reason r) {
  switch (r) {
    case Reason::computed: return "computed";
    case Reason::polytope_rule: return "polytope_rule";
    case Reason::node_sup: return "node_sup";
    case Reason::nonintegrable: return "nonintegrable";
  }
  return "";
}

double default_tolerance(int n) { return n >= 4 ? kMonteCarloTol : 1e-12; }

RuleFamily rule_family_for(const std::vector<ConvexBody>& bodies, std::uint64_t seed) {
  if (bodies.empty()) throw InvalidArgument("rule_family_for: no bodies");
  const int n = bodies.front().dim();
  std::vector<Vec> bps;
  if (n == 2) {
    for (const auto& K : bodies) {
      for (const Vec& s : K.support_singular_directions()) {
        const bool dup = std::any_of(bps.begin(), bps.end(),
                                     [&](const Vec& b) { return (b - s).norm() < 1e-14; });
        if (!dup) bps.push_back(s);
      }
    }
  }
  return RuleFamily::for_dimension(n, bps, seed);
}

ExtendedValue hellinger(const ConvexBody& K, double alpha) {
  require_smooth(K, "hellinger");
  const Pair d = sphere_pair(K);
  return from_integral(integrate([&](const Vec& u) { return power_mix(d.p(u), d.q(u), alpha); },
                                 d.family, default_tolerance(K.dim())));
}

ExtendedValue renyi(const ConvexBody& K, Order order, Dir dir) {
  if (!K.is_c2plus()) return polytope_renyi(order, dir);
  return renyi_pair(sphere_pair(K), order, dir);
}

ExtendedValue renyi_on_boundary(const ConvexBody& K, Order order, Dir dir) {
  if (K.dim() != 2) throw InvalidArgument("renyi_on_boundary: n = 2 only");
  require_smooth(K, "renyi_on_boundary");
  if (order.tag() == Order::Tag::plus_inf || order.tag() == Order::Tag::minus_inf) {
    throw InvalidArgument("renyi_on_boundary: finite orders and KL only");
  }
  const double V = volume_by_boundary(K);
  const double Vp = polar_volume_by_boundary(K);
  // densities with respect to μ_K, carried with the arc-length factor
  auto family = RuleFamily::graded(K.gauge_singular_directions());
  auto run = [&](auto&& integrand, double atol = 1e-300) {
    return integrate(
        [&](const Vec& e) {
          const BoundarySample s = boundary_sample(K, e);
          const double p = s.kappa / (2.0 * Vp * s.x_dot_n * s.x_dot_n);
          const double q = s.x_dot_n / (2.0 * V);
          return dir == Dir::PQ ? integrand(p, q) * s.speed : integrand(q, p) * s.speed;
        },
        family, 1e-12, atol);
  };
  if (order.tag() == Order::Tag::kl) {
    return from_integral(run([](double a, double b) { return kl_term(a, b); }, kKlAtol));
  }
  const double al = order.alpha();
  return log_over(from_integral(run([al](double a, double b) { return power_mix(a, b, al); })), al);
}

double bhattacharyya(const ConvexBody& K) {
  auto H = hellinger(K, 0.5);
  if (!H.is_finite()) throw NonConvergence("bhattacharyya: integral is not finite");
  return H.value;
}

double skew_residual(const ConvexBody& K, double alpha) {
  if (alpha == 0.0 || alpha == 1.0) throw InvalidArgument("skew_residual: alpha must avoid 0 and 1");
  require_smooth(K, "skew_residual");
  const Pair d = sphere_pair(K);
  const auto lhs = renyi_pair(d, Order::finite(alpha), Dir::QP);
  const auto rhs = renyi_pair(d, Order::finite(1.0 - alpha), Dir::PQ);
  const double scaled = alpha / (1.0 - alpha) * rhs.value;
  if (!lhs.is_finite() || !std::isfinite(scaled)) {
    // both sides diverge to the same infinity at the regime thresholds
    return lhs.value == scaled ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(lhs.value - scaled);
}

ExtendedValue mixed_renyi(const std::vector<ConvexBody>& bodies, Order order, Dir dir) {
  if (bodies.empty()) throw InvalidArgument("mixed_renyi: no bodies");
  const int n = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n) throw InvalidArgument("mixed_renyi: need n bodies in R^n");
  for (const auto& K : bodies) {
    if (K.dim() != n) throw InvalidArgument("mixed_renyi: dimension mismatch");
    require_smooth(K, "mixed_renyi");
  }
  if (order.tag() == Order::Tag::plus_inf || order.tag() == Order::Tag::minus_inf) {
    throw InvalidArgument("mixed_renyi: finite orders and KL only");
  }
  std::vector<double> V, Vp;
  for (const auto& K : bodies) {
    V.push_back(volume(K));
    Vp.push_back(polar_volume(K));
  }
  const double nn = n;
  const double cn = std::pow(nn, 1.0 / nn);
  const RuleFamily family = rule_family_for(bodies);
  const double tol = default_tolerance(n);

  if (order.tag() == Order::Tag::kl) {
    auto g = [&](const Vec& u) {
      double weight = 1.0;
      double logarg = 0.0;
      for (int i = 0; i < n; ++i) {
        const double h = bodies[i].support(u);
        const double f = curvature_function(bodies[i], u);
        if (dir == Dir::QP) {
          weight *= std::pow(f * h, 1.0 / nn) / (cn * std::pow(V[i], 1.0 / nn));
          logarg += (std::log(Vp[i]) + std::log(f) - std::log(V[i])) / nn + (1.0 + 1.0 / nn) * std::log(h);
        } else {
          weight *= 1.0 / (h * cn * std::pow(Vp[i], 1.0 / nn));
          logarg += (std::log(V[i]) - std::log(Vp[i]) - std::log(f)) / nn - (1.0 + 1.0 / nn) * std::log(h);
        }
      }
      return weight == 0.0 ? 0.0 : weight * logarg;
    };
    return from_integral(integrate(g, family, tol));
  }

  const double al = order.alpha();
  // exponent of f and the (|K|, |K°|) exponents per body
  const double a = dir == Dir::QP ? al : 1.0 - al;
  auto g = [&](const Vec& u) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      const double h = bodies[i].support(u);
      const double f = curvature_function(bodies[i], u);
      prod *= std::pow(f, a / nn) * std::pow(h, a / nn - (1.0 - a)) /
              (cn * std::pow(V[i], a / nn) * std::pow(Vp[i], (1.0 - a) / nn));
    }
    return prod;
  };
  return log_over(from_integral(integrate(g, family, tol)), al);
}

double product_factorization_residual(const std::vector<ConvexBody>& bodies, double alpha, Dir dir) {
  if (alpha < 0.0) throw InvalidArgument("product_factorization_residual: alpha must be nonnegative");
  const Order order = alpha == 1.0 ? Order::kl() : Order::finite(alpha);
  const auto mixed = mixed_renyi(bodies, order, dir);
  double sum = 0.0;
  for (const auto& K : bodies) sum += renyi(K, order, dir).value;
  const double avg = sum / static_cast<double>(bodies.size());
  if (std::isinf(mixed.value) || std::isinf(avg)) {
    return mixed.value == avg ? 0.0 : kInf;
  }
  return std::abs(mixed.value - avg);
}

}  // namespace lpaffine
