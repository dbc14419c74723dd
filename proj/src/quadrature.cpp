#include "lpaffine/quadrature.hpp"

#include "lpaffine/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>
#include <random>

namespace lpaffine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTanhSinhTmax = 5.8;

double angle_of(const Vec& e) {
  double a = std::atan2(e(1), e(0));
  return a < 0.0 ? a + 2.0 * kPi : a;
}

struct Cut {
  double angle;
  Vec dir;
};

// Appends the tanh-sinh nodes of the arc from a to b (length L, measured
// counter-clockwise).
void append_tanh_sinh(const Vec& a, const Vec& b, double L, int level, SphereRule& rule) {
  const double h = std::ldexp(1.0, -(level + 1));
  const auto kmax = static_cast<int>(std::floor(kTanhSinhTmax / h));
  for (int k = -kmax; k <= kmax; ++k) {
    const double t = k * h;
    const double s = 0.5 * kPi * std::sinh(std::abs(t));
    const double e2 = std::exp(-2.0 * s);
    // distance to the nearer endpoint: L/(1 + e^{2s}) = L e^{-2s}/(1 + e^{-2s})
    const double d = L * e2 / (1.0 + e2);
    // h · L/2 · (π/2) cosh t / cosh² s with cosh² s = e^{2s}(1 + e^{-2s})²/4
    const double w = h * L * 0.5 * (0.5 * kPi * std::cosh(t)) * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
    if (!(d > 0.0) || !(w > 0.0)) continue;
    Vec u;
    if (k < 0) {
      u = rotate_2d(a, d);
    } else if (k > 0) {
      u = rotate_2d(b, -d);
    } else {
      u = rotate_2d(a, 0.5 * L);
    }
    rule.nodes.push_back(std::move(u));
    rule.weights.push_back(w);
  }
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::finite: return "finite";
    case Classification::plus_infinity: return "plus_infinity";
    case Classification::minus_infinity_logdomain: return "minus_infinity_logdomain";
    case Classification::failed: return "failed";
  }
  return "failed";
}

double SphereRule::weight_sum() const { return pairwise_sum(weights); }

double sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Vec rotate_2d(const Vec& e, double offset) {
  const double c = std::cos(offset);
  const double s = std::sin(offset);
  Vec u(2);
  u << c * e(0) - s * e(1), s * e(0) + c * e(1);
  return u;
}

SphereRule circle_rule(int m) {
  if (m < 8 || m % 2 != 0) {
    throw InvalidArgument("circle_rule: m must be even and at least 8");
  }
  SphereRule rule;
  rule.dim = 2;
  rule.kind = RuleKind::circle_trapezoid;
  rule.nodes.reserve(m);
  rule.weights.assign(m, 2.0 * kPi / m);
  for (int j = 0; j < m; ++j) rule.nodes.push_back(unit_vector_2d(2.0 * kPi * j / m));
  return rule;
}

void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

SphereRule s2_rule(int level) {
  if (level < 1) throw InvalidArgument("s2_rule: level must be at least 1");
  std::vector<double> z, wz;
  gauss_legendre(level, z, wz);
  const int naz = 2 * level;
  SphereRule rule;
  rule.dim = 3;
  rule.kind = RuleKind::s2_product;
  rule.nodes.reserve(static_cast<std::size_t>(level) * naz);
  for (int i = 0; i < level; ++i) {
    const double st = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int j = 0; j < naz; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / naz;
      Vec u(3);
      u << st * std::cos(phi), st * std::sin(phi), z[i];
      rule.nodes.push_back(std::move(u));
      rule.weights.push_back(wz[i] * 2.0 * kPi / naz);
    }
  }
  return rule;
}

SphereRule mc_rule(int n, std::size_t N, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("mc_rule: dimension must be at least 2");
  if (N < 1000) throw InvalidArgument("mc_rule: need at least 1000 samples");
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] {
    // (0, 1), never 0
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  };
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&] {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * kPi * uniform();
    spare = r * std::sin(a);
    have_spare = true;
    return r * std::cos(a);
  };
  SphereRule rule;
  rule.dim = n;
  rule.kind = RuleKind::monte_carlo;
  rule.seed = seed;
  rule.nodes.reserve(N);
  rule.weights.assign(N, sphere_area(n) / static_cast<double>(N));
  for (std::size_t i = 0; i < N; ++i) {
    Vec g(n);
    double norm = 0.0;
    do {
      for (int k = 0; k < n; ++k) g(k) = normal();
      norm = g.norm();
    } while (norm == 0.0);
    rule.nodes.push_back(g / norm);
  }
  return rule;
}

SphereRule graded_arc_rule(double theta0, double theta1, std::span<const Vec> breakpoints,
                           int level) {
  if (!(theta1 > theta0)) throw InvalidArgument("graded_arc_rule: empty arc");
  const bool full = theta1 - theta0 >= 2.0 * kPi - 1e-15;
  std::vector<Cut> cuts;
  for (const Vec& b : breakpoints) {
    Vec e = b.normalized();
    double a = angle_of(e);
    // express relative to theta0
    double rel = std::fmod(a - theta0, 2.0 * kPi);
    if (rel < 0.0) rel += 2.0 * kPi;
    if (full || rel < theta1 - theta0) cuts.push_back({theta0 + rel, e});
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.angle < y.angle; });
  // merge duplicates
  std::vector<Cut> merged;
  for (auto& c : cuts) {
    if (merged.empty() || c.angle - merged.back().angle > 1e-14) merged.push_back(c);
  }
  std::vector<Cut> pts;
  if (full) {
    if (merged.empty()) merged.push_back({theta0, unit_vector_2d(theta0)});
    pts = merged;
    pts.push_back({merged.front().angle + 2.0 * kPi, merged.front().dir});
  } else {
    const bool start_is_cut = !merged.empty() && merged.front().angle - theta0 < 1e-14;
    if (!start_is_cut) pts.push_back({theta0, unit_vector_2d(theta0)});
    for (auto& c : merged) pts.push_back(c);
    if (theta1 - pts.back().angle > 1e-14) {
      // reuse an exact breakpoint vector when theta1 coincides with one
      Vec e1 = unit_vector_2d(theta1);
      for (const Vec& b : breakpoints) {
        if ((b.normalized() - e1).norm() < 1e-13) e1 = b.normalized();
      }
      pts.push_back({theta1, e1});
    }
  }
  SphereRule rule;
  rule.dim = 2;
  rule.kind = RuleKind::circle_graded;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double L = pts[i + 1].angle - pts[i].angle;
    if (L <= 0.0) continue;
    append_tanh_sinh(pts[i].dir, pts[i + 1].dir, L, level, rule);
  }
  return rule;
}

SphereRule graded_circle_rule(std::span<const Vec> breakpoints, int level) {
  return graded_arc_rule(0.0, 2.0 * kPi, breakpoints, level);
}

RuleFamily RuleFamily::for_dimension(int n, std::vector<Vec> breakpoints, std::uint64_t seed) {
  if (n == 2) return breakpoints.empty() ? trapezoid() : graded(std::move(breakpoints));
  if (n == 3) return s2();
  return monte_carlo(n, 10000, seed);
}

RuleFamily RuleFamily::trapezoid(int m0) {
  RuleFamily f;
  f.kind_ = RuleKind::circle_trapezoid;
  f.dim_ = 2;
  f.base_ = m0;
  return f;
}

RuleFamily RuleFamily::graded(std::vector<Vec> breakpoints) {
  RuleFamily f;
  f.kind_ = RuleKind::circle_graded;
  f.dim_ = 2;
  f.base_ = 0;
  f.theta0_ = 0.0;
  f.theta1_ = 2.0 * kPi;
  f.breakpoints_ = std::move(breakpoints);
  return f;
}

RuleFamily RuleFamily::graded_arc(double theta0, double theta1, std::vector<Vec> breakpoints) {
  RuleFamily f = graded(std::move(breakpoints));
  f.theta0_ = theta0;
  f.theta1_ = theta1;
  f.arc_ = true;
  return f;
}

RuleFamily RuleFamily::s2(int level0) {
  RuleFamily f;
  f.kind_ = RuleKind::s2_product;
  f.dim_ = 3;
  f.base_ = level0;
  return f;
}

RuleFamily RuleFamily::monte_carlo(int n, std::size_t N0, std::uint64_t seed) {
  RuleFamily f;
  f.kind_ = RuleKind::monte_carlo;
  f.dim_ = n;
  f.mc_base_ = N0;
  f.seed_ = seed;
  return f;
}

SphereRule RuleFamily::rule(int refinement) const {
  switch (kind_) {
    case RuleKind::circle_trapezoid: return circle_rule(base_ << refinement);
    case RuleKind::circle_graded:
      return graded_arc_rule(theta0_, theta1_, breakpoints_, base_ + refinement);
    case RuleKind::s2_product: return s2_rule(base_ << refinement);
    case RuleKind::monte_carlo: return mc_rule(dim_, mc_base_ << refinement, seed_);
  }
  throw InvalidArgument("RuleFamily: unknown kind");
}

double apply_rule(const SphereIntegrand& g, const SphereRule& rule) {
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) terms[i] = rule.weights[i] * g(rule.nodes[i]);
  return pairwise_sum(terms);
}

double local_exponent(const SphereIntegrand& g, const Vec& direction, int side) {
  const double d1 = 1e-9;
  const double d2 = 1e-10;
  const Vec e = direction.normalized();
  const double g1 = g(rotate_2d(e, side * d1));
  const double g2 = g(rotate_2d(e, side * d2));
  if (!std::isfinite(g1) || !std::isfinite(g2)) return -std::numeric_limits<double>::infinity();
  if (g1 == 0.0 || g2 == 0.0 || (g1 > 0.0) != (g2 > 0.0)) return std::nan("");
  return std::log(std::abs(g1 / g2)) / std::log(d1 / d2);
}

namespace {

bool near_breakpoint(const Vec& u, const std::vector<Vec>& breakpoints) {
  if (u.size() != 2) return false;
  for (const Vec& b : breakpoints) {
    const Vec e = b.normalized();
    if (std::abs(e(0) * u(1) - e(1) * u(0)) < 1e-12 && e.dot(u) > 0.0) return true;
  }
  return false;
}

}  // namespace

IntegralResult integrate(const SphereIntegrand& g, const RuleFamily& family, double tol, double atol) {
  IntegralResult res;
  if (family.dim() == 2) {
    for (const Vec& b : family.breakpoints()) {
      for (int side : {-1, 1}) {
        const double e = local_exponent(g, b, side);
        if (e <= -1.0 + 1e-6) {
          const double probe = g(rotate_2d(b.normalized(), side * 1e-9));
          res.value = probe < 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
          res.classification = probe < 0.0 ? Classification::failed : Classification::plus_infinity;
          res.err_estimate = 0.0;
          return res;
        }
      }
    }
  }
  double previous = 0.0;
  std::vector<double> diffs;
  const int kmax = family.is_monte_carlo()                 ? kMaxMonteCarloDoublings
                   : family.dim() == 3                      ? kMaxS2Doublings
                                                            : kMaxDoublings;
  if (family.is_monte_carlo()) tol = std::max(tol, kMonteCarloTol);
  for (int k = 0; k <= kmax; ++k) {
    const SphereRule rule = family.rule(k);
    std::vector<double> terms(rule.size());
    bool plus_inf = false;
    bool bad = false;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double v = g(rule.nodes[i]);
      // breakpoints passed the integrability check above; a non-finite value
      // this close to one is rounding in the evaluator, not a singularity
      if (!std::isfinite(v) && near_breakpoint(rule.nodes[i], family.breakpoints())) v = 0.0;
      if (std::isinf(v) && v > 0.0) plus_inf = true;
      if (std::isnan(v) || (std::isinf(v) && v < 0.0)) bad = true;
      terms[i] = rule.weights[i] * v;
    }
    res.refinements = k;
    res.nodes = rule.size();
    if (plus_inf) {
      res.value = std::numeric_limits<double>::infinity();
      res.classification = Classification::plus_infinity;
      return res;
    }
    if (bad) {
      res.value = std::nan("");
      res.classification = Classification::failed;
      return res;
    }
    const double value = pairwise_sum(terms);
    // absolute mass, so cancelling integrands still have a scale
    std::vector<double> abs_terms(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) abs_terms[i] = std::abs(terms[i]);
    const double scale = pairwise_sum(abs_terms);
    if (family.is_monte_carlo()) {
      // standard error of the mean of g times |S^{n-1}|
      const double area = sphere_area(family.dim());
      const double mean = value / area;
      std::vector<double> sq(rule.size());
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double dv = terms[i] / rule.weights[i] - mean;
        sq[i] = dv * dv;
      }
      const double var = pairwise_sum(sq) / static_cast<double>(rule.size() - 1);
      const double se = area * std::sqrt(var / static_cast<double>(rule.size()));
      res.value = value;
      res.err_estimate = se;
      if (se <= tol * scale || se <= atol) {
        res.classification = Classification::finite;
        return res;
      }
    } else {
      res.value = value;
      if (k > 0) {
        res.err_estimate = std::abs(value - previous);
        if (res.err_estimate <= tol * scale || res.err_estimate <= atol) {
          res.classification = Classification::finite;
          return res;
        }
        diffs.push_back(res.err_estimate);
        // rounding noise in the integrand: differences small but no longer shrinking
        const std::size_t m = diffs.size();
        if (m >= 3) {
          const double worst = std::max({diffs[m - 1], diffs[m - 2], diffs[m - 3]});
          if (worst <= kNoiseFloorTol * scale && diffs[m - 1] > 0.25 * diffs[m - 3]) {
            res.err_estimate = worst;
            res.classification = Classification::finite;
            return res;
          }
        }
      }
      previous = value;
    }
  }
  res.classification = Classification::failed;
  return res;
}

}  // namespace lpaffine
