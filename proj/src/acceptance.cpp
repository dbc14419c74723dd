#include "lpaffine/acceptance.hpp"

#include "lpaffine/affine_surface.hpp"
#include "lpaffine/cone_measure.hpp"
#include "lpaffine/errors.hpp"
#include "lpaffine/oracles.hpp"
#include "lpaffine/surface_body.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

namespace lpaffine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class Checker {
 public:
  explicit Checker(CriterionResult& out) : out_(out) {}

  void check(const std::string& label, double residual, double tol) {
    const bool ok = residual <= tol;
    ok_ = ok_ && ok;
    worst_ = std::max(worst_, std::isnan(residual) ? kInf : residual / tol);
    out_.details.push_back((ok ? "ok   " : "FAIL ") + label + ": " + fmt(residual) + " (tol " +
                           fmt(tol) + ")");
  }

  void expect(const std::string& label, bool ok, const std::string& observed) {
    ok_ = ok_ && ok;
    if (!ok) worst_ = kInf;
    out_.details.push_back((ok ? "ok   " : "FAIL ") + label + ": " + observed);
  }

  void info(const std::string& line) { out_.details.push_back("info " + line); }

  void finish(double limit_seconds = 0.0) {
    if (limit_seconds > 0.0) check("runtime [s]", out_.seconds, limit_seconds);
    out_.pass = ok_;
    out_.residual = worst_;
  }

 private:
  CriterionResult& out_;
  bool ok_ = true;
  double worst_ = 0.0;
};

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(b);
}

std::string show(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return fmt(v);
}

ConvexBody disk() { return ConvexBody::ball(2, 1.0); }

ConvexBody ellipse() {
  Mat A(2, 2);
  A << 2, 0, 0, 1;
  return ConvexBody::ellipsoid(A);
}

ConvexBody lr3() { return ConvexBody::lr_ball(2, 3.0); }

ConvexBody square() {
  std::vector<Vec> v;
  for (auto [x, y] : {std::pair{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}}) {
    Vec p(2);
    p << x, y;
    v.push_back(p);
  }
  return ConvexBody::polytope(v);
}

std::vector<Mat> random_maps(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  std::vector<Mat> out;
  while (static_cast<int>(out.size()) < count) {
    Mat T(2, 2);
    T << U(rng), U(rng), U(rng), U(rng);
    if (std::abs(T.determinant()) >= 0.2) out.push_back(T);
  }
  return out;
}

Order order_of(double alpha) {
  if (alpha == 1.0) return Order::kl();
  if (alpha == kInf) return Order::plus_inf();
  if (alpha == -kInf) return Order::minus_inf();
  return Order::finite(alpha);
}

PParameter p_of(double p, int n) {
  if (p == kInf) return PParameter::plus_inf();
  if (p == -kInf) return PParameter::minus_inf();
  return PParameter::finite(p, n);
}

// ---------------------------------------------------------------------------

void ball_degeneracy(Checker& c) {
  for (int n : {2, 3}) {
    const ConvexBody B = ConvexBody::ball(n, 1.0);
    double worst = 0.0;
    for (double a : {-2.0, -0.5, 0.0, 0.25, 0.5, 0.9, 1.0, 2.0, 5.0, kInf, -kInf}) {
      for (Dir d : {Dir::PQ, Dir::QP}) {
        worst = std::max(worst, std::abs(renyi(B, order_of(a), d).value));
      }
    }
    c.check("n=" + std::to_string(n) + " max |D_alpha|", worst, 1e-9);
    const double target = n * unit_ball_volume(n);
    double worst_p = 0.0;
    for (double p : {-5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0, kInf, -kInf}) {
      worst_p = std::max(worst_p, rel(as_p(B, p_of(p, n)).value, target));
    }
    c.check("n=" + std::to_string(n) + " max rel |as_p - n|B||", worst_p, n == 2 ? 1e-9 : 1e-6);
  }
}

void lr_oracle(Checker& c) {
  const ConvexBody K = lr3();
  double worst = 0.0;
  for (double a : {-0.5, 0.25, 0.5, 0.9, 1.5}) {
    for (Dir d : {Dir::PQ, Dir::QP}) {
      const double q = renyi(K, Order::finite(a), d).value;
      const double o = lr_renyi_closed_form(2, 3.0, a, d).value;
      worst = std::max(worst, rel(q, o));
    }
  }
  c.check("max rel |quadrature - closed form|", worst, 1e-6);
  using Regime = LrOracleResult::Regime;
  const LrThresholds th = lr_thresholds(3.0);
  const auto qp = lr_renyi_closed_form(2, 3.0, 2.0, Dir::QP);
  const double qp_q = renyi(K, Order::finite(2.0), Dir::QP).value;
  c.expect("QP alpha=2", qp.regime == Regime::plus_inf && qp_q == kInf && th.qp_plus_inf == 2.0,
           "oracle threshold " + show(th.qp_plus_inf) + ", quadrature " + show(qp_q));
  const auto pq = lr_renyi_closed_form(2, 3.0, -1.0, Dir::PQ);
  const double pq_q = renyi(K, Order::finite(-1.0), Dir::PQ).value;
  c.expect("PQ alpha=-1", pq.regime == Regime::minus_inf && pq_q == -kInf && th.pq_minus_inf == -1.0,
           "oracle threshold " + show(th.pq_minus_inf) + ", quadrature " + show(pq_q));
  c.info("thresholds: PQ +inf " + show(th.pq_plus_inf) + ", PQ -inf " + show(th.pq_minus_inf) +
         ", QP +inf " + show(th.qp_plus_inf) + ", QP -inf " + show(th.qp_minus_inf));
}

void p_affine_renyi(Checker& c) {
  for (auto [name, K] : {std::pair{"ellipse", ellipse()}, {"lr_ball r=3", lr3()}}) {
    double worst = 0.0;
    for (double p : {-5.0, -1.0, 0.5, 1.0, 2.0, 10.0}) {
      worst = std::max(worst, rel(as_p_via_renyi(K, p), as_p(K, p)));
    }
    c.check(std::string(name) + " max rel |sphere - boundary route|", worst, 1e-7);
  }
}

void duality(Checker& c) {
  for (auto [name, K] : {std::pair{"ellipse", ellipse()}, {"lr_ball r=3", lr3()}}) {
    double worst = 0.0;
    for (double p : {1.0, 2.0, 4.0}) worst = std::max(worst, duality_residual(K, p));
    c.check(std::string(name) + " max rel |as_p(K) - as_{n^2/p}(K°)|", worst, 1e-6);
  }
}

void affine_invariance(Checker& c, std::uint64_t seed) {
  const auto maps = random_maps(20, seed);
  for (auto [name, K] : {std::pair{"disk", disk()}, {"lr_ball r=3", lr3()}}) {
    double worst_as = 0.0;
    double worst_d = 0.0;
    std::vector<double> base;
    for (double a : {0.25, 0.5, 2.0}) {
      for (Dir d : {Dir::PQ, Dir::QP}) base.push_back(renyi(K, Order::finite(a), d).value);
    }
    for (const Mat& T : maps) {
      for (double p : {1.0, 2.0}) worst_as = std::max(worst_as, affine_invariance_residual(K, T, p));
      const ConvexBody TK = K.linear_image(T);
      std::size_t i = 0;
      for (double a : {0.25, 0.5, 2.0}) {
        for (Dir d : {Dir::PQ, Dir::QP}) {
          worst_d = std::max(worst_d, std::abs(renyi(TK, Order::finite(a), d).value - base[i++]));
        }
      }
    }
    c.check(std::string(name) + " as_p scaling law", worst_as, 1e-6);
    c.check(std::string(name) + " D_alpha invariance", worst_d, 1e-7);
  }
}

void skew_duality(Checker& c) {
  for (auto [name, K] : {std::pair{"ellipse", ellipse()}, {"lr_ball r=3", lr3()}}) {
    double worst = 0.0;
    for (double a : {-1.0, 0.25, 0.6, 2.0}) worst = std::max(worst, skew_residual(K, a));
    c.check(std::string(name) + " skew residual", worst, 1e-10);
  }
}

void mixed_reductions(Checker& c) {
  double worst = 0.0;
  double worst_dual = 0.0;
  for (const ConvexBody& K : {disk(), ellipse(), lr3()}) {
    for (double p : {0.5, 1.0, 2.0}) worst = std::max(worst, rel(mixed_as_p({K, K}, p), as_p(K, p)));
    worst_dual = std::max(worst_dual, rel(dual_mixed_volume({K, K}), polar_volume(K)));
  }
  c.check("mixed_as_p(K,K) vs as_p(K)", worst, 1e-10);
  c.check("dual_mixed_volume(K,K) vs |K°|", worst_dual, 1e-8);
  double worst_id = 0.0;
  for (double a : {0.25, 0.5, 2.0}) {
    worst_id = std::max(worst_id, mixed_identity_residual({disk(), ellipse()}, a));
  }
  c.check("mixed identity on (disk, ellipse)", worst_id, 1e-7);
}

void surface_limit(Checker& c) {
  const auto grid = default_s_grid();
  const auto d = limit_quotient(disk(), weight_constant(1.0), grid);
  c.check("disk c2*L vs 2pi", rel(d.scaled_limit, 2.0 * kPi), 0.01);
  const auto e = limit_quotient(ellipse(), weight_constant(1.0), grid);
  c.check("ellipse c2*L vs 2pi", rel(e.scaled_limit, 2.0 * kPi), 0.02);
  const auto d2 = limit_quotient(disk(), weight_constant(2.0), grid);
  c.check("f-scaling (f = 2)", rel(d2.scaled_limit, d.scaled_limit / 4.0), 0.01);
  c.info("disk " + fmt(d.scaled_limit) + ", ellipse " + fmt(e.scaled_limit) + ", disk f=2 " +
         fmt(d2.scaled_limit));
}

void corollary_asp(Checker& c) {
  const ConvexBody K = ellipse();
  const double n = 2.0;
  const double vol = volume(K);
  const double pvol = polar_volume(K);
  for (double p : {0.0, 1.0, 2.0}) {
    const auto r = limit_quotient(K, weight_f_p(K, p), default_s_grid());
    const double lhs =
        r.scaled_limit / (n * std::pow(vol, n / (n + p)) * std::pow(pvol, p / (n + p)));
    const double a = n / (n + p);
    const double D = renyi(K, a == 1.0 ? Order::kl() : Order::finite(a), Dir::QP).value;
    const double rhs = std::exp(-(p / (n + p)) * D);
    c.check("p=" + fmt(p) + " normalized limit vs exp", rel(lhs, rhs), 0.02);
  }
}

void corollary_dkl(Checker& c) {
  const ConvexBody K = ellipse();
  const auto rr = rolling_radii(K);
  const double shift = 2.0 * 2.0 * std::log(rr.R_outer / rr.r_inner);
  for (auto [v, d] : {std::pair{KlVariant::QP, Dir::QP}, {KlVariant::PQ_corrected, Dir::PQ}}) {
    const auto r = limit_quotient(K, weight_f_kl(K, v), default_s_grid());
    const double recovered = r.scaled_limit - shift;
    const double direct = renyi(K, Order::kl(), d).value;
    // the ellipse has P = Q, so D_KL = 0; the error is measured on the scale of
    // the limit itself
    const double scale = std::max(std::abs(direct), std::abs(r.scaled_limit));
    c.check(to_string(v) + " |recovered - direct| / c2*L", std::abs(recovered - direct) / scale,
            0.02);
    c.info(to_string(v) + ": recovered " + fmt(recovered) + ", direct " + fmt(direct));
  }
  const auto printed = limit_quotient(K, weight_f_kl(K, KlVariant::PQ_as_printed), default_s_grid());
  c.info("PQ_as_printed: recovered " + fmt(printed.scaled_limit - shift) + " (residual vs direct " +
         fmt(printed.scaled_limit - shift - renyi(K, Order::kl(), Dir::PQ).value) + ")");
}

void polytope_rules(Checker& c) {
  const ConvexBody K = square();
  const double a1 = as_p(K, 1.0);
  const double a0 = as_p(K, 0.0);
  c.expect("as_1 = 0", a1 == 0.0, show(a1));
  c.expect("as_0 = 8", a0 == 8.0, show(a0));
  for (double a : {-1.0, 0.5, 2.0}) {
    const double v = renyi(K, Order::finite(a), Dir::QP).value;
    c.expect("D_" + fmt(a) + "(Q||P) = +inf", v == kInf, show(v));
  }
  const double kl = renyi(K, Order::kl(), Dir::PQ).value;
  c.expect("D_1(P||Q) = 0", kl == 0.0, show(kl));
  for (double a : {-1.0, 2.0}) {
    const double v = renyi(K, Order::finite(a), Dir::PQ).value;
    c.expect("D_" + fmt(a) + "(P||Q) = -inf", v == -kInf, show(v));
  }
  const double h = renyi(K, Order::finite(0.5), Dir::PQ).value;
  c.expect("D_0.5(P||Q) = +inf", h == kInf, show(h));
}

void omega_diagnostics(Checker& c, std::uint64_t seed) {
  c.check("|Omega_disk - 1|", std::abs(omega(disk()) - 1.0), 1e-9);
  double worst = 0.0;
  for (const ConvexBody& K : {ellipse(), lr3()}) {
    const double base = omega(K);
    for (const Mat& T : random_maps(5, seed)) {
      const double d = std::abs(T.determinant());
      worst = std::max(worst, rel(omega(K.linear_image(T)), std::pow(d, 4.0) * base));
    }
  }
  c.check("Omega scaling", worst, 1e-6);
  const std::vector<double> ps{10.0, 40.0, 160.0};
  const auto r = omega_limit_diagnostic(ellipse(), ps);
  const bool decreasing = r[1] < r[0] && r[2] < r[1];
  c.expect("ellipse residuals strictly decreasing", decreasing,
           fmt(r[0]) + ", " + fmt(r[1]) + ", " + fmt(r[2]));
  const auto l = omega_limit_diagnostic(lr3(), ps);
  c.info("lr_ball r=3 residuals " + fmt(l[0]) + ", " + fmt(l[1]) + ", " + fmt(l[2]));
}

void cone_measures(Checker& c) {
  c.check("Q_K = cm_K (ellipse, 16 arcs)", check_Q_is_cone_measure(ellipse(), 16), 1e-6);
  c.check("P_K pushforward (ellipse, 16 arcs)", check_P_pushforward(ellipse(), 16), 1e-5);
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"ball degeneracy",
                                "l_r ball Gamma oracle",
                                "p-affine surface area = Renyi identity",
                                "duality",
                                "affine invariance",
                                "skew duality",
                                "mixed reductions",
                                "surface-body limit",
                                "surface-body L_p corollary",
                                "surface-body KL corollary",
                                "polytope classification",
                                "Omega diagnostics",
                                "cone measures"};
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("no criterion " + std::to_string(id));
  return names[id - 1];
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult out;
  out.id = id;
  out.name = criterion_name(id);
  Checker c(out);
  const auto t0 = std::chrono::steady_clock::now();
  double limit = 0.0;
  try {
    switch (id) {
      case 1: ball_degeneracy(c); limit = 10.0; break;
      case 2: lr_oracle(c); limit = 30.0; break;
      case 3: p_affine_renyi(c); limit = 30.0; break;
      case 4: duality(c); break;
      case 5: affine_invariance(c, seed); break;
      case 6: skew_duality(c); break;
      case 7: mixed_reductions(c); break;
      case 8: surface_limit(c); limit = 120.0; break;
      case 9: corollary_asp(c); break;
      case 10: corollary_dkl(c); break;
      case 11: polytope_rules(c); break;
      case 12: omega_diagnostics(c, seed); break;
      case 13: cone_measures(c); break;
    }
  } catch (const Error& e) {
    c.expect("completed", false, e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.finish(limit);
  return out;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") {
    std::vector<int> all;
    for (int i = 1; i <= kCriterionCount; ++i) all.push_back(i);
    return all;
  }
  if (suite == "oracles") return {1, 2, 11};
  if (suite == "identities") return {3, 4, 5, 6, 7, 13};
  if (suite == "surface") return {8, 9, 10};
  if (suite == "omega") return {12};
  try {
    std::size_t used = 0;
    const int id = std::stoi(suite, &used);
    if (used == suite.size() && id >= 1 && id <= kCriterionCount) return {id};
  } catch (const std::exception&) {
  }
  throw InvalidArgument("unknown suite '" + suite + "'");
}

}  // namespace lpaffine
