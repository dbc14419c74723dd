#include "lpaffine/oracles.hpp"

#include "lpaffine/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lpaffine {

LrThresholds lr_thresholds(double r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  LrThresholds t{nan, nan, nan, nan};
  if (r < 2.0) {
    t.pq_plus_inf = 1.0 / (2.0 - r);
    t.qp_minus_inf = -(r - 1.0) / (2.0 - r);
  } else if (r > 2.0) {
    t.pq_minus_inf = -1.0 / (r - 2.0);
    t.qp_plus_inf = (r - 1.0) / (r - 2.0);
  }
  return t;
}

LrOracleResult lr_renyi_closed_form(int n, double r, double alpha, Dir dir) {
  if (n < 2) throw InvalidArgument("lr_renyi_closed_form: n must be at least 2");
  if (!(r > 1.0) || !std::isfinite(r)) throw InvalidArgument("lr_renyi_closed_form: need 1 < r < inf");
  if (alpha == 1.0) throw InvalidArgument("lr_renyi_closed_form: alpha = 1 has no closed form here");
  const double inf = std::numeric_limits<double>::infinity();
  using R = LrOracleResult::Regime;
  LrOracleResult res{0.0, R::finite, lr_thresholds(r)};
  const auto& t = res.thresholds;
  if (dir == Dir::PQ) {
    if (r < 2.0 && alpha >= t.pq_plus_inf) return {inf, R::plus_inf, t};
    if (r > 2.0 && alpha <= t.pq_minus_inf) return {-inf, R::minus_inf, t};
  } else {
    if (r < 2.0 && alpha <= t.qp_minus_inf) return {-inf, R::minus_inf, t};
    if (r > 2.0 && alpha >= t.qp_plus_inf) return {inf, R::plus_inf, t};
  }
  const double nn = n;
  const double s = 1.0 - 1.0 / r;
  // exponents of the K and K° Gamma ratios; QP swaps α and 1−α
  const double a = dir == Dir::PQ ? alpha : 1.0 - alpha;
  const double x = (1.0 - a) / r + a * s;
  const double log_k = std::lgamma(nn / r) - nn * std::lgamma(1.0 / r);
  const double log_kp = std::lgamma(nn * s) - nn * std::lgamma(s);
  const double log_bracket =
      (1.0 - a) * log_k + a * log_kp + nn * std::lgamma(x) - std::lgamma(nn * x);
  res.value = log_bracket / (alpha - 1.0);
  return res;
}

double lr_volume(int n, double r) {
  if (!(r > 1.0) || !std::isfinite(r)) throw InvalidArgument("lr_volume: need 1 < r < inf");
  return std::exp(n * std::log(2.0) + n * std::lgamma(1.0 + 1.0 / r) - std::lgamma(1.0 + n / r));
}

DiskSurfaceBodyLaw disk_surface_body_law(double rho, double s) {
  if (!(rho > 0.0)) throw InvalidArgument("disk_surface_body_law: rho must be positive");
  if (s < 0.0 || !(s < std::numbers::pi * rho)) {
    throw InvalidArgument("disk_surface_body_law: need 0 <= s < pi rho");
  }
  const double half = s / (2.0 * rho);
  const double sn = std::sin(half);
  return {rho * std::cos(half), std::numbers::pi * rho * rho * sn * sn};
}

}  // namespace lpaffine
