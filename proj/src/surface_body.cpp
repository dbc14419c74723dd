#include "lpaffine/surface_body.hpp"

#include "lpaffine/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lpaffine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGaussOrder = 12;

struct GaussTable {
  std::vector<double> x;
  std::vector<double> w;
  GaussTable() { gauss_legendre(kGaussOrder, x, w); }
};

const GaussTable& gauss_table() {
  static const GaussTable table;
  return table;
}

Vec perp(const Vec& v) {
  Vec p(2);
  p << -v(1), v(0);
  return p;
}

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

double shoelace(const std::vector<Vec>& poly) {
  double A = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    A += cross2(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * A;
}

// keeps {x : ⟨x,u⟩ ≤ t}
std::vector<Vec> clip(const std::vector<Vec>& poly, const Vec& u, double t) {
  std::vector<Vec> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % poly.size()];
    const double da = a.dot(u) - t;
    const double db = b.dot(u) - t;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      out.push_back(a + (da / (da - db)) * (b - a));
    }
  }
  return out;
}

std::vector<Vec> intersect_halfplanes(std::vector<Vec> poly, const std::vector<double>& theta,
                                      const std::vector<double>& offset) {
  for (std::size_t k = 0; k < theta.size() && !poly.empty(); ++k) {
    poly = clip(poly, unit_vector_2d(theta[k]), offset[k]);
  }
  return poly;
}

std::vector<Vec> bounding_square(double half) {
  std::vector<Vec> sq(4, Vec(2));
  sq[0] << -half, -half;
  sq[1] << half, -half;
  sq[2] << half, half;
  sq[3] << -half, half;
  return sq;
}

void require_planar(const ConvexBody& K, const char* what) {
  if (K.dim() != 2) throw InvalidArgument(std::string(what) + ": n = 2 only");
}

double root(const std::function<double(double)>& g, double a, double b, double ga, double gb) {
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(g, a, b, ga, gb,
                                             boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightedBoundary

WeightedBoundary::WeightedBoundary(const ConvexBody& K, const BoundaryWeight& f, int samples)
    : body_(K), f_(f) {
  require_planar(K, "WeightedBoundary");
  if (samples < kMinSamples) throw InvalidArgument("WeightedBoundary: at least 1024 samples");
  if (f.degenerate) throw InvalidWeight("WeightedBoundary: weight is identically infinite");
  if (K.is_c2plus()) {
    for (int j = 0; j < samples; ++j) params_.push_back(2.0 * kPi * j / samples);
    for (const Vec& d : K.gauge_singular_directions()) {
      double a = std::atan2(d(1), d(0));
      if (a < 0.0) a += 2.0 * kPi;
      params_.push_back(a);
    }
    std::sort(params_.begin(), params_.end());
    params_.erase(std::unique(params_.begin(), params_.end(),
                              [](double a, double b) { return b - a < 1e-14; }),
                  params_.end());
    params_.push_back(2.0 * kPi);
  } else {
    vertices_ = K.vertices();
    double P = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      edge_start_.push_back(P);
      P += (vertices_[(i + 1) % vertices_.size()] - vertices_[i]).norm();
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const double a = edge_start_[i];
      const double b = i + 1 < vertices_.size() ? edge_start_[i + 1] : P;
      const int k = std::max(1, static_cast<int>(std::lround(samples * (b - a) / P)));
      for (int j = 0; j < k; ++j) params_.push_back(a + (b - a) * j / k);
    }
    params_.push_back(P);
  }
  cumulative_.assign(params_.size(), 0.0);
  for (std::size_t j = 1; j < params_.size(); ++j) {
    const double c = panel_integral(params_[j - 1], params_[j]);
    if (!std::isfinite(c)) throw InvalidWeight("WeightedBoundary: weight is not integrable");
    cumulative_[j] = cumulative_[j - 1] + c;
  }
  if (!(cumulative_.back() > 0.0)) throw InvalidWeight("WeightedBoundary: weight vanishes");
}

BoundarySample WeightedBoundary::sample_at(double t) const {
  const double P = period();
  double r = t - P * std::floor(t / P);
  if (body_.is_c2plus()) return boundary_sample(body_, unit_vector_2d(r));
  std::size_t i = std::upper_bound(edge_start_.begin(), edge_start_.end(), r) -
                  edge_start_.begin();
  i = i == 0 ? 0 : i - 1;
  const Vec& a = vertices_[i];
  const Vec& b = vertices_[(i + 1) % vertices_.size()];
  const Vec d = (b - a).normalized();
  BoundarySample s;
  s.x = a + (r - edge_start_[i]) * d;
  s.normal = -perp(d);
  s.x_dot_n = a.dot(s.normal);
  s.kappa = 0.0;
  s.speed = 1.0;
  return s;
}

double WeightedBoundary::weight_at(double t) const {
  const double w = f_.f(sample_at(t));
  if (!(w >= 0.0)) throw InvalidWeight("weight is negative or undefined on the boundary");
  return w;
}

double WeightedBoundary::panel_integral(double a, double b) const {
  const auto& g = gauss_table();
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  int zeros = 0;
  for (int i = 0; i < kGaussOrder; ++i) {
    const BoundarySample s = sample_at(c + hw * g.x[i]);
    const double w = f_.f(s);
    if (!(w >= 0.0)) throw InvalidWeight("weight is negative or undefined on the boundary");
    zeros += w == 0.0;
    sum += g.w[i] * w * s.speed;
  }
  // isolated zeros are allowed, a vanishing panel is not
  if (zeros == kGaussOrder && b > a) throw InvalidWeight("weight vanishes on a boundary arc");
  return hw * sum;
}

double WeightedBoundary::cumulative_at(double t) const {
  const double P = period();
  const double k = std::floor(t / P);
  const double r = t - P * k;
  std::size_t j = std::upper_bound(params_.begin(), params_.end(), r) - params_.begin();
  j = std::min(j == 0 ? 0 : j - 1, params_.size() - 2);
  return k * total() + cumulative_[j] + panel_integral(params_[j], r);
}

double WeightedBoundary::measure(double a, double b) const {
  if (b <= a) return 0.0;
  const double P = period();
  const double panel = P / samples();
  if (b - a > 8.0 * panel) return cumulative_at(b) - cumulative_at(a);
  // split at the panel endpoints inside [a, b]
  const double k = std::floor(a / P);
  const double shift = P * k;
  double sum = 0.0;
  double lo = a;
  std::size_t j = std::upper_bound(params_.begin(), params_.end(), a - shift) - params_.begin();
  double base = shift;
  while (lo < b) {
    if (j >= params_.size()) {
      j = 1;
      base += P;
    }
    const double hi = std::min(b, base + params_[j]);
    if (hi > lo) sum += panel_integral(lo, hi);
    lo = hi;
    ++j;
  }
  return sum;
}

double WeightedBoundary::resolution_check() const {
  WeightedBoundary fine(body_, f_, 2 * samples());
  return std::abs(fine.total() - total());
}


// ---------------------------------------------------------------------------
// Surface body

namespace {

struct Cut {
  double depth = 0.0;
  double depth_derivative = 0.0;
};

// Smooth K: the cap {⟨x,u⟩ > h − δ} in radial angles.
std::pair<double, double> cap_endpoints(const ConvexBody& K, const Vec& u, double psi_star,
                                        double t) {
  auto g = [&](double psi) {
    const Vec e = unit_vector_2d(psi);
    return e.dot(u) / K.gauge(e) - t;
  };
  const double g0 = g(psi_star);
  const double b = root(g, psi_star, psi_star + kPi, g0, g(psi_star + kPi));
  const double a = root(g, psi_star - kPi, psi_star, g(psi_star - kPi), g0);
  return {a, b};
}

Cut smooth_cut(const WeightedBoundary& wb, double theta, double s) {
  const ConvexBody& K = wb.body();
  const Vec u = unit_vector_2d(theta);
  const Vec up = perp(u);
  const Vec xs = K.support_gradient(u);
  const double h = u.dot(xs);
  const double psi_star = std::atan2(xs(1), xs(0));
  if (s == 0.0) return {};
  auto F = [&](double delta) {
    const auto [a, b] = cap_endpoints(K, u, psi_star, h - delta);
    return wb.measure(a, b) - s;
  };
  Cut c;
  // local estimate δ ≈ κs²/(8f²) at the point with normal u
  const BoundarySample S = wb.sample_at(psi_star);
  const double w = wb.weight_at(psi_star);
  const double guess = w > 0.0 ? std::min(S.kappa * s * s / (8.0 * w * w), 0.5 * h) : 0.0;
  double lo = 0.0, Flo = -s;
  if (guess > 0.0) {
    const double a = 0.5 * guess;
    const double Fa = F(a);
    if (Fa > 0.0) {
      c.depth = root(F, 0.0, a, -s, Fa);
    } else {
      lo = a;
      Flo = Fa;
      const double b = std::min(2.0 * guess, h);
      const double Fb = F(b);
      if (Fb >= 0.0) c.depth = root(F, a, b, Fa, Fb);
      else {
        lo = b;
        Flo = Fb;
      }
    }
  }
  if (c.depth == 0.0) {
    const double Fh = F(h);
    if (!(Fh > 0.0)) {
      throw DegenerateBody("surface_body: s exceeds the measure of a half boundary");
    }
    c.depth = root(F, lo, h, Flo, Fh);
  }
  // implicit differentiation of the cap measure in θ
  const double t = h - c.depth;
  const auto [a, b] = cap_endpoints(K, u, psi_star, t);
  const BoundarySample Sa = wb.sample_at(a);
  const BoundarySample Sb = wb.sample_at(b);
  const double fa = wb.weight_at(a);
  const double fb = wb.weight_at(b);
  const double Aa = Sa.x.dot(up);
  const double Ab = Sb.x.dot(up);
  const double ca = perp(Sa.normal).dot(u);
  const double cb = perp(Sb.normal).dot(u);
  const double tp = (fb * Ab * ca - fa * Aa * cb) / (fb * ca - fa * cb);
  c.depth_derivative = xs.dot(up) - tp;
  return c;
}

// Polytope: bisection for sup{δ : cap measure ≤ s}, the measure jumps at
// directions normal to an edge.
double polytope_cut(const WeightedBoundary& wb, const std::vector<Vec>& v,
                    const std::vector<double>& start, double theta, double s) {
  const Vec u = unit_vector_2d(theta);
  const std::size_t m = v.size();
  std::size_t top = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (v[i].dot(u) > v[top].dot(u)) top = i;
  }
  const double h = v[top].dot(u);
  auto measure_at = [&](double t) {
    // walk counter-clockwise from the top vertex
    std::size_t j = top;
    double sb = start[top];
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t k = (j + 1) % m;
      const double len = (v[k] - v[j]).norm();
      const double dj = v[j].dot(u) - t;
      const double dk = v[k].dot(u) - t;
      if (dk <= 0.0) {
        sb += len * dj / (dj - dk);
        break;
      }
      sb += len;
      j = k;
    }
    j = top;
    double sa = start[top];
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t k = (j + m - 1) % m;
      const double len = (v[k] - v[j]).norm();
      const double dj = v[j].dot(u) - t;
      const double dk = v[k].dot(u) - t;
      if (dk <= 0.0) {
        sa -= len * dj / (dj - dk);
        break;
      }
      sa -= len;
      j = k;
    }
    return wb.measure(sa, sb);
  };
  if (!(measure_at(0.0) > s)) {
    throw DegenerateBody("surface_body: s exceeds the measure of a half boundary");
  }
  double lo = 0.0;
  double hi = h;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * h; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (measure_at(h - mid) <= s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void check_s(const WeightedBoundary& wb, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("surface_body: s must be ≥ 0");
  if (s >= 0.5 * wb.total()) {
    throw DegenerateBody("surface_body: s must be below half the total f-measure");
  }
}

SurfaceBodyPolygon smooth_surface_body(const WeightedBoundary& wb, double s, double tol) {
  const ConvexBody& K = wb.body();
  SurfaceBodyPolygon out;
  out.s = s;
  if (s > 0.0) {
    // |K| − |K_{f,s}| = ∫ (hδ − h'δ') − ½(δ² − δ'²) dθ
    auto integrand = [&](const Vec& u) {
      const Cut c = smooth_cut(wb, std::atan2(u(1), u(0)), s);
      const Vec xs = K.support_gradient(u);
      const double h = xs.dot(u);
      const double hp = xs.dot(perp(u));
      return h * c.depth - hp * c.depth_derivative -
             0.5 * (c.depth * c.depth - c.depth_derivative * c.depth_derivative);
    };
    const IntegralResult r =
        integrate(integrand, RuleFamily::for_dimension(2, K.support_singular_directions()), tol);
    if (!r.is_finite()) throw NonConvergence("surface_body: deficit integral did not converge");
    out.deficit = r.value;
  }
  out.area = volume(K) - out.deficit;
  double reach = 0.0;
  std::vector<double> offset;
  for (int k = 0; k < kPolygonDirections; ++k) {
    const double th = 2.0 * kPi * k / kPolygonDirections;
    const Vec u = unit_vector_2d(th);
    const Cut c = smooth_cut(wb, th, s);
    const Vec xs = K.support_gradient(u);
    out.theta.push_back(th);
    out.depth.push_back(c.depth);
    out.depth_derivative.push_back(c.depth_derivative);
    offset.push_back(xs.dot(u) - c.depth);
    reach = std::max(reach, xs.norm());
    out.boundary_points.push_back(offset.back() * u +
                                  (xs.dot(perp(u)) - c.depth_derivative) * perp(u));
  }
  out.vertices = intersect_halfplanes(bounding_square(2.0 * reach), out.theta, offset);
  return out;
}

SurfaceBodyPolygon polytope_surface_body(const WeightedBoundary& wb, double s) {
  const ConvexBody& K = wb.body();
  const std::vector<Vec> v = K.vertices();
  std::vector<double> start;
  double P = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    start.push_back(P);
    P += (v[(i + 1) % v.size()] - v[i]).norm();
  }
  SurfaceBodyPolygon out;
  out.s = s;
  double prev = kInf;
  std::vector<double> depth;
  for (int M = kMinDirections; M <= kMaxDirections; M *= 2) {
    std::vector<double> th(M), d(M), offset(M);
    for (int k = 0; k < M; ++k) {
      th[k] = 2.0 * kPi * k / M;
      if (k % 2 == 0 && M > kMinDirections) {
        d[k] = depth[k / 2];
      } else {
        d[k] = s == 0.0 ? 0.0 : polytope_cut(wb, v, start, th[k], s);
      }
      offset[k] = K.support(unit_vector_2d(th[k])) - d[k];
    }
    depth = d;
    out.theta = th;
    out.depth = d;
    out.depth_derivative.assign(M, 0.0);
    out.vertices = intersect_halfplanes(v, th, offset);
    out.area = shoelace(out.vertices);
    // halfplane refinement converges from above at O(M^-2)
    const bool done = std::abs(out.area - prev) <= 1e-6 * out.area;
    prev = out.area;
    if (done || s == 0.0) break;
    if (2 * M > kMaxDirections) {
      throw NonConvergence("surface_body: direction refinement did not converge");
    }
  }
  out.deficit = volume(K) - out.area;
  return out;
}

}  // namespace

SurfaceBodyPolygon surface_body(const WeightedBoundary& wb, double s, double tol) {
  check_s(wb, s);
  if (wb.body().is_c2plus()) return smooth_surface_body(wb, s, tol);
  return polytope_surface_body(wb, s);
}

SurfaceBodyPolygon surface_body(const ConvexBody& K, const BoundaryWeight& f, double s) {
  require_planar(K, "surface_body");
  if (f.degenerate) {
    SurfaceBodyPolygon out;
    out.s = s;
    out.area = volume(K);
    return out;
  }
  return surface_body(WeightedBoundary(K, f), s);
}

// ---------------------------------------------------------------------------
// Illumination surface body

namespace {

// f-measure of the boundary arc visible from (1+ε)ρ(ψ)e(ψ).
double illuminated_measure(const WeightedBoundary& wb, double psi, double eps) {
  const ConvexBody& K = wb.body();
  const Vec e = unit_vector_2d(psi);
  const Vec x = (1.0 + eps) / K.gauge(e) * e;
  auto phi = [&](double t) {
    const BoundarySample S = boundary_sample(K, unit_vector_2d(t));
    return (x - S.x).dot(S.normal);
  };
  const double p0 = phi(psi);
  const double b = root(phi, psi, psi + kPi, p0, phi(psi + kPi));
  const double a = root(phi, psi - kPi, psi, phi(psi - kPi), p0);
  return wb.measure(a, b);
}

double illumination_excess(const WeightedBoundary& wb, double psi, double s) {
  if (s == 0.0) return 0.0;
  auto G = [&](double eps) { return illuminated_measure(wb, psi, eps) - s; };
  // tangent-parabola estimate ε ≈ κs²/(8f²⟨x,N⟩)
  const BoundarySample S = wb.sample_at(psi);
  const double w = wb.weight_at(psi);
  const double guess = w > 0.0 ? S.kappa * s * s / (8.0 * w * w * S.x_dot_n) : 0.0;
  double lo = 0.0;
  double hi = guess > 0.0 ? 0.5 * guess : s * s;
  double Ghi = G(hi);
  if (Ghi > 0.0) return root(G, 0.0, hi, -s, Ghi);
  lo = hi;
  const double Glo = Ghi;
  hi = guess > 0.0 ? 2.0 * guess : 4.0 * hi;
  Ghi = G(hi);
  if (Ghi >= 0.0) return root(G, lo, hi, Glo, Ghi);
  while (!(Ghi > 0.0)) {
    lo = hi;
    hi *= 4.0;
    if (hi > 1e8) throw DegenerateBody("illumination_surface_body: s too large");
    Ghi = G(hi);
  }
  return root(G, lo, hi, lo == 0.0 ? -s : G(lo), Ghi);
}

}  // namespace

IlluminationPolygon illumination_surface_body(const WeightedBoundary& wb, double s, double tol) {
  const ConvexBody& K = wb.body();
  if (!K.is_c2plus()) {
    throw UnsupportedSmoothness("illumination_surface_body: body is a polytope");
  }
  check_s(wb, s);
  IlluminationPolygon out;
  out.s = s;
  if (s > 0.0) {
    auto integrand = [&](const Vec& e) {
      const double ex = illumination_excess(wb, std::atan2(e(1), e(0)), s);
      const double rho = 1.0 / K.gauge(e);
      return 0.5 * ex * (2.0 + ex) * rho * rho;
    };
    const IntegralResult r =
        integrate(integrand, RuleFamily::for_dimension(2, K.gauge_singular_directions()), tol);
    if (!r.is_finite()) {
      throw NonConvergence("illumination_surface_body: excess integral did not converge");
    }
    out.excess_area = r.value;
  }
  out.area = volume(K) + out.excess_area;
  for (int k = 0; k < kPolygonDirections; ++k) {
    const double psi = 2.0 * kPi * k / kPolygonDirections;
    const Vec e = unit_vector_2d(psi);
    out.psi.push_back(psi);
    out.excess.push_back(illumination_excess(wb, psi, s));
    out.vertices.push_back((1.0 + out.excess.back()) / K.gauge(e) * e);
  }
  return out;
}

IlluminationPolygon illumination_surface_body(const ConvexBody& K, const BoundaryWeight& f,
                                              double s) {
  require_planar(K, "illumination_surface_body");
  if (f.degenerate) {
    IlluminationPolygon out;
    out.s = s;
    out.area = volume(K);
    return out;
  }
  return illumination_surface_body(WeightedBoundary(K, f), s);
}

// ---------------------------------------------------------------------------
// Limit quotient

PowerLawFit fit_power_law(const std::vector<double>& s, const std::vector<double>& q) {
  if (s.size() != q.size() || s.size() < 3) {
    throw InvalidArgument("fit_power_law: need at least three points");
  }
  const double n = static_cast<double>(s.size());
  auto solve = [&](double beta) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = std::pow(s[i], beta);
      sx += x;
      sy += q[i];
      sxx += x * x;
      sxy += x * q[i];
    }
    const double det = n * sxx - sx * sx;
    PowerLawFit fit;
    fit.beta = beta;
    fit.coefficient = det > 0.0 ? (n * sxy - sx * sy) / det : 0.0;
    fit.limit = (sy - fit.coefficient * sx) / n;
    return fit;
  };
  auto sse = [&](double beta) {
    const PowerLawFit fit = solve(beta);
    double r = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double d = q[i] - fit.limit - fit.coefficient * std::pow(s[i], beta);
      r += d * d;
    }
    return r;
  };
  const auto best = boost::math::tools::brent_find_minima(sse, 0.5, 8.0, 40);
  return solve(best.first);
}

double surface_body_constant(int n) {
  if (n < 2) throw InvalidArgument("surface_body_constant: n ≥ 2");
  return 2.0 * std::pow(unit_ball_volume(n - 1), 2.0 / (n - 1));
}

std::vector<double> geometric_grid(double s0, double ratio, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(s0 * std::pow(ratio, i));
  return g;
}

std::vector<double> default_s_grid() { return geometric_grid(0.1, 0.5, 7); }

double surface_body_rhs(const ConvexBody& K, const BoundaryWeight& f) {
  if (f.degenerate) return 0.0;
  const auto r = integrate_boundary(K, [&f](const BoundarySample& S) {
    const double w = f.f(S);
    return S.kappa / (w * w);
  });
  if (!r.is_finite()) throw NonConvergence("surface_body_rhs: integral did not converge");
  return r.value;
}

SurfaceBodyResult limit_quotient(const ConvexBody& K, const BoundaryWeight& f,
                                 const std::vector<double>& s_grid, bool illumination,
                                 double tol) {
  require_planar(K, "limit_quotient");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("limit_quotient: body is a polytope");
  if (s_grid.size() < 3) throw InvalidArgument("limit_quotient: need at least three s values");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0)) throw InvalidArgument("limit_quotient: s must be positive");
    if (i > 0 && !(s_grid[i] <= 0.5 * s_grid[i - 1] * (1.0 + 1e-12))) {
      throw InvalidArgument("limit_quotient: s grid must decrease by a ratio ≤ 1/2");
    }
  }
  SurfaceBodyResult out;
  out.s_grid = s_grid;
  out.illumination = illumination;
  out.c_n = surface_body_constant(2);
  const double vol = volume(K);
  if (f.degenerate) {
    out.volumes.assign(s_grid.size(), vol);
    out.quotients.assign(s_grid.size(), 0.0);
    out.warning = "degenerate weight: K_{f,s} = K for every s";
    return out;
  }
  const WeightedBoundary wb(K, f, 1 << 14);
  for (double s : s_grid) {
    double diff;
    if (illumination) {
      diff = illumination_surface_body(wb, s, tol).excess_area;
      out.volumes.push_back(vol + diff);
    } else {
      diff = surface_body(wb, s, tol).deficit;
      out.volumes.push_back(vol - diff);
    }
    out.quotients.push_back(diff / (s * s));
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < out.quotients.size(); ++i) {
    if (!std::isfinite(out.quotients[i])) throw NonConvergence("limit_quotient: quotient not finite");
    up = up && out.quotients[i] >= out.quotients[i - 1];
    down = down && out.quotients[i] <= out.quotients[i - 1];
  }
  if (!up && !down) {
    out.ill_conditioned = true;
    out.warning = "quotients are not monotone in s; extrapolation is ill-conditioned";
  }
  out.fit = fit_power_law(out.s_grid, out.quotients);
  out.limit = out.fit.limit;
  out.scaled_limit = out.c_n * out.limit;
  out.rhs = surface_body_rhs(K, f);
  return out;
}

// ---------------------------------------------------------------------------
// Weights

BoundaryWeight weight_constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidWeight("weight_constant: c must be positive");
  return {[c](const BoundarySample&) { return c; }, "const", false};
}

BoundaryWeight weight_f_p(const ConvexBody& K, double p) {
  require_planar(K, "weight_f_p");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("weight_f_p: body is a polytope");
  const double n = 2.0;
  if (p == -n) throw InvalidArgument("weight_f_p: p = -n");
  double a, b;
  if (std::isinf(p)) {
    a = (n - 1.0) * n / 2.0;
    b = (n - 2.0) / 2.0;
  } else {
    a = (n - 1.0) * n * (p - 1.0) / (2.0 * (n + p));
    b = (n * (p - 1.0) - 2.0 * p) / (2.0 * (n + p));
  }
  return {[a, b](const BoundarySample& S) { return std::pow(S.x_dot_n, a) / std::pow(S.kappa, b); },
          "f_p", false};
}

std::string to_string(KlVariant v) {
  switch (v) {
    case KlVariant::QP: return "QP";
    case KlVariant::PQ_as_printed: return "PQ_as_printed";
    case KlVariant::PQ_corrected: return "PQ_corrected";
  }
  return "?";
}

BoundaryWeight weight_f_kl(const ConvexBody& K, KlVariant variant) {
  require_planar(K, "weight_f_kl");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("weight_f_kl: body is a polytope");
  const RollingRadii rr = rolling_radii(K);
  const double r = rr.r_inner;
  const double R = rr.R_outer;
  if (R - r <= 1e-9 * R) {
    return {[](const BoundarySample&) { return kInf; }, "f_" + to_string(variant), true};
  }
  const double n = 2.0;
  const double vol = volume(K);
  const double pvol = polar_volume(K);
  const double c = std::pow(R / r, 2.0 * n);
  std::function<double(const BoundarySample&)> f;
  switch (variant) {
    case KlVariant::QP:
      f = [=](const BoundarySample& S) {
        const double L = std::log(c * pvol * std::pow(S.x_dot_n, n + 1.0) / (vol * S.kappa));
        return std::pow(n * vol / S.x_dot_n, (n - 1.0) / 2.0) * std::sqrt(S.kappa) *
               std::pow(L, -(n - 1.0) / 2.0);
      };
      break;
    case KlVariant::PQ_as_printed:
    case KlVariant::PQ_corrected: {
      const double e = variant == KlVariant::PQ_corrected ? n * (n - 1.0) / 2.0 : (n - 1.0) / 2.0;
      f = [=](const BoundarySample& S) {
        const double L = std::log(c * vol * S.kappa / (pvol * std::pow(S.x_dot_n, n + 1.0)));
        return std::pow(n * pvol, (n - 1.0) / 2.0) * std::pow(S.x_dot_n, e) /
               std::pow(S.kappa, (n - 2.0) / 2.0) * std::pow(L, -(n - 1.0) / 2.0);
      };
      break;
    }
  }
  return {f, "f_" + to_string(variant), false};
}

BoundaryWeight weight_mixed(const std::vector<ConvexBody>& bodies, double p) {
  const double n = 2.0;
  if (bodies.size() != 2) throw InvalidArgument("weight_mixed: n = 2 bodies required");
  for (const ConvexBody& B : bodies) {
    require_planar(B, "weight_mixed");
    if (!B.is_c2plus()) throw UnsupportedSmoothness("weight_mixed: body is a polytope");
  }
  if (p == -n) throw InvalidArgument("weight_mixed: p = -n");
  const double e = (1.0 - n) / (2.0 * (n + p));
  return {[bodies, p, e](const BoundarySample& S) {
            double prod = 1.0;
            for (const ConvexBody& B : bodies) {
              prod *= std::pow(B.support(S.normal), 1.0 - p) * curvature_function(B, S.normal);
            }
            return std::pow(prod, e);
          },
          "mixed", false};
}

MinimalFunctionCheck minimal_function_check(const ConvexBody& K, const BoundaryWeight& f,
                                            int sample_count) {
  require_planar(K, "minimal_function_check");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("minimal_function_check: body is a polytope");
  if (sample_count < 8) throw InvalidArgument("minimal_function_check: too few samples");
  MinimalFunctionCheck out;
  if (f.degenerate) {
    out.min_Mf = kInf;
    out.conclusive = true;
    return out;
  }
  double m = kInf;
  for (int k = 0; k < sample_count; ++k) {
    m = std::min(m, f.f(boundary_sample(K, unit_vector_2d(2.0 * kPi * k / sample_count))));
  }
  out.min_Mf = m;
  if (!(m > 0.0) || !std::isfinite(m)) return out;
  const double r = rolling_radii(K).r_inner;
  const auto perimeter = integrate_boundary(K, [](const BoundarySample&) { return 1.0; });
  out.bound = perimeter.value / (m * m * r);
  out.conclusive = perimeter.is_finite() && std::isfinite(out.bound);
  return out;
}

}  // namespace lpaffine
