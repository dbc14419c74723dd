#include "lpaffine/boundary.hpp"

#include "lpaffine/errors.hpp"

#include <cmath>

namespace lpaffine {

namespace {

void require_planar_smooth(const ConvexBody& K, const char* what) {
  if (K.dim() != 2) throw InvalidArgument(std::string(what) + ": n = 2 only");
  if (!K.is_c2plus()) throw UnsupportedSmoothness(std::string(what) + ": body is a polytope");
}

SphereIntegrand radial(const ConvexBody& K, const BoundaryIntegrand& g) {
  return [&K, g](const Vec& e) {
    const BoundarySample s = boundary_sample(K, e);
    return g(s) * s.speed;
  };
}

}  // namespace

BoundarySample boundary_sample(const ConvexBody& K, const Vec& e) {
  Vec ep(2);
  ep << -e(1), e(0);
  const double g = K.gauge(e);
  const Vec dg = K.gauge_gradient(e);
  const Mat H = K.gauge_hessian(e);
  const double g1 = dg.dot(ep);
  const double g2 = ep.dot(H * ep) - g;
  const double rho = 1.0 / g;
  const double r1 = -g1 / (g * g);
  const double r2 = -g2 / (g * g) + 2.0 * g1 * g1 / (g * g * g);
  BoundarySample s;
  s.x = rho * e;
  s.normal = dg.normalized();
  s.speed = std::hypot(rho, r1);
  s.x_dot_n = rho * rho / s.speed;
  s.kappa = (rho * rho + 2.0 * r1 * r1 - rho * r2) / (s.speed * s.speed * s.speed);
  return s;
}

IntegralResult integrate_boundary(const ConvexBody& K, const BoundaryIntegrand& g, double tol) {
  require_planar_smooth(K, "integrate_boundary");
  return integrate(radial(K, g), RuleFamily::graded(K.gauge_singular_directions()), tol);
}

IntegralResult integrate_boundary_arc(const ConvexBody& K, double psi0, double psi1,
                                      const BoundaryIntegrand& g, double tol) {
  require_planar_smooth(K, "integrate_boundary_arc");
  return integrate(radial(K, g), RuleFamily::graded_arc(psi0, psi1, K.gauge_singular_directions()),
                   tol);
}

double volume_by_boundary(const ConvexBody& K) {
  auto r = integrate_boundary(K, [](const BoundarySample& s) { return 0.5 * s.x_dot_n; });
  if (!r.is_finite()) throw NonConvergence("volume_by_boundary: integral did not converge");
  return r.value;
}

double polar_volume_by_boundary(const ConvexBody& K) {
  auto r = integrate_boundary(
      K, [](const BoundarySample& s) { return 0.5 * s.kappa / (s.x_dot_n * s.x_dot_n); });
  if (!r.is_finite()) throw NonConvergence("polar_volume_by_boundary: integral did not converge");
  return r.value;
}

}  // namespace lpaffine
