#include "lpaffine/cone_measure.hpp"

#include "lpaffine/boundary.hpp"
#include "lpaffine/errors.hpp"
#include "lpaffine/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lpaffine {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

double normal_angle(const Vec& v) {
  double t = std::atan2(v(1), v(0));
  return t < 0.0 ? t + kTwoPi : t;
}

// fan area of the boundary points with normals θ0 + (θ1−θ0)j/M
double fan_area(const ConvexBody& K, double theta0, double theta1, int M) {
  std::vector<double> parts(M);
  Vec prev = boundary_point(K, unit_vector_2d(theta0));
  for (int j = 1; j <= M; ++j) {
    const Vec x = boundary_point(K, unit_vector_2d(theta0 + (theta1 - theta0) * j / M));
    parts[j - 1] = 0.5 * cross2(prev, x);
    prev = x;
  }
  return pairwise_sum(parts);
}

struct Edge {
  Vec a, b;
  double angle;
};

std::vector<Edge> polygon_edges(const ConvexBody& K) {
  const auto v = K.vertices();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    Vec nrm(2);
    nrm << b(1) - a(1), a(0) - b(0);
    edges.push_back({a, b, normal_angle(nrm)});
  }
  return edges;
}

}  // namespace

DensityPair density_pair(const ConvexBody& K) {
  if (!K.is_c2plus()) {
    throw PolytopeClassification("density_pair: P_K vanishes almost everywhere on a polytope");
  }
  const int n = K.dim();
  const double V = volume(K);
  const double Vp = polar_volume(K);
  DensityPair d{K, nullptr, nullptr, V, Vp};
  d.p_sphere = [K, n, Vp](const Vec& u) { return 1.0 / (n * Vp * std::pow(K.support(u), n)); };
  d.q_sphere = [K, n, V](const Vec& u) {
    return K.support(u) * curvature_function(K, u) / (n * V);
  };
  return d;
}

double cone_measure_arc(const ConvexBody& K, double theta0, double theta1) {
  if (K.dim() != 2) throw InvalidArgument("cone_measure_arc: n = 2 only");
  if (!(theta0 < theta1)) throw InvalidArgument("cone_measure_arc: need theta0 < theta1");
  const double V = volume(K);
  if (!K.is_c2plus()) {
    double area = 0.0;
    for (const Edge& e : polygon_edges(K)) {
      // the normal angle may sit at θ or θ + 2π inside the arc
      for (double t : {e.angle - kTwoPi, e.angle, e.angle + kTwoPi}) {
        if (t >= theta0 && t < theta1) area += 0.5 * cross2(e.a, e.b);
      }
    }
    return area / V;
  }
  // O(M^-2) polygon error removed by one Richardson step
  const int M = 10000;
  const double a1 = fan_area(K, theta0, theta1, M);
  const double a2 = fan_area(K, theta0, theta1, 2 * M);
  return (4.0 * a2 - a1) / 3.0 / V;
}

double check_Q_is_cone_measure(const ConvexBody& K, int partitions) {
  if (K.dim() != 2) throw InvalidArgument("check_Q_is_cone_measure: n = 2 only");
  double worst = 0.0;
  if (!K.is_c2plus()) {
    const double V = volume(K);
    for (const Edge& e : polygon_edges(K)) {
      // Q(edge) = ∫⟨x,N⟩dμ/(2|K|), ⟨x,N⟩ constant along the edge
      const Vec d = e.b - e.a;
      const double len = d.norm();
      Vec N(2);
      N << d(1) / len, -d(0) / len;
      const double q = N.dot(e.a) * len / (2.0 * V);
      const double t = e.angle;
      const double cm = cone_measure_arc(K, t - 1e-9, t + 1e-9);
      worst = std::max(worst, std::abs(q - cm));
    }
    return worst;
  }
  if (partitions < 1) throw InvalidArgument("check_Q_is_cone_measure: partitions must be positive");
  const DensityPair d = density_pair(K);
  const auto bps = K.support_singular_directions();
  for (int k = 0; k < partitions; ++k) {
    const double t0 = kTwoPi * k / partitions;
    const double t1 = kTwoPi * (k + 1) / partitions;
    auto q = integrate(d.q_sphere, RuleFamily::graded_arc(t0, t1, bps));
    if (!q.is_finite()) throw NonConvergence("check_Q_is_cone_measure: Q integral failed");
    worst = std::max(worst, std::abs(q.value - cone_measure_arc(K, t0, t1)));
  }
  return worst;
}

double check_P_pushforward(const ConvexBody& K, int partitions) {
  if (K.dim() != 2) throw InvalidArgument("check_P_pushforward: n = 2 only");
  if (!K.is_c2plus()) throw UnsupportedSmoothness("check_P_pushforward: body is a polytope");
  if (partitions < 1) throw InvalidArgument("check_P_pushforward: partitions must be positive");
  const double Vp = polar_volume(K);
  const ConvexBody Kp = K.polar();
  const auto polar_bps = Kp.gauge_singular_directions();
  double worst = 0.0;
  for (int k = 0; k < partitions; ++k) {
    // arc A of ∂K in radial angles [ψ0, ψ1]
    const double psi0 = kTwoPi * k / partitions;
    const double psi1 = kTwoPi * (k + 1) / partitions;
    auto P = integrate_boundary_arc(K, psi0, psi1, [Vp](const BoundarySample& s) {
      return s.kappa / (2.0 * Vp * s.x_dot_n * s.x_dot_n);
    });
    if (!P.is_finite()) throw NonConvergence("check_P_pushforward: P integral failed");
    // normals of the arc endpoints; the arc of normals runs counter-clockwise
    double th0 = normal_angle(boundary_sample(K, unit_vector_2d(psi0)).normal);
    double th1 = normal_angle(boundary_sample(K, unit_vector_2d(psi1)).normal);
    while (th1 <= th0) th1 += kTwoPi;
    if (k == partitions - 1 && partitions == 1) th1 = th0 + kTwoPi;
    // cone measure of K° over the radial arc in directions [θ0, θ1]:
    // ½∫ρ_{K°}² dθ with ρ_{K°} = 1/gauge_{K°}
    auto cm = integrate(
        [&Kp](const Vec& e) {
          const double g = Kp.gauge(e);
          return 0.5 / (g * g);
        },
        RuleFamily::graded_arc(th0, th1, polar_bps));
    if (!cm.is_finite()) throw NonConvergence("check_P_pushforward: cone measure integral failed");
    worst = std::max(worst, std::abs(P.value - cm.value / Vp));
  }
  return worst;
}

}  // namespace lpaffine
