#pragma once

#include "lpaffine/body.hpp"

#include <functional>

namespace lpaffine {

/// Densities of P_K and Q_K pulled back to the sphere of normals:
/// dP = p_sphere dσ, dQ = q_sphere dσ.
struct DensityPair {
  ConvexBody body;
  std::function<double(const Vec&)> p_sphere;
  std::function<double(const Vec&)> q_sphere;
  double vol = 0.0;
  double polar_vol = 0.0;
};

/// p(u) = 1/(n|K°|h(u)^n), q(u) = h(u)f(u)/(n|K|).
DensityPair density_pair(const ConvexBody& K);

/// Normalized cone measure of the boundary arc whose outer normals have
/// angles in [theta0, theta1], by fan areas of the sampled boundary. n = 2.
double cone_measure_arc(const ConvexBody& K, double theta0, double theta1);

/// max over arcs of |Q_K(arc) − cm_K(arc)|. For polytopes the arcs are the
/// edges and `partitions` is ignored.
double check_Q_is_cone_measure(const ConvexBody& K, int partitions);

/// max over arcs A of |P_K(A) − cm_{K°}(A*)| where A* ⊂ ∂K° is the radial
/// arc over the normal directions of A.
double check_P_pushforward(const ConvexBody& K, int partitions);

}  // namespace lpaffine
