#pragma once

#include "lpaffine/body.hpp"
#include "lpaffine/quadrature.hpp"

#include <functional>

namespace lpaffine {

/// Boundary point of a planar body in radial direction e, with the local
/// geometry of the radial parametrization ψ ↦ ρ(ψ)e(ψ).
struct BoundarySample {
  Vec x;
  Vec normal;
  double x_dot_n = 0.0;
  double kappa = 0.0;
  double speed = 0.0;  // dμ/dψ
};

/// n = 2, c2plus. e must be a unit vector.
BoundarySample boundary_sample(const ConvexBody& K, const Vec& e);

using BoundaryIntegrand = std::function<double(const BoundarySample&)>;

/// ∫_{∂K} g dμ through the radial parametrization; tanh-sinh splits at the
/// gauge's singular directions.
IntegralResult integrate_boundary(const ConvexBody& K, const BoundaryIntegrand& g,
                                  double tol = 1e-12);
/// Same over the boundary arc with radial angles in [psi0, psi1].
IntegralResult integrate_boundary_arc(const ConvexBody& K, double psi0, double psi1,
                                      const BoundaryIntegrand& g, double tol = 1e-12);

/// ½∫⟨x,N⟩dμ.
double volume_by_boundary(const ConvexBody& K);
/// ½∫κ⟨x,N⟩^{-2}dμ.
double polar_volume_by_boundary(const ConvexBody& K);

}  // namespace lpaffine
