#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lpaffine {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Unit vector of R^n. Stored unnormalized only inside evaluators; every
/// public entry point that takes a direction expects |u| = 1.
using Direction = Vec;

enum class BodyKind { ball, ellipsoid, lr_ball, polytope, polar, linear_image };
enum class Smoothness { polytope, c2plus };

std::string to_string(BodyKind kind);

namespace detail {
class BodyModel;
}

/// Immutable convex body with the origin in its interior, described by its
/// support function h, gauge ‖·‖_K and (for smooth bodies) their Hessians.
///
/// All evaluators act on the 1-homogeneous extensions, so `support(t·u) =
/// t·support(u)` for t > 0. Derived bodies (polar, linear image) compose the
/// evaluators of the body they wrap; nothing is materialized.
class ConvexBody {
 public:
  static ConvexBody ball(int dim, double radius);
  /// K = A·B^n for an invertible matrix A.
  static ConvexBody ellipsoid(const Mat& A);
  /// Unit ball of l_r^n, 1 < r < ∞.
  static ConvexBody lr_ball(int dim, double r);
  /// Convex hull of the vertices, translated so its centroid is the origin.
  /// Two-dimensional only.
  static ConvexBody polytope(const std::vector<Vec>& vertices);

  ConvexBody polar() const;
  ConvexBody linear_image(const Mat& T) const;

  int dim() const;
  BodyKind kind() const;
  Smoothness smoothness() const;
  bool is_c2plus() const { return smoothness() == Smoothness::c2plus; }

  double support(const Vec& u) const;
  Vec support_gradient(const Vec& u) const;
  Mat support_hessian(const Vec& u) const;

  double gauge(const Vec& x) const;
  Vec gauge_gradient(const Vec& x) const;
  Mat gauge_hessian(const Vec& x) const;

  std::optional<double> volume_closed_form() const;
  std::optional<double> polar_volume_closed_form() const;

  /// Directions (2-D only) where h is not smooth enough for spectral
  /// quadrature, e.g. the coordinate axes of an l_r ball.
  std::vector<Vec> support_singular_directions() const;
  /// Same for the gauge (directions of boundary points, not normals).
  std::vector<Vec> gauge_singular_directions() const;

  /// Hull vertices in counter-clockwise order (polytopes only).
  std::vector<Vec> vertices() const;

  /// Short human-readable description, e.g. "polar(lr_ball(r=3,n=2))".
  std::string describe() const;

 private:
  explicit ConvexBody(std::shared_ptr<const detail::BodyModel> model);
  std::shared_ptr<const detail::BodyModel> model_;
};

struct RollingRadii {
  double r_inner;
  double R_outer;
};

double support(const ConvexBody& K, const Direction& u);
ConvexBody polar(const ConvexBody& K);
ConvexBody linear_image(const Mat& T, const ConvexBody& K);

/// Boundary point with outer normal u (inverse Gauss map). c2plus only.
Vec boundary_point(const ConvexBody& K, const Direction& u);

/// f_K(u), the reciprocal Gauss curvature at the boundary point with normal u.
/// Returns +inf where the boundary is flat to infinite order in curvature.
double curvature_function(const ConvexBody& K, const Direction& u);

/// n = 2 cross-check: h(θ) + h''(θ) by Richardson-extrapolated central
/// differences of the support function along the circle.
double curvature_function_fd(const ConvexBody& K, double theta);

double volume(const ConvexBody& K);
/// (1/n)∫ h f dσ. c2plus only.
double volume_by_quadrature(const ConvexBody& K);
/// |K°| = (1/n)∫ h^{-n} dσ (exact polygon area for polytopes).
double polar_volume(const ConvexBody& K);

/// Extremes of the radius of curvature, n = 2.
RollingRadii rolling_radii(const ConvexBody& K);

/// Volume of the Euclidean unit ball B^n.
double unit_ball_volume(int n);

inline Vec unit_vector_2d(double theta) {
  Vec u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

}  // namespace lpaffine
