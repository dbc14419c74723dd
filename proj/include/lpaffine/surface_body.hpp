#pragma once

#include "lpaffine/body.hpp"
#include "lpaffine/boundary.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lpaffine {

/// Nonnegative weight on ∂K, evaluated on boundary samples. For polytopes
/// the sample carries the edge normal and κ = 0.
struct BoundaryWeight {
  std::function<double(const BoundarySample&)> f;
  std::string name;
  /// f ≡ +∞ (the weights of Euclidean balls in the KL construction): every
  /// cap has infinite measure, so K_{f,s} = K for all s.
  bool degenerate = false;
};

/// Planar boundary with prefix sums of f·arclength on M panels. Smooth
/// bodies are parametrized by the radial angle ψ ∈ [0, 2π), polytopes by arc
/// length from the first hull vertex.
class WeightedBoundary {
 public:
  static constexpr int kMinSamples = 1 << 10;

  WeightedBoundary(const ConvexBody& K, const BoundaryWeight& f, int samples = 1 << 12);

  const ConvexBody& body() const { return body_; }
  int samples() const { return static_cast<int>(params_.size()) - 1; }
  /// Parameter of each panel endpoint; the last equals period().
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double period() const { return params_.back(); }
  double total() const { return cumulative_.back(); }

  /// ∫ f dμ from parameter 0 to t, for any real t (wraps with the period).
  double cumulative_at(double t) const;
  /// ∫ f dμ between parameters a ≤ b; short arcs are integrated directly
  /// rather than as a difference of prefix sums.
  double measure(double a, double b) const;
  BoundarySample sample_at(double t) const;
  double weight_at(double t) const;

  /// |total − total at twice the panel count|.
  double resolution_check() const;

 private:
  double panel_integral(double a, double b) const;

  ConvexBody body_;
  BoundaryWeight f_;
  std::vector<double> params_;
  std::vector<double> cumulative_;
  std::vector<Vec> vertices_;
  std::vector<double> edge_start_;
};

/// K_{f,s} sampled at equispaced normal directions.
struct SurfaceBodyPolygon {
  double s = 0.0;
  std::vector<double> theta;
  /// Cut depth h_K(u) − h_{K_{f,s}}(u) and its derivative in θ (smooth K).
  std::vector<double> depth;
  std::vector<double> depth_derivative;
  /// Intersection of the halfplanes ⟨x,u_k⟩ ≤ h_K(u_k) − depth_k (and of
  /// K itself for polytopes).
  std::vector<Vec> vertices;
  /// Smooth K: the points of ∂K_{f,s} with normal u_k.
  std::vector<Vec> boundary_points;
  double area = 0.0;
  double deficit = 0.0;
};

/// Polytopes: halfplane directions start at 64 and double until the area
/// changes by less than 1e−6 relative. Smooth bodies: the deficit is a
/// θ-integral of the cut depth, integrated to relative tolerance `tol` with the
/// rule split at the support function's singular directions; the polygon
/// fields are sampled at kPolygonDirections directions.
inline constexpr int kMinDirections = 64;
inline constexpr int kMaxDirections = 1 << 14;
inline constexpr int kPolygonDirections = 64;

SurfaceBodyPolygon surface_body(const WeightedBoundary& wb, double s, double tol = 1e-9);
SurfaceBodyPolygon surface_body(const ConvexBody& K, const BoundaryWeight& f, double s);

/// K^{f,s} sampled along kPolygonDirections equispaced rays; the excess area
/// is integrated over the radial angle to relative tolerance `tol`. Smooth K
/// only.
struct IlluminationPolygon {
  double s = 0.0;
  std::vector<double> psi;
  /// Relative radial excess: the boundary of K^{f,s} is at (1+excess)·ρ_K.
  std::vector<double> excess;
  std::vector<Vec> vertices;
  double area = 0.0;
  double excess_area = 0.0;
};

IlluminationPolygon illumination_surface_body(const WeightedBoundary& wb, double s,
                                              double tol = 1e-9);
IlluminationPolygon illumination_surface_body(const ConvexBody& K, const BoundaryWeight& f,
                                              double s);

struct PowerLawFit {
  double limit = 0.0;
  double coefficient = 0.0;
  double beta = 0.0;
};

/// Least-squares fit of q(s) = L + c·s^β over β ∈ [0.5, 8].
PowerLawFit fit_power_law(const std::vector<double>& s, const std::vector<double>& q);

struct SurfaceBodyResult {
  std::vector<double> s_grid;
  std::vector<double> volumes;
  std::vector<double> quotients;
  PowerLawFit fit;
  /// Extrapolated limit of the quotient.
  double limit = 0.0;
  double c_n = 0.0;
  /// c_n · limit.
  double scaled_limit = 0.0;
  /// ∫ κ^{1/(n−1)} f^{−2/(n−1)} dμ by boundary quadrature.
  double rhs = 0.0;
  bool illumination = false;
  bool ill_conditioned = false;
  std::string warning;
};

/// 2|B^{n−1}|^{2/(n−1)}.
double surface_body_constant(int n);

/// Geometric grid s0, s0·ratio, … with `count` points.
std::vector<double> geometric_grid(double s0, double ratio, int count);
/// 0.1 · 2^{−k}, k = 0..6.
std::vector<double> default_s_grid();

/// `tol` is the relative quadrature tolerance of each deficit; bodies with
/// flat points (l_r balls, r > 2) need a looser value to finish quickly.
SurfaceBodyResult limit_quotient(const ConvexBody& K, const BoundaryWeight& f,
                                 const std::vector<double>& s_grid, bool illumination = false,
                                 double tol = 1e-5);

/// ∫ κ/f² dμ (n = 2).
double surface_body_rhs(const ConvexBody& K, const BoundaryWeight& f);

BoundaryWeight weight_constant(double c);

/// f_p = ⟨x,N⟩^{(n−1)n(p−1)/(2(n+p))} κ^{−(n(p−1)−2p)/(2(n+p))}; p = ±∞ as
/// the limit of the exponents.
BoundaryWeight weight_f_p(const ConvexBody& K, double p);

enum class KlVariant { QP, PQ_as_printed, PQ_corrected };

std::string to_string(KlVariant v);

/// Weights whose surface-body limit is D_KL + 2n·log(R/r), with r, R the
/// extreme radii of curvature. Euclidean balls give a degenerate weight.
BoundaryWeight weight_f_kl(const ConvexBody& K, KlVariant variant);

/// f̃ = [f_p(K_1,N)·f_p(K_2,N)]^{−1/(2(2+p))} with f_p(K_i,u) = h_i^{1−p} f_{K_i}(u),
/// N the normal of the carrier at the sample.
BoundaryWeight weight_mixed(const std::vector<ConvexBody>& bodies, double p);

struct MinimalFunctionCheck {
  /// inf of f over the samples, a lower bound for M_f.
  double min_Mf = 0.0;
  /// ∫ dμ / (min_Mf² r_inner) ≥ the integrability integral.
  double bound = 0.0;
  bool conclusive = false;
};

MinimalFunctionCheck minimal_function_check(const ConvexBody& K, const BoundaryWeight& f,
                                            int sample_count);

}  // namespace lpaffine
