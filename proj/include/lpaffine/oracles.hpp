#pragma once

#include "lpaffine/divergence.hpp"

namespace lpaffine {

/// Boundaries in α of the finite regime of the l_r-ball divergences. Entries
/// that do not apply to the given r are NaN.
struct LrThresholds {
  double pq_plus_inf;   // 1 < r < 2: PQ = +∞ iff α ≥ 1/(2−r)
  double qp_minus_inf;  // 1 < r < 2: QP = −∞ iff α ≤ −(r−1)/(2−r)
  double pq_minus_inf;  // r > 2:     PQ = −∞ iff α ≤ −1/(r−2)
  double qp_plus_inf;   // r > 2:     QP = +∞ iff α ≥ (r−1)/(r−2)
};

struct LrOracleResult {
  double value;
  enum class Regime { finite, plus_inf, minus_inf } regime;
  LrThresholds thresholds;
};

LrThresholds lr_thresholds(double r);

/// Closed-form D_α(P‖Q) (PQ) or D_α(Q‖P) (QP) of the unit l_r ball in R^n.
LrOracleResult lr_renyi_closed_form(int n, double r, double alpha, Dir dir);

/// 2^n Γ(1+1/r)^n / Γ(1+n/r).
double lr_volume(int n, double r);

struct DiskSurfaceBodyLaw {
  double radius;
  double area_deficit;
};

/// Surface body of the disk of radius ρ for cap arc length s.
DiskSurfaceBodyLaw disk_surface_body_law(double rho, double s);

}  // namespace lpaffine
