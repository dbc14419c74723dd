#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/affine_surface.hpp"
#include "lpaffine/errors.hpp"

#include <cmath>
#include <numbers>
#include <limits>
#include <random>

using namespace lpaffine;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInfD = std::numeric_limits<double>::infinity();
Mat diag2(double a, double b) {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
ConvexBody disk() { return ConvexBody::ball(2, 1.0); }
ConvexBody ellipse() { return ConvexBody::ellipsoid(diag2(2.0, 1.0)); }
ConvexBody lr3() { return ConvexBody::lr_ball(2, 3.0); }
// agreement to relative eps, or identical infinities
bool same(double a, double b, double eps) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= eps * std::max(std::abs(a), std::abs(b));
}
ConvexBody square() { return ConvexBody::polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }
}  // namespace

TEST_CASE("p parameter") {
  CHECK_THROWS_AS(PParameter::finite(-2.0, 2), InvalidArgument);
  CHECK_NOTHROW(PParameter::finite(-2.0, 3));
  CHECK_THROWS_AS(as_p(disk(), -2.0), InvalidArgument);
}

TEST_CASE("disk and ball values") {
  for (double p : {-5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0, kInfD, -kInfD}) {
    CHECK(as_p(disk(), p) == Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(as_p(ConvexBody::ball(3, 1.0), p) == Approx(4.0 * kPi).epsilon(1e-6));
  }
  // as_p(ρB) = ρ^{n(n−p)/(n+p)} as_p(B)
  CHECK(as_p(ConvexBody::ball(2, 2.0), 1.0) == Approx(std::pow(2.0, 2.0 / 3.0) * 2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("square") {
  CHECK(as_p(square(), 0.0) == 8.0);
  CHECK(as_p(square(), 1.0) == 0.0);
  CHECK(as_p(square(), -1.0) == kInfD);
  CHECK(as_p(square(), PParameter::at_minus_n_right()).value == kInfD);
  CHECK(as_p(square(), PParameter::at_minus_n_left()).value == 0.0);
  // recentering does not change as_0
  auto shifted = ConvexBody::polytope({v2(4, 4), v2(2, 4), v2(2, 2), v2(4, 2)});
  CHECK(as_p(shifted, 0.0) == 8.0);
}

TEST_CASE("ellipse affine formula") {
  CHECK(as_p(ellipse(), 1.0) == Approx(std::cbrt(2.0) * 2.0 * kPi).epsilon(1e-12));
  for (double p : {-5.0, -1.0, 0.5, 2.0, 10.0}) {
    CHECK(as_p(ellipse(), p) == Approx(std::pow(2.0, (2.0 - p) / (2.0 + p)) * 2.0 * kPi).epsilon(1e-12));
  }
  CHECK(as_p(ellipse(), PParameter::at_minus_n_right()).value == Approx(4.0).epsilon(1e-12));
  CHECK(as_p(ellipse(), PParameter::at_minus_n_left()).value == Approx(0.25).epsilon(1e-12));
}

TEST_CASE("sphere form and boundary Renyi route agree") {
  for (const auto& K : {ellipse(), lr3()}) {
    for (double p : {-5.0, -1.0, 0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(p);
      CHECK(same(as_p_via_renyi(K, p), as_p(K, p), 1e-9));
    }
  }
  CHECK(as_p_via_renyi(disk(), 3.0) == Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("exponential identity in both directions") {
  for (const auto& K : {ellipse(), lr3()}) {
    const double n = 2.0, V = volume(K), Vp = polar_volume(K);
    for (double p : {-5.0, -1.0, 0.5, 1.0, 2.0, 10.0}) {
      const double lhs = as_p(K, p) / (n * std::pow(V, n / (n + p)) * std::pow(Vp, p / (n + p)));
      const double qp = renyi(K, Order::finite(n / (n + p)), Dir::QP).value;
      const double pq = renyi(K, Order::finite(p / (n + p)), Dir::PQ).value;
      CHECK(same(lhs, std::exp(-(p / (n + p)) * qp), 1e-9));
      CHECK(same(lhs, std::exp(-(n / (n + p)) * pq), 1e-9));
    }
  }
}

TEST_CASE("bhattacharyya equals normalized as_n") {
  for (const auto& K : {ellipse(), lr3()}) {
    CHECK(bhattacharyya(K) == Approx(as_p(K, 2.0) / (2.0 * std::sqrt(volume(K) * polar_volume(K)))).epsilon(1e-10));
  }
}

TEST_CASE("mixed affine surface areas") {
  for (const auto& K : {ellipse(), lr3()}) {
    for (double p : {-1.0, 1.0, 2.0}) {
      CHECK(same(mixed_as_p({K, K}, p), as_p(K, p), 1e-10));
    }
    CHECK(dual_mixed_volume({K, K}) == Approx(polar_volume(K)).epsilon(1e-8));
  }
  CHECK(mixed_as_p({disk(), disk()}, 5.0) == Approx(2.0 * kPi));
  CHECK(dual_mixed_volume({disk(), disk()}) == Approx(kPi));
  CHECK(dual_mixed_volume({ConvexBody::ball(2, 2.0), ConvexBody::ball(2, 2.0)}) == Approx(kPi / 4.0));
  CHECK(dual_mixed_volume({disk(), ellipse()}) ==
        Approx(mixed_as_p({disk(), ellipse()}, kInfD) / 2.0).epsilon(1e-10));
  CHECK_THROWS_AS(mixed_as_p({disk(), ellipse()}, -2.0), InvalidArgument);
}

TEST_CASE("mixed as_p is stable under refinement") {
  // an independent fine trapezoid sum of the defining integrand
  auto D = disk();
  auto E = ellipse();
  const int m = 1 << 14;
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    const Vec u = unit_vector_2d(2.0 * kPi * j / m);
    s += std::cbrt(curvature_function(E, u));  // p = 1: [h^0 f_D f_E]^{1/3}
  }
  CHECK(mixed_as_p({D, E}, 1.0) == Approx(s * 2.0 * kPi / m).epsilon(1e-9));
}

TEST_CASE("mixed Renyi identity") {
  for (double a : {0.25, 0.5, 2.0}) {
    CHECK(mixed_identity_residual({disk(), ellipse()}, a) < 1e-7);
    CHECK(mixed_identity_residual({lr3(), ellipse()}, a) < 1e-7);
  }
}

TEST_CASE("parameter maps round trip") {
  for (double a : {-3.0, -0.5, 0.1, 0.5, 0.9, 2.0}) {
    CHECK(alpha_from_p(p_from_alpha(a, 2), 2) == Approx(a).epsilon(1e-15));
  }
  for (double a : {0.1, 0.5, 0.9}) CHECK(p_from_alpha(a, 3) > 0.0);
}

TEST_CASE("omega") {
  CHECK(omega(disk()) == Approx(1.0).epsilon(1e-9));
  CHECK(omega(ConvexBody::ball(2, 2.0)) == Approx(256.0).epsilon(1e-9));
  CHECK(omega(ellipse()) == Approx(16.0).epsilon(1e-9));
  CHECK(a_invariant(disk()) == Approx(1.0).epsilon(1e-9));
  Mat T(2, 2);
  T << 1.3, 0.4, -0.2, 0.8;
  const double d = std::abs(T.determinant());
  CHECK(omega(lr3().linear_image(T)) == Approx(std::pow(d, 4) * omega(lr3())).epsilon(1e-6));
  CHECK(omega(lr3()) < std::pow(volume(lr3()) / polar_volume(lr3()), 2));
}

TEST_CASE("omega limit diagnostic") {
  for (double r : omega_limit_diagnostic(disk(), {10.0, 40.0, 160.0})) CHECK(r < 1e-9);
  const auto res = omega_limit_diagnostic(lr3(), {10.0, 40.0, 160.0});
  CHECK(res[0] > res[1]);
  CHECK(res[1] > res[2]);
}

TEST_CASE("duality") {
  CHECK(duality_residual(disk(), 2.0) < 1e-10);
  CHECK(duality_residual(ellipse(), 1.0) < 1e-6);
  for (double p : {1.0, 2.0, 4.0}) CHECK(duality_residual(lr3(), p) < 1e-6);
}

TEST_CASE("affine invariance of as_p") {
  CHECK(affine_invariance_residual(lr3(), Mat::Identity(2, 2), 1.0) < 1e-14);
  CHECK(affine_invariance_residual(disk(), diag2(2.0, 1.0), 1.0) < 1e-7);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int i = 0; i < 4; ++i) {
    Mat T(2, 2);
    do {
      T << U(rng), U(rng), U(rng), U(rng);
    } while (std::abs(T.determinant()) < 0.2);
    CHECK(affine_invariance_residual(lr3(), T, 2.0) < 1e-6);
  }
}

TEST_CASE("convexity inequality") {
  auto c = convexity_inequality_check(ellipse(), ellipse(), 2.0, 0.3);
  CHECK(c.lhs == Approx(c.rhs).epsilon(1e-10));
  c = convexity_inequality_check(disk(), ellipse(), 2.0, 0.0);
  CHECK(c.lhs == Approx(c.rhs).epsilon(1e-10));
  c = convexity_inequality_check(disk(), ellipse(), 0.0, 0.4);
  CHECK(c.lhs == Approx(c.rhs).epsilon(1e-10));
  // ellipsoids have p_K = q_K, so both brackets agree and each side is n
  c = convexity_inequality_check(disk(), ellipse(), 2.0, 0.5);
  CHECK(c.lhs == Approx(2.0).epsilon(1e-12));
  CHECK(c.rhs == Approx(2.0).epsilon(1e-12));
  for (double p : {1.0, 2.0, 5.0}) {
    c = convexity_inequality_check(lr3(), ellipse(), p, 0.5);
    CHECK(c.holds);
    CHECK(c.lhs - c.rhs > 1e-6);
  }
}
