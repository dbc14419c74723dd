#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/body.hpp"
#include "lpaffine/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lpaffine;
using doctest::Approx;

namespace {

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

Vec random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vec u(n);
  for (int i = 0; i < n; ++i) u(i) = g(rng);
  return u.normalized();
}

}  // namespace

TEST_CASE("ball basics") {
  auto B = ConvexBody::ball(2, 1.0);
  CHECK(curvature_function(B, unit_vector_2d(0.3)) == Approx(1.0));
  CHECK(volume(B) == Approx(std::numbers::pi));
  CHECK(polar_volume(B) == Approx(std::numbers::pi));
  auto B3 = ConvexBody::ball(3, 2.0);
  CHECK(curvature_function(B3, [] { std::mt19937_64 r(1); return random_unit(r, 3); }()) == Approx(4.0));
}

TEST_CASE("ellipse curvature and volumes") {
  auto E = ConvexBody::ellipsoid(diag2(2.0, 1.0));
  for (double t : {0.0, 0.4, 1.3, 2.9, 4.4}) {
    const Vec u = unit_vector_2d(t);
    const double h = E.support(u);
    CHECK(curvature_function(E, u) == Approx(4.0 / (h * h * h)).epsilon(1e-12));
    CHECK(curvature_function_fd(E, t) == Approx(curvature_function(E, u)).epsilon(1e-7));
  }
  CHECK(volume(E) == Approx(2.0 * std::numbers::pi));
  CHECK(volume_by_quadrature(E) == Approx(2.0 * std::numbers::pi).epsilon(1e-10));
  CHECK(polar_volume(E) == Approx(std::numbers::pi / 2.0).epsilon(1e-10));
  auto rr = rolling_radii(E);
  CHECK(rr.r_inner == Approx(0.5).epsilon(1e-8));
  CHECK(rr.R_outer == Approx(4.0).epsilon(1e-8));
}

TEST_CASE("boundary point has outer normal u") {
  auto E = ConvexBody::ellipsoid(diag2(2.0, 1.0));
  const Vec u = unit_vector_2d(0.7);
  const Vec x = boundary_point(E, u);
  CHECK(E.gauge(x) == Approx(1.0));
  CHECK(x.dot(u) == Approx(E.support(u)));
  const Vec g = E.gauge_gradient(x).normalized();
  CHECK((g - u).norm() == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lr ball") {
  auto K = ConvexBody::lr_ball(2, 3.0);
  CHECK(volume(K) == Approx(3.5332775).epsilon(1e-7));
  CHECK(polar_volume(K) == Approx(2.7378536).epsilon(1e-7));
  CHECK(volume_by_quadrature(K) == Approx(volume(K)).epsilon(1e-9));
  CHECK(K.support_singular_directions().size() == 4);
  CHECK(std::isinf(curvature_function(K, v2(1.0, 0.0))));
  CHECK_THROWS_AS(ConvexBody::lr_ball(2, 1.0), InvalidBody);
  CHECK_THROWS_AS(rolling_radii(K), DegenerateBody);
}

TEST_CASE("lr ball volume against hit counting") {
  // independent estimate: fraction of the square [-1,1]^2 inside |x|^3+|y|^3 <= 1
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int N = 400000;
  int hits = 0;
  for (int i = 0; i < N; ++i) {
    const double x = U(rng), y = U(rng);
    if (std::pow(std::abs(x), 3) + std::pow(std::abs(y), 3) <= 1.0) ++hits;
  }
  const double est = 4.0 * hits / N;
  const double se = 4.0 * std::sqrt(est / 4.0 * (1.0 - est / 4.0) / N);
  CHECK(std::abs(est - volume(ConvexBody::lr_ball(2, 3.0))) < 5.0 * se);
}

TEST_CASE("polytope square") {
  std::vector<Vec> sq = {v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1), v2(0.2, 0.1)};
  auto P = ConvexBody::polytope(sq);
  CHECK(P.vertices().size() == 4);
  CHECK(volume(P) == Approx(4.0));
  CHECK(polar_volume(P) == Approx(2.0));
  CHECK(P.support(v2(1, 0)) == Approx(1.0));
  CHECK(P.gauge(v2(0.5, 0.25)) == Approx(0.5));
  CHECK_THROWS_AS(curvature_function(P, v2(1, 0)), UnsupportedSmoothness);
  CHECK_THROWS_AS(ConvexBody::polytope({v2(0, 0), v2(1, 1), v2(2, 2)}), InvalidBody);
}

TEST_CASE("polytope is recentered to its centroid") {
  auto P = ConvexBody::polytope({v2(0, 0), v2(3, 0), v2(0, 3)});
  CHECK(volume(P) == Approx(4.5));
  Vec c = Vec::Zero(2);
  for (const Vec& v : P.vertices()) c += v;
  CHECK(c.norm() == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("polar involution and volumes") {
  std::mt19937_64 rng(11);
  auto K = ConvexBody::lr_ball(2, 3.0);
  auto KK = K.polar().polar();
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_unit(rng, 2);
    CHECK(KK.support(u) == Approx(K.support(u)).epsilon(1e-14));
  }
  CHECK(volume(K.polar()) == Approx(polar_volume(K)));
  auto E = ConvexBody::ellipsoid(diag2(2.0, 1.0));
  CHECK(volume_by_quadrature(E.polar()) == Approx(std::numbers::pi / 2.0).epsilon(1e-10));
}

TEST_CASE("support and gauge are dual") {
  // h_K(u) = max over the boundary of <x, u>; check against sampled boundary
  std::mt19937_64 rng(5);
  auto K = ConvexBody::lr_ball(2, 3.0).linear_image(diag2(1.5, 0.7));
  for (int i = 0; i < 10; ++i) {
    const Vec u = random_unit(rng, 2);
    double best = 0.0;
    for (int j = 0; j < 20000; ++j) {
      const Vec e = unit_vector_2d(2.0 * std::numbers::pi * j / 20000);
      best = std::max(best, e.dot(u) / K.gauge(e));
    }
    CHECK(best == Approx(K.support(u)).epsilon(1e-6));
  }
}

TEST_CASE("linear image volumes and hessian") {
  Mat T(2, 2);
  T << 1.2, 0.3, -0.4, 0.9;
  auto E = ConvexBody::ball(2, 1.0).linear_image(T);
  CHECK(volume(E) == Approx(std::numbers::pi * std::abs(T.determinant())));
  CHECK(volume_by_quadrature(E) == Approx(volume(E)).epsilon(1e-10));
  CHECK(polar_volume(E) == Approx(std::numbers::pi / std::abs(T.determinant())).epsilon(1e-10));
  for (double t : {0.1, 1.7, 3.3}) {
    CHECK(curvature_function(E, unit_vector_2d(t)) ==
          Approx(curvature_function_fd(E, t)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(ConvexBody::ball(2, 1.0).linear_image(Mat::Zero(2, 2)), InvalidArgument);
}

TEST_CASE("hessian matches finite differences in 3d") {
  std::mt19937_64 rng(3);
  Mat A(3, 3);
  A << 1.0, 0.2, 0.0, 0.1, 1.5, 0.3, 0.0, -0.2, 0.8;
  auto K = ConvexBody::ellipsoid(A);
  for (int i = 0; i < 5; ++i) {
    const Vec u = random_unit(rng, 3);
    const Mat H = K.support_hessian(u);
    const double s = 1e-5;
    for (int j = 0; j < 3; ++j) {
      Vec e = Vec::Zero(3);
      e(j) = s;
      const Vec col = (K.support_gradient(u + e) - K.support_gradient(u - e)) / (2.0 * s);
      CHECK((col - H.col(j)).norm() < 1e-7);
    }
  }
  CHECK(volume_by_quadrature(K) == Approx(volume(K)).epsilon(1e-9));
}

TEST_CASE("homogeneity") {
  auto K = ConvexBody::lr_ball(3, 1.7);
  Vec u(3);
  u << 0.3, -0.5, 0.8;
  CHECK(K.support(2.5 * u) == Approx(2.5 * K.support(u)));
  CHECK(K.gauge(2.5 * u) == Approx(2.5 * K.gauge(u)));
}
