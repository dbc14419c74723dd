#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/boundary.hpp"
#include "lpaffine/cone_measure.hpp"
#include "lpaffine/errors.hpp"
#include "lpaffine/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lpaffine;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
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
ConvexBody ellipse() { return ConvexBody::ellipsoid(diag2(2.0, 1.0)); }
}  // namespace

TEST_CASE("disk densities are uniform") {
  for (double rho : {1.0, 2.0}) {
    auto d = density_pair(ConvexBody::ball(2, rho));
    for (double t : {0.0, 1.0, 4.0}) {
      CHECK(d.p_sphere(unit_vector_2d(t)) == Approx(1.0 / (2.0 * kPi)));
      CHECK(d.q_sphere(unit_vector_2d(t)) == Approx(1.0 / (2.0 * kPi)));
    }
  }
}

TEST_CASE("densities are normalized") {
  const ConvexBody bodies[] = {ellipse(), ConvexBody::lr_ball(2, 3.0),
                               ConvexBody::lr_ball(2, 3.0).polar(),
                               ConvexBody::lr_ball(2, 1.6)};
  for (const auto& K : bodies) {
    auto d = density_pair(K);
    auto fam = RuleFamily::for_dimension(2, K.support_singular_directions());
    CHECK(integrate(d.p_sphere, fam).value == Approx(1.0).epsilon(1e-8));
    CHECK(integrate(d.q_sphere, fam).value == Approx(1.0).epsilon(1e-8));
  }
  Mat A(3, 3);
  A << 1.0, 0.3, 0.0, 0.0, 0.8, 0.1, 0.2, 0.0, 1.4;
  auto d3 = density_pair(ConvexBody::ellipsoid(A));
  CHECK(integrate(d3.q_sphere, RuleFamily::s2()).value == Approx(1.0).epsilon(1e-8));
  CHECK(integrate(d3.p_sphere, RuleFamily::s2()).value == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("symmetric bodies have even densities") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
  auto d = density_pair(ConvexBody::lr_ball(2, 3.0).linear_image(diag2(1.3, 0.6)));
  for (int i = 0; i < 50; ++i) {
    const Vec u = unit_vector_2d(U(rng));
    CHECK(d.p_sphere(u) == Approx(d.p_sphere(-u)).epsilon(1e-13));
    CHECK(d.q_sphere(u) == Approx(d.q_sphere(-u)).epsilon(1e-13));
  }
}

TEST_CASE("polytope densities are rejected") {
  auto sq = ConvexBody::polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)});
  CHECK_THROWS_AS(density_pair(sq), PolytopeClassification);
  CHECK_THROWS_AS(check_P_pushforward(sq, 4), UnsupportedSmoothness);
}

TEST_CASE("cone measure arcs") {
  auto D = ConvexBody::ball(2, 1.0);
  CHECK(cone_measure_arc(D, 0.0, kPi / 2.0) == Approx(0.25).epsilon(1e-12));
  CHECK(cone_measure_arc(D, 0.0, 2.0 * kPi) == Approx(1.0).epsilon(1e-12));
  auto E = ellipse();
  auto d = density_pair(E);
  auto q = integrate(d.q_sphere, RuleFamily::graded_arc(0.0, kPi / 2.0, {}));
  CHECK(std::abs(cone_measure_arc(E, 0.0, kPi / 2.0) - q.value) < 1e-6);
  CHECK(cone_measure_arc(E, 0.0, kPi / 2.0) == Approx(0.25).epsilon(1e-9));
}

TEST_CASE("Q is the cone measure") {
  CHECK(check_Q_is_cone_measure(ConvexBody::ball(2, 1.0), 8) < 1e-12);
  CHECK(check_Q_is_cone_measure(ellipse(), 16) < 1e-6);
  CHECK(check_Q_is_cone_measure(ConvexBody::lr_ball(2, 3.0), 8) < 1e-6);
  auto sq = ConvexBody::polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)});
  CHECK(check_Q_is_cone_measure(sq, 4) < 1e-9);
  auto tri = ConvexBody::polytope({v2(0, 0), v2(3, 0), v2(1, 2)});
  CHECK(check_Q_is_cone_measure(tri, 3) < 1e-9);
}

TEST_CASE("P is the pushed-forward polar cone measure") {
  CHECK(check_P_pushforward(ConvexBody::ball(2, 1.0), 8) < 1e-12);
  CHECK(check_P_pushforward(ConvexBody::ball(2, 2.0), 8) < 1e-10);
  CHECK(check_P_pushforward(ellipse(), 8) < 1e-5);
  Mat T(2, 2);
  T << 1.0, 0.4, 0.0, 0.7;
  CHECK(check_P_pushforward(ConvexBody::lr_ball(2, 3.0).linear_image(T), 6) < 1e-5);
}

TEST_CASE("boundary route volumes") {
  for (const auto& K : {ellipse(), ConvexBody::lr_ball(2, 3.0), ConvexBody::lr_ball(2, 3.0).polar()}) {
    CHECK(volume_by_boundary(K) == Approx(volume(K)).epsilon(1e-10));
    CHECK(polar_volume_by_boundary(K) == Approx(polar_volume(K)).epsilon(1e-10));
  }
}
