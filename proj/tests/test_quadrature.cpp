#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/errors.hpp"
#include "lpaffine/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace lpaffine;
using doctest::Approx;

namespace {
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
std::vector<Vec> axes() { return {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)}; }
}  // namespace

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == Approx(2.0 * std::numbers::pi));
  CHECK(sphere_area(3) == Approx(4.0 * std::numbers::pi));
  CHECK(circle_rule(64).weight_sum() == Approx(2.0 * std::numbers::pi));
  CHECK(s2_rule(6).weight_sum() == Approx(4.0 * std::numbers::pi).epsilon(1e-13));
  CHECK(mc_rule(5, 2000, 1).weight_sum() == Approx(sphere_area(5)));
  CHECK_THROWS_AS(circle_rule(7), InvalidArgument);
  CHECK_THROWS_AS(mc_rule(4, 10, 1), InvalidArgument);
}

TEST_CASE("trapezoid is exact on trigonometric polynomials") {
  auto g = [](const Vec& u) { return 1.0 + u(0) * u(0) * u(1) * u(1); };
  // ∫ cos²sin² = π/4
  CHECK(apply_rule(g, circle_rule(16)) == Approx(2.0 * std::numbers::pi + std::numbers::pi / 4.0));
}

TEST_CASE("s2 product rule moments") {
  auto z2 = [](const Vec& u) { return u(2) * u(2); };
  auto x4 = [](const Vec& u) { return std::pow(u(0), 4); };
  CHECK(apply_rule(z2, s2_rule(4)) == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-13));
  CHECK(apply_rule(x4, s2_rule(4)) == Approx(4.0 * std::numbers::pi / 5.0).epsilon(1e-13));
}

TEST_CASE("graded rule integrates endpoint singularities") {
  // |sin θ|^{-1/2} over the circle: 4 ∫_0^{π/2} sin^{-1/2} = 4·√π Γ(1/4)/(2Γ(3/4))
  auto g = [](const Vec& u) { return std::pow(std::abs(u(1)), -0.5); };
  const double exact = 2.0 * std::sqrt(std::numbers::pi) * std::tgamma(0.25) / std::tgamma(0.75);
  auto res = integrate(g, RuleFamily::graded(axes()), 1e-12);
  REQUIRE(res.is_finite());
  CHECK(res.value == Approx(exact).epsilon(1e-11));
}

TEST_CASE("graded arc") {
  auto g = [](const Vec& u) { return u(0); };
  auto res = integrate(g, RuleFamily::graded_arc(-0.5, 0.5, axes()));
  CHECK(res.value == Approx(2.0 * std::sin(0.5)).epsilon(1e-12));
}

TEST_CASE("nonintegrable singularity is detected") {
  auto g = [](const Vec& u) { return 1.0 / std::abs(u(1)); };
  auto res = integrate(g, RuleFamily::graded(axes()));
  CHECK(res.classification == Classification::plus_infinity);
  CHECK(local_exponent(g, v2(1, 0), 1) == Approx(-1.0).epsilon(1e-4));
  auto h = [](const Vec& u) { return std::pow(std::abs(u(1)), 0.5); };
  CHECK(local_exponent(h, v2(1, 0), -1) == Approx(0.5).epsilon(1e-4));
}

TEST_CASE("non-finite node gives plus infinity") {
  auto g = [](const Vec& u) { return u(0) > 0.99 ? std::numeric_limits<double>::infinity() : 1.0; };
  CHECK(integrate(g, RuleFamily::trapezoid()).classification == Classification::plus_infinity);
}

TEST_CASE("smooth integrand converges quickly") {
  auto g = [](const Vec& u) { return std::exp(u(0)); };
  auto res = integrate(g, RuleFamily::trapezoid());
  CHECK(res.is_finite());
  CHECK(res.value == Approx(2.0 * std::numbers::pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-13));
  CHECK(res.refinements <= 2);
}

TEST_CASE("monte carlo is reproducible and within its error") {
  auto g = [](const Vec& u) { return u(0) * u(0); };
  auto fam = RuleFamily::for_dimension(4);
  auto a = integrate(g, fam, 1e-2);
  auto b = integrate(g, fam, 1e-2);
  CHECK(a.value == b.value);
  const double exact = sphere_area(4) / 4.0;
  CHECK(std::abs(a.value - exact) < 5.0 * a.err_estimate);
  auto c = integrate(g, RuleFamily::for_dimension(4, {}, 99), 1e-2);
  CHECK(c.value != a.value);
}

TEST_CASE("pairwise sum") {
  std::vector<double> x(1000, 0.1);
  CHECK(pairwise_sum(x) == Approx(100.0).epsilon(1e-14));
}

TEST_CASE("rotate_2d") {
  const Vec e = v2(0.6, 0.8);
  const Vec r = rotate_2d(e, 1e-12);
  CHECK(r.norm() == Approx(1.0));
  CHECK((r - e).norm() == Approx(1e-12).epsilon(1e-6));
}
