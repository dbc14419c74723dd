#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/errors.hpp"
#include "lpaffine/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lpaffine;
using doctest::Approx;
using Regime = LrOracleResult::Regime;

TEST_CASE("r = 2 collapses to zero") {
  for (int n : {2, 3, 7}) {
    for (double a : {-3.0, 0.2, 0.5, 4.0}) {
      CHECK(std::abs(lr_renyi_closed_form(n, 2.0, a, Dir::PQ).value) < 1e-12);
      CHECK(std::abs(lr_renyi_closed_form(n, 2.0, a, Dir::QP).value) < 1e-12);
    }
  }
}

TEST_CASE("thresholds") {
  CHECK(lr_renyi_closed_form(2, 3.0, 2.0, Dir::QP).regime == Regime::plus_inf);
  CHECK(lr_renyi_closed_form(2, 3.0, 1.99, Dir::QP).regime == Regime::finite);
  CHECK(lr_renyi_closed_form(2, 3.0, -1.0, Dir::PQ).regime == Regime::minus_inf);
  CHECK(lr_renyi_closed_form(2, 1.5, 2.0, Dir::PQ).regime == Regime::plus_inf);
  CHECK(lr_renyi_closed_form(2, 1.5, -1.0, Dir::QP).regime == Regime::minus_inf);
  CHECK(lr_thresholds(3.0).qp_plus_inf == Approx(2.0));
  CHECK(std::isnan(lr_thresholds(3.0).pq_plus_inf));
  CHECK_THROWS_AS(lr_renyi_closed_form(2, 3.0, 1.0, Dir::PQ), InvalidArgument);
}

TEST_CASE("closed form diverges toward a threshold") {
  double prev = lr_renyi_closed_form(2, 3.0, 1.5, Dir::QP).value;
  for (int k = 2; k <= 12; ++k) {
    const double v = lr_renyi_closed_form(2, 3.0, 2.0 - std::ldexp(1.0, -k), Dir::QP).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 5.0);
}

TEST_CASE("closed form satisfies the skew identity") {
  for (double r : {1.3, 3.0, 6.0}) {
    for (double a : {0.1, 0.3, 0.6}) {
      const double lhs = lr_renyi_closed_form(3, r, a, Dir::QP).value;
      const double rhs = a / (1.0 - a) * lr_renyi_closed_form(3, r, 1.0 - a, Dir::PQ).value;
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("log space survives large n") {
  const auto v = lr_renyi_closed_form(50, 3.0, 0.5, Dir::PQ);
  CHECK(std::isfinite(v.value));
  CHECK(v.value > 0.0);
}

TEST_CASE("lr volume") {
  CHECK(lr_volume(2, 2.0) == Approx(std::numbers::pi));
  CHECK(lr_volume(3, 2.0) == Approx(4.0 * std::numbers::pi / 3.0));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int N = 1000000;
  int hits = 0;
  for (int i = 0; i < N; ++i) {
    const double x = U(rng), y = U(rng);
    if (std::pow(std::abs(x), 3) + std::pow(std::abs(y), 3) <= 1.0) ++hits;
  }
  const double frac = static_cast<double>(hits) / N;
  const double se = 4.0 * std::sqrt(frac * (1.0 - frac) / N);
  CHECK(std::abs(4.0 * frac - lr_volume(2, 3.0)) < 3.0 * se);
}

TEST_CASE("disk surface body law") {
  CHECK(disk_surface_body_law(1.0, 0.0).area_deficit == 0.0);
  CHECK(disk_surface_body_law(1.0, 0.5).radius == Approx(std::cos(0.25)));
  CHECK(disk_surface_body_law(1.0, 1e-4).area_deficit / 1e-8 == Approx(std::numbers::pi / 4.0).epsilon(1e-6));
  CHECK_THROWS_AS(disk_surface_body_law(1.0, 4.0), InvalidArgument);
}
