#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpaffine/cone_measure.hpp"
#include "lpaffine/divergence.hpp"
#include "lpaffine/errors.hpp"
#include "lpaffine/oracles.hpp"

#include <cmath>
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
ConvexBody ellipse() { return ConvexBody::ellipsoid(diag2(2.0, 1.0)); }
ConvexBody lr3() { return ConvexBody::lr_ball(2, 3.0); }
ConvexBody square() { return ConvexBody::polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }

std::vector<Order> order_grid() {
  std::vector<Order> g;
  for (double a : {-2.0, -0.5, 0.0, 0.25, 0.5, 0.9, 2.0, 5.0}) g.push_back(Order::finite(a));
  g.push_back(Order::kl());
  g.push_back(Order::plus_inf());
  g.push_back(Order::minus_inf());
  return g;
}

double D(const ConvexBody& K, double a, Dir d) { return renyi(K, Order::finite(a), d).value; }
}  // namespace

TEST_CASE("order construction") {
  CHECK_THROWS_AS(Order::finite(1.0), InvalidArgument);
  CHECK(Order::finite(0.5).alpha() == 0.5);
}

TEST_CASE("balls and ellipsoids have zero divergence") {
  Mat A(3, 3);
  A << 1.0, 0.2, 0.0, 0.0, 1.3, 0.1, 0.3, 0.0, 0.7;
  const ConvexBody bodies[] = {ConvexBody::ball(2, 1.0), ConvexBody::ball(2, 3.0), ConvexBody::ball(3, 2.0),
                               ellipse(), ConvexBody::ellipsoid(A)};
  for (const auto& K : bodies) {
    for (const Order& o : order_grid()) {
      for (Dir d : {Dir::PQ, Dir::QP}) {
        CHECK(std::abs(renyi(K, o, d).value) < 1e-9);
      }
    }
  }
  CHECK(std::abs(renyi(ConvexBody::ball(5, 1.0), Order::finite(0.5), Dir::PQ).value) < 1e-9);
}

TEST_CASE("hellinger examples") {
  CHECK(hellinger(ConvexBody::ball(2, 1.0), 0.3).value == Approx(1.0));
  CHECK(hellinger(ellipse(), 0.0).value == Approx(1.0).epsilon(1e-10));
  const double d = lr_renyi_closed_form(2, 3.0, 0.5, Dir::PQ).value;
  CHECK(hellinger(lr3(), 0.5).value == Approx(std::exp(-d / 2.0)).epsilon(1e-9));
}

TEST_CASE("l_r ball against the Gamma closed form") {
  for (double r : {1.5, 3.0, 4.0}) {
    for (double a : {-0.5, 0.25, 0.5, 0.75, 1.2}) {
      for (Dir d : {Dir::PQ, Dir::QP}) {
        const auto oracle = lr_renyi_closed_form(2, r, a, d);
        const auto v = renyi(ConvexBody::lr_ball(2, r), Order::finite(a), d);
        CAPTURE(r);
        CAPTURE(a);
        if (oracle.regime == LrOracleResult::Regime::finite) {
          CHECK(v.value == Approx(oracle.value).epsilon(1e-8));
        } else {
          CHECK(v.value == oracle.value);
          CHECK(v.reason == ExtendedValue::Reason::nonintegrable);
        }
      }
    }
  }
}

TEST_CASE("l_r ball infinite regimes") {
  auto v = renyi(lr3(), Order::finite(2.0), Dir::QP);
  CHECK(v.value == std::numeric_limits<double>::infinity());
  CHECK(v.reason != ExtendedValue::Reason::computed);
  CHECK(renyi(lr3(), Order::finite(3.0), Dir::QP).value == std::numeric_limits<double>::infinity());
  CHECK(renyi(lr3(), Order::finite(-1.0), Dir::PQ).value == -std::numeric_limits<double>::infinity());
  CHECK(renyi(ConvexBody::lr_ball(2, 1.5), Order::finite(2.0), Dir::PQ).value ==
        std::numeric_limits<double>::infinity());
  // f → ∞ at the axes of B_3, so p/q → 0 there but q/p → ∞
  CHECK(renyi(lr3(), Order::plus_inf(), Dir::QP).value == std::numeric_limits<double>::infinity());
  CHECK(std::isfinite(renyi(lr3(), Order::plus_inf(), Dir::PQ).value));
}

TEST_CASE("polytope classifications") {
  const double inf = std::numeric_limits<double>::infinity();
  auto P = square();
  for (const Order& o : order_grid()) CHECK(renyi(P, o, Dir::QP).value == inf);
  CHECK(renyi(P, Order::finite(0.7), Dir::QP).reason == ExtendedValue::Reason::polytope_rule);
  CHECK(renyi(P, Order::kl(), Dir::PQ).value == 0.0);
  CHECK(renyi(P, Order::finite(0.0), Dir::PQ).value == 0.0);
  CHECK(renyi(P, Order::finite(0.5), Dir::PQ).value == inf);
  CHECK(renyi(P, Order::finite(2.0), Dir::PQ).value == -inf);
  CHECK(renyi(P, Order::finite(-0.5), Dir::PQ).value == -inf);
}

TEST_CASE("alpha zero") {
  for (const auto& K : {ellipse(), lr3(), lr3().polar()}) {
    CHECK(std::abs(D(K, 0.0, Dir::PQ)) < 1e-9);
    CHECK(std::abs(D(K, 0.0, Dir::QP)) < 1e-8);
  }
}

TEST_CASE("monotone in alpha") {
  Mat T(2, 2);
  T << 1.0, 0.5, 0.0, 1.0;
  for (const auto& K : {lr3(), ConvexBody::lr_ball(2, 1.5).linear_image(T)}) {
    double prev = -1.0;
    for (int k = 1; k <= 9; ++k) {
      const double v = D(K, 0.1 * k, Dir::PQ);
      CHECK(v >= prev - 1e-10);
      prev = v;
    }
  }
}

TEST_CASE("affine invariance") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto K = lr3();
  for (int trial = 0; trial < 3; ++trial) {
    Mat T(2, 2);
    do {
      T << U(rng), U(rng), U(rng), U(rng);
    } while (std::abs(T.determinant()) < 0.2);
    for (double a : {0.3, 0.5, 1.5}) {
      CHECK(D(K.linear_image(T), a, Dir::PQ) == Approx(D(K, a, Dir::PQ)).epsilon(1e-7));
    }
    // the mapped axis is only representable to ~1e-16 rad, and q log(q/p)
    // carries ~sqrt(1e-16)·log mass next to it
    CHECK(renyi(K.linear_image(T), Order::kl(), Dir::QP).value ==
          Approx(renyi(K, Order::kl(), Dir::QP).value).epsilon(1e-6));
  }
}

TEST_CASE("polar skew duality") {
  for (const auto& K : {lr3(), ConvexBody::lr_ball(2, 1.7)}) {
    for (double a : {0.2, 0.5, 0.8}) {
      const double lhs = (1.0 - a) * D(K.polar(), a, Dir::QP);
      const double rhs = a * D(K, 1.0 - a, Dir::QP);
      CHECK(std::abs(lhs - rhs) < 1e-7);
    }
  }
}

TEST_CASE("skew residual") {
  CHECK(skew_residual(ConvexBody::ball(2, 1.0), 0.3) < 1e-12);
  CHECK(skew_residual(ellipse(), 0.25) < 1e-10);
  CHECK(skew_residual(lr3(), 0.6) < 1e-10);
  // D_2(Q‖P) = +∞ and −2·D_{−1}(P‖Q) = +∞ past the l_3 thresholds
  CHECK(skew_residual(lr3(), 2.0) == 0.0);
}

TEST_CASE("bhattacharyya") {
  CHECK(bhattacharyya(ConvexBody::ball(2, 1.0)) == Approx(1.0));
  CHECK(bhattacharyya(ConvexBody::ball(2, 5.0)) == Approx(1.0));
  CHECK(-2.0 * std::log(bhattacharyya(lr3())) == Approx(D(lr3(), 0.5, Dir::PQ)).epsilon(1e-12));
}

TEST_CASE("KL against the direct definition") {
  // D_KL(P‖Q) is the α → 1 limit of D_α
  auto K = lr3();
  const double kl = renyi(K, Order::kl(), Dir::PQ).value;
  const double near = D(K, 1.0 - 1e-5, Dir::PQ);
  CHECK(kl == Approx(near).epsilon(1e-4));
  CHECK(kl > 0.0);
}

TEST_CASE("boundary route agrees with sphere route") {
  for (const auto& K : {ellipse(), lr3(), lr3().polar()}) {
    for (double a : {0.25, 0.5, 2.0 / 3.0}) {
      for (Dir d : {Dir::PQ, Dir::QP}) {
        const auto s = renyi(K, Order::finite(a), d);
        const auto b = renyi_on_boundary(K, Order::finite(a), d);
        CHECK(b.value == Approx(s.value).epsilon(1e-8));
      }
    }
    CHECK(renyi_on_boundary(K, Order::kl(), Dir::PQ).value ==
          Approx(renyi(K, Order::kl(), Dir::PQ).value).epsilon(1e-8));
  }
}

TEST_CASE("mixed divergence") {
  auto disk = ConvexBody::ball(2, 1.0);
  for (double a : {0.25, 0.5, 2.0}) {
    CHECK(std::abs(mixed_renyi({disk, disk}, Order::finite(a), Dir::PQ).value) < 1e-12);
  }
  auto K = lr3();
  for (double a : {0.3, 1.4}) {
    for (Dir d : {Dir::PQ, Dir::QP}) {
      CHECK(mixed_renyi({K, K}, Order::finite(a), d).value ==
            Approx(renyi(K, Order::finite(a), d).value).epsilon(1e-8));
    }
  }
  CHECK(mixed_renyi({K, K}, Order::kl(), Dir::QP).value ==
        Approx(renyi(K, Order::kl(), Dir::QP).value).epsilon(1e-8));
  CHECK(mixed_renyi({K, K}, Order::kl(), Dir::PQ).value ==
        Approx(renyi(K, Order::kl(), Dir::PQ).value).epsilon(1e-8));
  const double pq = mixed_renyi({disk, ellipse()}, Order::finite(0.5), Dir::PQ).value;
  const double qp = mixed_renyi({disk, ellipse()}, Order::finite(0.5), Dir::QP).value;
  CHECK(std::abs(pq - qp) < 1e-10);
}

TEST_CASE("product factorization residual") {
  auto disk = ConvexBody::ball(2, 1.0);
  CHECK(product_factorization_residual({disk, disk}, 0.5, Dir::PQ) < 1e-12);
  CHECK(product_factorization_residual({lr3(), lr3()}, 0.5, Dir::PQ) < 1e-10);
  const double r = product_factorization_residual({disk, ellipse()}, 0.5, Dir::PQ);
  CHECK(std::isfinite(r));
  CHECK(r > 1e-3);
}
