#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "bandedge/elliptic.hpp"
#include "test_support.hpp"

using bandedge::complete_K;
using bandedge::jacobi;

TEST_CASE("complete_K degenerate and reference values") {
  CHECK(complete_K(0.0) == Catch::Approx(std::numbers::pi / 2).epsilon(1e-15));

  // AGM fixed-point oracle plus the literature value for m = 1/2.
  CHECK(std::abs(complete_K(0.5) - test_support::agm_oracle_K(0.5)) < 1e-14);
  CHECK(std::abs(complete_K(0.5) - 1.8540746773013719) < 1e-12);
}

TEST_CASE("complete_K is strictly increasing in m") {
  double prev = complete_K(0.0);
  for (double m = 0.05; m < 0.995; m += 0.05) {
    const double k = complete_K(m);
    CHECK(k > prev);
    prev = k;
  }
  CHECK(complete_K(0.9) > complete_K(0.5));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
  CHECK_THROWS_AS(complete_K(1.5), std::domain_error);
  CHECK_THROWS_AS(jacobi(0.5, -1e-9), std::domain_error);
  CHECK_THROWS_AS(jacobi(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(jacobi(std::numeric_limits<double>::infinity(), 0.5), std::domain_error);
  CHECK_THROWS_AS(jacobi(std::numeric_limits<double>::quiet_NaN(), 0.5), std::domain_error);
}

TEST_CASE("origin and circular limit") {
  for (double m : {0.0, 0.3, 0.9}) {
    const auto v = jacobi(0.0, m);
    CHECK(v.sn == 0.0);
    CHECK(v.cn == 1.0);
    CHECK(v.dn == 1.0);
  }
  for (double x : {-2.0, 0.4, 1.7, 11.0}) {
    const auto v = jacobi(x, 0.0);
    CHECK(v.sn == Catch::Approx(std::sin(x)).margin(1e-14));
    CHECK(v.cn == Catch::Approx(std::cos(x)).margin(1e-14));
    CHECK(v.dn == 1.0);
  }
}

TEST_CASE("quarter period values against the ODE oracle") {
  const double K = complete_K(0.5);
  const auto oracle = test_support::jacobi_ode_oracle(K, 0.5);
  CHECK(std::abs(oracle.sn - 1.0) < 1e-10);
  CHECK(std::abs(oracle.cn) < 1e-10);
  CHECK(std::abs(oracle.dn - std::sqrt(0.5)) < 1e-10);

  const auto v = jacobi(K, 0.5);
  CHECK(std::abs(v.sn - 1.0) < 1e-12);
  CHECK(std::abs(v.cn) < 1e-12);
  CHECK(std::abs(v.dn - std::sqrt(0.5)) < 1e-12);
}

TEST_CASE("agreement with the ODE oracle across the parameter range") {
  for (int i = 0; i < 24; ++i) {
    const double x = -3.0 + 6.0 * test_support::halton(i, 2);
    const double m = 0.97 * test_support::halton(i, 3);
    const auto o = test_support::jacobi_ode_oracle(x, m);
    const auto v = jacobi(x, m);
    CAPTURE(x, m);
    CHECK(std::abs(v.sn - o.sn) < 1e-9);
    CHECK(std::abs(v.cn - o.cn) < 1e-9);
    CHECK(std::abs(v.dn - o.dn) < 1e-9);
  }
}

TEST_CASE("algebraic identities on 1000 quasi-random points") {
  for (int i = 0; i < 1000; ++i) {
    const double x = -20.0 + 40.0 * test_support::halton(i, 2);
    const double m = 0.99 * test_support::halton(i, 3);
    const auto v = jacobi(x, m);
    CAPTURE(x, m);
    REQUIRE(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-12);
    REQUIRE(std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0) < 1e-12);
  }
}

TEST_CASE("derivatives by central differences") {
  const double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const double x = -8.0 + 16.0 * test_support::halton(i, 2);
    const double m = 0.95 * test_support::halton(i, 3);
    const auto v = jacobi(x, m);
    const auto vp = jacobi(x + h, m);
    const auto vm = jacobi(x - h, m);
    CAPTURE(x, m);
    REQUIRE(std::abs((vp.sn - vm.sn) / (2 * h) - v.cn * v.dn) < 1e-6);
    REQUIRE(std::abs((vp.cn - vm.cn) / (2 * h) + v.sn * v.dn) < 1e-6);
    REQUIRE(std::abs((vp.dn - vm.dn) / (2 * h) + m * v.sn * v.cn) < 1e-6);
  }
}

TEST_CASE("periodicity and half-period shift") {
  for (double m : {0.1, 0.5, 0.9}) {
    const double K = complete_K(m);
    for (int i = 0; i < 40; ++i) {
      const double x = -5.0 + 10.0 * test_support::halton(i, 2);
      const auto v = jacobi(x, m);
      CAPTURE(x, m);
      REQUIRE(std::abs(jacobi(x + 4.0 * K, m).sn - v.sn) < 1e-10);
      REQUIRE(std::abs(jacobi(x + 2.0 * K, m).dn - v.dn) < 1e-10);
      REQUIRE(std::abs(jacobi(x + K, m).sn - v.cn / v.dn) < 1e-10);
    }
  }
}
