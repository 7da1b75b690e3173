#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/constants.hpp"
#include "nonlocal/errors.hpp"

using namespace nonlocal;

TEST_CASE("gamma_fn matches known values") {
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-15));
  CHECK(gamma_fn(5.0) == 24.0);
  CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("gamma_fn relative error against std::tgamma on [0.05, 30]") {
  double worst = 0.0;
  for (double x = 0.05; x <= 30.0; x += 0.0137) {
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma_fn rejects non-positive arguments") {
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
}

TEST_CASE("FracParams validation") {
  CHECK_THROWS_AS(FracParams(1, 0.0), DomainError);
  CHECK_THROWS_AS(FracParams(1, 1.0), DomainError);
  CHECK_THROWS_AS(FracParams(0, 0.5), DomainError);
  CHECK(FracParams(1, 0.4).satisfies_dimension_bound());
  CHECK_FALSE(FracParams(1, 0.6).satisfies_dimension_bound());
  CHECK(FracParams(2, 0.9).satisfies_dimension_bound());
}

TEST_CASE("surface_measure") {
  CHECK(surface_measure(1) == 2.0);
  CHECK(surface_measure(2) == 6.283185307179586);
  CHECK(surface_measure(3) == doctest::Approx(12.566370614359172).epsilon(1e-15));
  CHECK_THROWS_AS(surface_measure(0), DomainError);
}

TEST_CASE("c_norm and kappa at s = 1/2") {
  CHECK(c_norm(FracParams(1, 0.5)) == 0.3183098861837907);
  CHECK(kappa(FracParams(1, 0.5)) == 3.141592653589793);
}

TEST_CASE("limits as s -> 1") {
  CHECK(c_norm(FracParams(1, 0.999)) < 0.01);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(kappa(FracParams(n, 0.999)) - 1.0) <= 1e-2);
    const double target = 4.0 * n / surface_measure(n);
    double previous = INFINITY;
    for (double s : {0.9, 0.99, 0.999}) {
      const double gap = std::abs(c_norm(FracParams(n, s)) / (1.0 - s) - target);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous <= 1e-2 * target);
  }
}

TEST_CASE("gamma_limit_const") {
  CHECK(gamma_limit_const(1) == 2.0);
  CHECK(gamma_limit_const(2) == doctest::Approx(3.141592653589793).epsilon(1e-15));
  CHECK(gamma_limit_const(3) == doctest::Approx(4.188790204786391).epsilon(1e-15));
  for (int n = 1; n <= 5; ++n) CHECK(gamma_limit_const(n) * n == surface_measure(n));
}

TEST_CASE("gamma(N) equals the sphere average of |e.z|^2") {
  // N = 2: int_0^{2 pi} cos^2 = pi; N = 3: int |z_3|^2 dsigma = 4 pi / 3.
  CHECK(gamma_limit_const(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(gamma_limit_const(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
}

TEST_CASE("kappa c sigma = 4N(1-s)") {
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= 9; ++i) {
      const FracParams p(n, 0.1 * i);
      const double product = kappa(p) * c_norm(p) * surface_measure(n);
      CHECK(product == doctest::Approx(4.0 * n * (1.0 - p.s())).epsilon(1e-12));
    }
  }
}
