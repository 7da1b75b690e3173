#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nonlocal/band_matrix.hpp"
#include "nonlocal/errors.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

SymBandMatrix random_spd(std::size_t n, std::size_t w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SymBandMatrix a(n, w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= std::min(n - 1, i + w); ++j) a.set(i, j, dist(rng));
  }
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, 2.0 * static_cast<double>(w) + 1.0 + dist(rng));
  return a;
}

oracle::Dense to_oracle(const SymBandMatrix& a) {
  oracle::Dense d = oracle::zeros(a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) d[i][j] = a(i, j);
  return d;
}

}  // namespace

TEST_CASE("band storage is symmetric and zero outside the band") {
  SymBandMatrix a(5, 1);
  a.set(2, 1, 3.0);
  CHECK(a(1, 2) == 3.0);
  CHECK(a(2, 1) == 3.0);
  CHECK(a(0, 3) == 0.0);
  CHECK_THROWS(a.set(0, 3, 1.0));
  CHECK(SymBandMatrix(3, 10).halfband() == 2);
}

TEST_CASE("multiply matches the dense product") {
  std::mt19937_64 rng(7);
  for (std::size_t w : {0u, 1u, 3u, 9u}) {
    const SymBandMatrix a = random_spd(23, w, rng);
    const Vector x = oracle::random_vector(rng, 23);
    const Vector y = a.multiply(x);
    for (std::size_t i = 0; i < 23; ++i) {
      double ref = 0.0;
      for (std::size_t j = 0; j < 23; ++j) ref += a(i, j) * x[j];
      CHECK(y[i] == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK(a.quadratic_form(x) == doctest::Approx(a.bilinear_form(x, x)).epsilon(1e-13));
  }
}

TEST_CASE("plus_scaled, scaled and to_dense") {
  std::mt19937_64 rng(3);
  const SymBandMatrix a = random_spd(9, 1, rng);
  const SymBandMatrix b = random_spd(9, 4, rng);
  const SymBandMatrix c = a.plus_scaled(b, -2.0);
  CHECK(c.halfband() == 4);
  const DenseMatrix d = c.to_dense();
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) CHECK(d(i, j) == doctest::Approx(a(i, j) - 2.0 * b(i, j)));
  CHECK(a.scaled(3.0)(4, 5) == 3.0 * a(4, 5));
  CHECK(a.diagonal()[3] == a(3, 3));
}

TEST_CASE("band Cholesky solves agree with dense elimination") {
  std::mt19937_64 rng(11);
  for (std::size_t w : {0u, 1u, 2u, 6u, 30u}) {
    const SymBandMatrix a = random_spd(31, w, rng);
    const Vector b = oracle::random_vector(rng, 31);
    Vector x = b;
    BandCholesky(a).solve_in_place(x);
    const std::vector<double> ref = oracle::dense_solve(to_oracle(a), b);
    for (std::size_t i = 0; i < 31; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("Cholesky factor reproduces the matrix") {
  std::mt19937_64 rng(5);
  const SymBandMatrix a = random_spd(12, 3, rng);
  const BandCholesky l(a);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k <= j; ++k) sum += l.lower(i, k) * l.lower(j, k);
      CHECK(sum == doctest::Approx(a(i, j)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("Cholesky rejects indefinite input") {
  SymBandMatrix a(3, 1);
  a.set(0, 0, 1.0);
  a.set(1, 1, -1.0);
  a.set(2, 2, 1.0);
  CHECK_THROWS_AS(BandCholesky{a}, SolverError);
}
