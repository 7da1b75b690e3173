#pragma once

namespace nonlocal {

/// Dimension and fractional order of the operator.
///
/// Construction validates 0 < s < 1 and N >= 1 and throws DomainError
/// otherwise. The discrete problems stay well posed when N <= 2s, so that
/// case is only flagged through satisfies_dimension_bound().
class FracParams {
 public:
  FracParams(int dim, double s);

  int dim() const noexcept { return dim_; }
  double s() const noexcept { return s_; }

  /// True when N > 2s, the range in which the continuum eigenvalue theory
  /// is stated.
  bool satisfies_dimension_bound() const noexcept { return dim_ > 2.0 * s_; }

  friend bool operator==(const FracParams&, const FracParams&) = default;

 private:
  int dim_;
  double s_;
};

/// Gamma function for positive real arguments.
double gamma_fn(double x);

/// Measure of the unit sphere S^{N-1} in R^N: 2 pi^{N/2} / Gamma(N/2).
double surface_measure(int dim);

/// Normalization constant c_{N,s} of the fractional Laplacian.
double c_norm(const FracParams& p);

/// kappa(N,s) = 4N(1-s) / (sigma_{N-1} c_{N,s}); tends to 1 as s -> 1.
double kappa(const FracParams& p);

/// gamma(N) = sigma_{N-1} / N, the constant in front of the local Dirichlet
/// energy obtained from scaled nonlocal energies.
double gamma_limit_const(int dim);

}  // namespace nonlocal
