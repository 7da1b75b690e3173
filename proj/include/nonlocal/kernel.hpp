#pragma once

#include <functional>

#include "nonlocal/constants.hpp"

namespace nonlocal {

/// One-dimensional truncated kernel K(z) = |z|^{-(1+2s)} for 0 < |z| < delta.
class KernelSpec {
 public:
  KernelSpec(FracParams params, double delta);

  const FracParams& params() const noexcept { return params_; }
  double s() const noexcept { return params_.s(); }
  double delta() const noexcept { return delta_; }

  double operator()(double z) const noexcept;

 private:
  FracParams params_;
  double delta_;
};

/// Integral of |x-y|^{-1-2s} over the part of the collar [a-delta, a] U
/// [b, b+delta] lying within delta of x. Closed form; x must lie in (a, b).
double collar_tail(double x, const KernelSpec& spec, double a, double b);

/// Integral of |x-y|^{-1-2s} over the whole complement of (a, b).
double infinite_tail(double x, const FracParams& params, double a, double b);

/// mu_p(alpha, beta) = int_alpha^beta r^{p-1-2s} dr, with the logarithmic
/// branch when p = 2s. Throws DomainError when alpha = 0 and p <= 2s.
double power_moment(int p, double alpha, double beta, double s);

/// Pointwise value of the truncated fractional Laplacian written as a
/// weighted second difference:
///   -(c_{N,s}/2) int_{-delta}^{delta} (u(x+y) - 2u(x) + u(x-y)) / |y|^{1+2s} dy.
/// u is sampled on [x - delta, x + delta] only.
double apply_pointwise(const std::function<double(double)>& u, double x,
                       const KernelSpec& spec);

}  // namespace nonlocal
