#include "nonlocal/kernel.hpp"

#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

KernelSpec::KernelSpec(FracParams params, double delta) : params_(params), delta_(delta) {
  if (params_.dim() != 1) {
    throw DomainError("KernelSpec is one-dimensional; got N = " +
                      std::to_string(params_.dim()));
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("horizon delta must be positive and finite");
  }
}

double KernelSpec::operator()(double z) const noexcept {
  const double r = std::abs(z);
  if (r == 0.0 || r >= delta_) return 0.0;
  return std::pow(r, -1.0 - 2.0 * params_.s());
}

namespace {

void require_interior(double x, double a, double b, const char* what) {
  if (!(x > a && x < b)) {
    throw DomainError(std::string(what) + ": x must lie strictly inside (a, b)");
  }
}

// int_{d}^{delta} r^{-1-2s} dr for 0 < d < delta, zero otherwise.
double one_sided_collar(double d, double delta, double s) {
  if (d >= delta) return 0.0;
  return (std::pow(d, -2.0 * s) - std::pow(delta, -2.0 * s)) / (2.0 * s);
}

}  // namespace

double collar_tail(double x, const KernelSpec& spec, double a, double b) {
  require_interior(x, a, b, "collar_tail");
  const double s = spec.s();
  return one_sided_collar(x - a, spec.delta(), s) + one_sided_collar(b - x, spec.delta(), s);
}

double infinite_tail(double x, const FracParams& params, double a, double b) {
  require_interior(x, a, b, "infinite_tail");
  const double s = params.s();
  return (std::pow(x - a, -2.0 * s) + std::pow(b - x, -2.0 * s)) / (2.0 * s);
}

double power_moment(int p, double alpha, double beta, double s) {
  if (!(alpha >= 0.0) || !(beta > alpha)) {
    throw DomainError("power_moment requires 0 <= alpha < beta");
  }
  const double q = static_cast<double>(p) - 2.0 * s;
  if (alpha == 0.0) {
    if (!(q > 0.0)) {
      throw DomainError("power_moment diverges: alpha = 0 with p <= 2s (p = " +
                        std::to_string(p) + ")");
    }
    return std::pow(beta, q) / q;
  }
  const double log_ratio = std::log(beta / alpha);
  if (q == 0.0) return log_ratio;
  // alpha^q (exp(q log(beta/alpha)) - 1) / q stays accurate as q -> 0.
  return std::pow(alpha, q) * std::expm1(q * log_ratio) / q;
}

double apply_pointwise(const std::function<double(double)>& u, double x,
                       const KernelSpec& spec) {
  const double s = spec.s();
  const double delta = spec.delta();
  const double ux = u(x);
  if (!std::isfinite(ux)) throw EvaluationError("apply_pointwise: non-finite sample u(x)");

  auto second_difference = [&](double y) {
    const double d = u(x + y) - 2.0 * ux + u(x - y);
    if (!std::isfinite(d)) {
      throw EvaluationError("apply_pointwise: non-finite sample near x");
    }
    return d;
  };

  // Near y = 0 the second difference cancels to O(y^2) and carries rounding
  // noise of order eps |u| / y^2, so the innermost panel uses the even
  // Taylor model D(y) ~ A y^2 + B y^4 fitted at y0 and y0/2.
  constexpr int kGradedPanels = 6;
  const double y0 = std::ldexp(delta, -kGradedPanels);
  const double q0 = second_difference(y0) / (y0 * y0);
  const double q1 = second_difference(0.5 * y0) / (0.25 * y0 * y0);
  const double coeff_b = (q0 - q1) / (0.75 * y0 * y0);
  const double coeff_a = q1 - coeff_b * 0.25 * y0 * y0;
  double integral = coeff_a * power_moment(2, 0.0, y0, s) + coeff_b * power_moment(4, 0.0, y0, s);

  const double exponent = -1.0 - 2.0 * s;
  double lo = y0;
  for (int panel = 0; panel < kGradedPanels; ++panel) {
    const double hi = (panel + 1 == kGradedPanels) ? delta : 2.0 * lo;
    integral += quad::integrate(
        [&](double y) { return second_difference(y) * std::pow(y, exponent); }, lo, hi, 24);
    lo = hi;
  }
  return -c_norm(spec.params()) * integral;
}

}  // namespace nonlocal
