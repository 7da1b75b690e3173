#include "nonlocal/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  // Valid for x >= 0.5; reflection covers the rest.
  const double z = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t split in two halves so that x up to ~170 does not overflow.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         series;
}

// value = factor * pi^(half_pi / 2). Keeping powers of sqrt(pi) symbolic lets
// the half-integer Gamma values cancel against pi^(N/2) without rounding.
struct PiScaled {
  double factor;
  int half_pi;
};

bool is_half_integer(double x) { return x < 171.0 && std::floor(x) + 0.5 == x; }
bool is_integer(double x) { return x < 171.0 && std::floor(x) == x; }

PiScaled gamma_scaled(double x) {
  if (is_half_integer(x)) {
    // Gamma(n + 1/2) = sqrt(pi) (1/2)(3/2)...(n - 1/2)
    double factor = 1.0;
    for (double k = 0.5; k < x; k += 1.0) factor *= k;
    return {factor, 1};
  }
  if (is_integer(x)) {
    double factor = 1.0;
    for (double k = 2.0; k < x; k += 1.0) factor *= k;
    return {factor, 0};
  }
  return {x < 0.5 ? std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x))
                  : lanczos_gamma(x),
          0};
}

double pi_half_power(int half_pi) {
  double value = 1.0;
  for (int j = 0; j < std::abs(half_pi) / 2; ++j) value *= std::numbers::pi;
  if (half_pi % 2 != 0) value *= std::sqrt(std::numbers::pi);
  return half_pi < 0 ? 1.0 / value : value;
}

}  // namespace

FracParams::FracParams(int dim, double s) : dim_(dim), s_(s) {
  if (dim < 1) {
    throw DomainError("dimension N must be >= 1, got " + std::to_string(dim));
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("fractional order s must lie in (0,1), got " + std::to_string(s));
  }
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma_fn requires a positive finite argument");
  }
  const PiScaled g = gamma_scaled(x);
  return g.factor * pi_half_power(g.half_pi);
}

double surface_measure(int dim) {
  if (dim < 1) {
    throw DomainError("surface_measure requires N >= 1");
  }
  const PiScaled g = gamma_scaled(0.5 * dim);
  return 2.0 / g.factor * pi_half_power(dim - g.half_pi);
}

double c_norm(const FracParams& p) {
  const double s = p.s();
  const PiScaled num = gamma_scaled(0.5 * p.dim() + s);
  const PiScaled den = gamma_scaled(1.0 - s);
  return std::pow(2.0, 2.0 * s) * s * num.factor / den.factor *
         pi_half_power(num.half_pi - den.half_pi - p.dim());
}

double kappa(const FracParams& p) {
  return 4.0 * p.dim() * (1.0 - p.s()) / (surface_measure(p.dim()) * c_norm(p));
}

double gamma_limit_const(int dim) { return surface_measure(dim) / dim; }

}  // namespace nonlocal
