#pragma once

#include <cstddef>
#include <span>

namespace nonlocal::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

/// Returns the n-point rule (1 <= n <= 64). Rules are computed once by Newton
/// iteration on the Legendre recurrence and cached for the process lifetime.
Rule gauss_legendre(std::size_t n);

/// n-point Gauss-Legendre approximation of the integral of f over [lo, hi].
template <class F>
double integrate(F&& f, double lo, double hi, std::size_t n) {
  const Rule rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

/// Composite rule with `panels` equal panels of n points each.
template <class F>
double integrate_composite(F&& f, double lo, double hi, std::size_t panels, std::size_t n) {
  const double width = (hi - lo) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = lo + width * static_cast<double>(p);
    const double right = (p + 1 == panels) ? hi : left + width;
    sum += integrate(f, left, right, n);
  }
  return sum;
}

}  // namespace nonlocal::quad
