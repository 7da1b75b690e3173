#include "nonlocal/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal::quad {

namespace {

constexpr std::size_t kMaxPoints = 64;

struct StoredRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

StoredRule compute_rule(std::size_t n) {
  StoredRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

Rule gauss_legendre(std::size_t n) {
  if (n < 1 || n > kMaxPoints) {
    throw DomainError("Gauss-Legendre rule size must be in [1, 64]");
  }
  static std::array<StoredRule, kMaxPoints + 1> cache;
  static std::array<std::once_flag, kMaxPoints + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = compute_rule(n); });
  return Rule{cache[n].nodes, cache[n].weights};
}

}  // namespace nonlocal::quad
