// Brute-force evaluation of single stiffness entries, used to validate the
// correlation-based assembly. Deliberately shares nothing with it beyond the
// closed-form collar_tail.

#include <cmath>
#include <functional>
#include <string>

#include "nonlocal/assembly.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

namespace {

constexpr int kMaxDoublings = 20;
constexpr double kRelTol = 1e-9;
constexpr std::size_t kPanelPoints = 8;

// Repeats `estimate(panels)` with doubling panel counts until two successive
// values agree.
double refine_until_converged(const std::function<double(std::size_t)>& estimate) {
  double previous = estimate(1);
  std::size_t panels = 1;
  for (int round = 0; round < kMaxDoublings; ++round) {
    panels *= 2;
    const double current = estimate(panels);
    const double diff = std::abs(current - previous);
    if (diff <= kRelTol * std::abs(current) || diff <= 1e-300) return current;
    previous = current;
  }
  throw AssemblyError("pair_integral_oracle: no convergence after 20 panel doublings");
}

// Exponent q for the substitution r = R eta^q at a singular endpoint. An
// integer q with q*2s integral turns r^{p-1-2s} dr into polynomial terms.
double substitution_power(double s) {
  for (int q = 1; q <= 12; ++q) {
    const double scaled = q * 2.0 * s;
    if (std::abs(scaled - std::round(scaled)) < 1e-12) return q;
  }
  return 1.0 / (1.0 - s);
}

double hat(double x, double centre, double h) {
  const double t = 1.0 - std::abs(x - centre) / h;
  return t > 0.0 ? t : 0.0;
}

}  // namespace

double pair_integral_oracle(std::size_t i, std::size_t j, const Mesh1D& mesh,
                            const KernelSpec& spec) {
  const std::size_t n = mesh.free_count();
  if (i >= n || j >= n) throw DomainError("pair_integral_oracle: index out of range");
  const auto m = mesh.m();
  const std::size_t gap = i > j ? i - j : j - i;
  if (static_cast<NodeIndex>(gap) > m + 1) {
    throw DomainError("pair_integral_oracle: |i - j| exceeds m + 1");
  }
  const double h = mesh.h();
  const double a = mesh.a();
  const double s = spec.s();
  const double delta = spec.delta();
  const double xi = mesh.free_x(i);
  const double xj = mesh.free_x(j);
  const double q = substitution_power(s);

  auto pair_integrand = [&](double x, double y) {
    return (hat(x, xi, h) - hat(y, xi, h)) * (hat(x, xj, h) - hat(y, xj, h));
  };

  // Elements of (a, b) inside supp(phi_i) or supp(phi_j); element e = [a+eh, a+(e+1)h].
  auto touches = [&](int e, std::size_t f) { return e == static_cast<int>(f) || e == static_cast<int>(f) + 1; };

  struct Piece {
    double x0, y0, r0, r1;
  };
  std::vector<Piece> pieces;
  const int n_int = mesh.n_int();
  for (int ex = 0; ex < n_int; ++ex) {
    for (int ey = 0; ey < n_int; ++ey) {
      const bool hits_i = touches(ex, i) || touches(ey, i);
      const bool hits_j = touches(ex, j) || touches(ey, j);
      if (!hits_i || !hits_j) continue;
      const int offset = ex - ey;
      for (const int half : {0, 1}) {
        const double r0 = (offset - 1 + half) * h;
        const double r1 = (offset + half) * h;
        // Halves have endpoints on multiples of h = delta/m, so each is
        // entirely inside or outside |r| < delta.
        if (std::max(std::abs(r0), std::abs(r1)) > delta * (1.0 + 1e-12)) continue;
        pieces.push_back({a + ex * h, a + ey * h, r0, r1});
      }
    }
  }

  // int over x of the pair integrand at fixed r = x - y, clipped to the rectangle.
  auto slice = [&](const Piece& p, double r) {
    const double lo = std::max(p.x0, p.y0 + r);
    const double hi = std::min(p.x0 + h, p.y0 + h + r);
    if (hi <= lo) return 0.0;
    return quad::integrate([&](double x) { return pair_integrand(x, x - r); }, lo, hi, 3);
  };

  auto interaction = [&](std::size_t panels) {
    double total = 0.0;
    for (const Piece& p : pieces) {
      const bool singular_low = std::abs(p.r0) < 0.5 * h && std::abs(p.r0) < std::abs(p.r1);
      const bool singular_high = std::abs(p.r1) < 0.5 * h && std::abs(p.r1) < std::abs(p.r0);
      if (singular_low || singular_high) {
        // r = sign * R eta^q, eta in [0, 1], R = h.
        const double sign = singular_low ? 1.0 : -1.0;
        const double big_r = std::abs(p.r1 - p.r0);
        total += quad::integrate_composite(
            [&](double eta) {
              if (eta <= 0.0) return 0.0;
              const double rr = big_r * std::pow(eta, q);
              const double jac = big_r * q * std::pow(eta, q - 1.0);
              return slice(p, sign * rr) * std::pow(rr, -1.0 - 2.0 * s) * jac;
            },
            0.0, 1.0, panels, kPanelPoints);
      } else {
        total += quad::integrate_composite(
            [&](double r) { return slice(p, r) * std::pow(std::abs(r), -1.0 - 2.0 * s); }, p.r0,
            p.r1, panels, kPanelPoints);
      }
    }
    return total;
  };

  auto collar = [&](std::size_t panels) {
    double total = 0.0;
    for (int e = 0; e < n_int; ++e) {
      if (!(touches(e, i) && touches(e, j))) continue;
      const double lo = a + e * h;
      const double hi = lo + h;
      auto f = [&](double x) {
        return hat(x, xi, h) * hat(x, xj, h) * collar_tail(x, spec, mesh.a(), mesh.b());
      };
      if (e == 0 || e == n_int - 1) {
        // x - endpoint = h eta^q near the singular endpoint.
        const bool at_left = (e == 0);
        total += quad::integrate_composite(
            [&](double eta) {
              if (eta <= 0.0) return 0.0;
              const double t = h * std::pow(eta, q);
              const double jac = h * q * std::pow(eta, q - 1.0);
              const double x = at_left ? lo + t : hi - t;
              return f(x) * jac;
            },
            0.0, 1.0, panels, kPanelPoints);
      } else {
        total += quad::integrate_composite(f, lo, hi, panels, kPanelPoints);
      }
    }
    return 2.0 * total;
  };

  return refine_until_converged(interaction) + refine_until_converged(collar);
}

}  // namespace nonlocal
