#include "nonlocal/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

namespace nonlocal {

namespace {

// Centered cubic B-spline (support [-2, 2]); it is the autocorrelation of the
// unit hat function: int hat(x) hat(x + t) dx = B(t).
double bspline3(double t) {
  t = std::abs(t);
  if (t >= 2.0) return 0.0;
  if (t >= 1.0) {
    const double u = 2.0 - t;
    return u * u * u / 6.0;
  }
  return 2.0 / 3.0 - t * t + 0.5 * t * t * t;
}

using Cubic = std::array<double, 4>;

// Polynomial pieces of bspline3 on [j, j+1], j = -2 .. 1, in the variable u.
constexpr std::array<Cubic, 4> kBsplinePieces = {{
    {4.0 / 3.0, 2.0, 1.0, 1.0 / 6.0},
    {2.0 / 3.0, 0.0, -1.0, -0.5},
    {2.0 / 3.0, 0.0, -1.0, 0.5},
    {4.0 / 3.0, -2.0, 1.0, -1.0 / 6.0},
}};

// Coefficients in t of bspline3(t + shift) restricted to the piece j.
Cubic shifted_piece(int j, double shift) {
  const Cubic& c = kBsplinePieces[static_cast<std::size_t>(j + 2)];
  constexpr std::array<std::array<double, 4>, 4> binom = {
      {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}}};
  Cubic out{0.0, 0.0, 0.0, 0.0};
  for (int p = 0; p < 4; ++p) {
    double power = 1.0;
    for (int k = p; k >= 0; --k) {
      out[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(p)] *
                                          binom[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] *
                                          power;
      power *= shift;
    }
  }
  return out;
}

constexpr int kExactPanels = 4;
constexpr std::size_t kFarPanelPoints = 24;

// int over panel [k, k+1] of t^{-1-2s} (2B(d) - B(t-d) - B(t+d)) dt, d signed.
double correlation_panel(int d, int k, double s) {
  const double centre = 2.0 * bspline3(static_cast<double>(d));
  if (k >= kExactPanels) {
    const double exponent = -1.0 - 2.0 * s;
    return quad::integrate(
        [&](double t) {
          return std::pow(t, exponent) * (centre - bspline3(t - d) - bspline3(t + d));
        },
        static_cast<double>(k), static_cast<double>(k + 1), kFarPanelPoints);
  }
  Cubic poly{centre, 0.0, 0.0, 0.0};
  for (const int sign : {-1, 1}) {
    const int piece = k + sign * d;
    if (piece >= -2 && piece <= 1) {
      const Cubic shifted = shifted_piece(piece, static_cast<double>(sign * d));
      for (std::size_t p = 0; p < 4; ++p) poly[p] -= shifted[p];
    }
  }
  // The correlation vanishes to second order at r = 0; on the first panel the
  // constant and linear coefficients are rounding residue of exact zeros.
  const double scale = std::abs(centre) + 1.0;
  double sum = 0.0;
  for (int p = 0; p < 4; ++p) {
    double coeff = poly[static_cast<std::size_t>(p)];
    if (k == 0 && p < 2 && std::abs(coeff) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
      coeff = 0.0;
    }
    if (coeff == 0.0) continue;
    try {
      sum += coeff * power_moment(p, static_cast<double>(k), static_cast<double>(k + 1), s);
    } catch (const DomainError& e) {
      throw AssemblyError(std::string("displacement correlation is not O(r^2) at r = 0: ") +
                          e.what());
    }
  }
  return sum;
}

// g_d(m) = int_0^m t^{-1-2s} (2B(d) - B(t-d) - B(t+d)) dt. m < 0 means m = infinity.
double correlation_symbol(int d, NodeIndex m, double s) {
  const int ad = std::abs(d);
  const bool infinite = m < 0;
  double sum = 0.0;
  const int first = std::max(0, ad - 2);
  const int last = ad + 1;  // panels beyond have a constant bracket 2B(d)
  for (int k = first; k <= last; ++k) {
    if (!infinite && k >= m) break;
    sum += correlation_panel(d, k, s);
  }
  const double centre = 2.0 * bspline3(static_cast<double>(d));
  const int tail_start = ad + 2;
  if (centre != 0.0) {
    if (infinite) {
      sum += centre * std::pow(static_cast<double>(tail_start), -2.0 * s) / (2.0 * s);
    } else if (m > tail_start) {
      sum += centre * power_moment(0, static_cast<double>(tail_start), static_cast<double>(m), s);
    }
  }
  return sum;
}

// Raw Gram matrix of the truncated (or, for m < 0, full-line) form.
SymBandMatrix correlation_gram(const Mesh1D& mesh, NodeIndex m, double s) {
  const std::size_t n = mesh.free_count();
  const std::size_t reach =
      (m < 0) ? n - 1 : static_cast<std::size_t>(std::min<NodeIndex>(m + 1, static_cast<NodeIndex>(n) - 1));
  const double prefactor = 2.0 * std::pow(mesh.h(), 1.0 - 2.0 * s);
  SymBandMatrix g(n, reach);
  for (std::size_t d = 0; d <= reach && d < n; ++d) {
    const double upper = correlation_symbol(static_cast<int>(d), m, s);
    const double lower = correlation_symbol(-static_cast<int>(d), m, s);
    const double asym = std::abs(upper - lower);
    if (asym > 1e-13 * std::max(1.0, std::abs(upper))) {
      throw AssemblyError("stiffness asymmetry " + std::to_string(asym) + " at offset " +
                          std::to_string(d));
    }
    const double value = prefactor * 0.5 * (upper + lower);
    for (std::size_t i = 0; i + d < n; ++i) g.set(i, i + d, value);
  }
  return g;
}

// Integral over [lo, hi] of f, graded toward `toward` (lo or hi) with three panels.
template <class F>
double graded_element_integral(F&& f, double lo, double hi, bool toward_lo) {
  constexpr std::array<double, 4> kBreaks = {0.0, 0.15, 0.4, 1.0};
  constexpr std::size_t kPoints = 10;
  const double width = hi - lo;
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < kBreaks.size(); ++p) {
    double a = toward_lo ? lo + kBreaks[p] * width : hi - kBreaks[p + 1] * width;
    double b = toward_lo ? lo + kBreaks[p + 1] * width : hi - kBreaks[p] * width;
    sum += quad::integrate(f, a, b, kPoints);
  }
  return sum;
}

}  // namespace

SymBandMatrix assemble_mass(const Mesh1D& mesh) {
  const std::size_t n = mesh.free_count();
  const double h = mesh.h();
  SymBandMatrix mass(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    mass.set(i, i, 2.0 * h / 3.0);
    if (i + 1 < n) mass.set(i, i + 1, h / 6.0);
  }
  return mass;
}

SymBandMatrix assemble_tail_matrix(const Mesh1D& mesh, const FracParams& params,
                                   std::optional<double> horizon) {
  const double s = params.s();
  const double h = mesh.h();
  const double a = mesh.a();
  const double b = mesh.b();
  const int n_int = mesh.n_int();
  const std::size_t n = mesh.free_count();

  // Profile of one side as a function of the distance t to that endpoint.
  auto side_profile = [&](double t) {
    if (horizon) {
      if (t >= *horizon) return 0.0;
      return (std::pow(t, -2.0 * s) - std::pow(*horizon, -2.0 * s)) / (2.0 * s);
    }
    return std::pow(t, -2.0 * s) / (2.0 * s);
  };

  SymBandMatrix tail(n, 1);
  for (int e = 0; e < n_int; ++e) {
    const double xl = a + e * h;
    const double xr = (e + 1 == n_int) ? b : a + (e + 1) * h;
    // Free ids of the element's end nodes (-1 when constrained).
    const int left_id = e - 1;
    const int right_id = (e + 1 <= n_int - 1) ? e : -1;

    // Products of the local shape functions: LL, LR, RR.
    std::array<double, 3> local{0.0, 0.0, 0.0};
    for (const bool from_left : {true, false}) {
      const double t_near = from_left ? xl - a : b - xr;
      if (horizon && t_near >= *horizon) continue;
      if (t_near == 0.0) {
        // Element touches the singular endpoint. With tau = t^{-2s}/(2s) - C,
        // only the free node opposite the endpoint contributes, with shape
        // function t/h.
        const double moment = power_moment(3, 0.0, h, s) / (2.0 * s * h * h);
        const double constant =
            horizon ? std::pow(*horizon, -2.0 * s) / (2.0 * s) * (h / 3.0) : 0.0;
        const double value = moment - constant;
        // Far node is right (from_left) or left (from right side).
        local[from_left ? 2 : 0] += value;
        continue;
      }
      for (int k = 0; k < 3; ++k) {
        const auto integrand = [&](double x) {
          const double phi_l = (xr - x) / h;
          const double phi_r = (x - xl) / h;
          const double prod = (k == 0) ? phi_l * phi_l : (k == 1) ? phi_l * phi_r : phi_r * phi_r;
          return prod * side_profile(from_left ? x - a : b - x);
        };
        local[static_cast<std::size_t>(k)] += graded_element_integral(integrand, xl, xr, from_left);
      }
    }
    if (left_id >= 0) {
      const auto li = static_cast<std::size_t>(left_id);
      tail.set(li, li, tail(li, li) + 2.0 * local[0]);
    }
    if (right_id >= 0) {
      const auto ri = static_cast<std::size_t>(right_id);
      tail.set(ri, ri, tail(ri, ri) + 2.0 * local[2]);
    }
    if (left_id >= 0 && right_id >= 0) {
      const auto li = static_cast<std::size_t>(left_id);
      const auto ri = static_cast<std::size_t>(right_id);
      tail.set(li, ri, tail(li, ri) + 2.0 * local[1]);
    }
  }
  return tail;
}

AssembledSystem assemble_stiffness(const Mesh1D& mesh, const KernelSpec& spec, HorizonMode mode) {
  const double s = spec.s();
  if (mode == HorizonMode::truncated &&
      std::abs(spec.delta() - mesh.delta()) > 1e-12 * mesh.delta()) {
    throw AssemblyError("kernel horizon does not match the mesh horizon m*h");
  }
  SymBandMatrix gram;
  if (mode == HorizonMode::truncated) {
    gram = correlation_gram(mesh, mesh.m(), s);
  } else {
    // All pairs inside (a, b) interact once delta >= b - a, i.e. m = n_int.
    const SymBandMatrix full_interval = correlation_gram(mesh, mesh.n_int(), s);
    const SymBandMatrix collar = assemble_tail_matrix(mesh, spec.params(), mesh.length());
    const SymBandMatrix exterior = assemble_tail_matrix(mesh, spec.params(), std::nullopt);
    gram = full_interval.plus_scaled(collar, -1.0).plus_scaled(exterior, 1.0);
  }
  const double half_c = 0.5 * c_norm(spec.params());
  SymBandMatrix stiffness = gram.scaled(half_c);
  return AssembledSystem{std::move(gram), std::move(stiffness), assemble_mass(mesh), mesh, spec,
                         mode};
}

LoadPreset LoadPreset::parse(const std::string& text) {
  if (text == "zero") return zero();
  if (text == "one") return one();
  constexpr std::string_view prefix = "sin_";
  if (text.size() > prefix.size() && text.compare(0, prefix.size(), prefix) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        digits.size() < 6) {
      const int k = std::stoi(digits);
      if (k >= 1) return sine(k);
    }
  }
  throw ConfigError("unknown right-hand side preset '" + text + "' (expected zero, one or sin_<k>)");
}

std::string LoadPreset::to_string() const {
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::one:
      return "one";
    case Kind::sine:
      break;
  }
  return "sin_" + std::to_string(k);
}

double LoadPreset::operator()(double x, double a, double b) const {
  if (kind == Kind::zero) return 0.0;
  if (kind == Kind::one) return 1.0;
  return std::sin(k * std::numbers::pi * (x - a) / (b - a));
}

Vector assemble_load(const Mesh1D& mesh, const LoadPreset& f, double scale) {
  const std::size_t n = mesh.free_count();
  const double h = mesh.h();
  Vector load(n, 0.0);
  if (f.kind == LoadPreset::Kind::zero) return load;
  if (f.kind == LoadPreset::Kind::one) {
    std::fill(load.begin(), load.end(), scale * h);
    return load;
  }
  if (f.k < 1) throw ConfigError("sine preset needs k >= 1");
  const double omega = f.k * std::numbers::pi / mesh.length();
  const double half = std::sin(0.5 * omega * h);
  // int hat_i(x) sin(omega (x - a)) dx = sin(omega (x_i - a)) 4 sin^2(omega h/2) / (omega^2 h)
  const double hat_factor = 4.0 * half * half / (omega * omega * h);
  for (std::size_t i = 0; i < n; ++i) {
    load[i] = scale * std::sin(omega * (mesh.free_x(i) - mesh.a())) * hat_factor;
  }
  return load;
}

}  // namespace nonlocal
