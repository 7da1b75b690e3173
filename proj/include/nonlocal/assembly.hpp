#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "nonlocal/band_matrix.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/mesh.hpp"

namespace nonlocal {

enum class HorizonMode { truncated, infinite };

/// Galerkin matrices on the free unknowns of a mesh.
///
/// stiffness_raw is the Gram matrix G of the double integral
///   iint_{|x-y|<delta} (u(x)-u(y)) (v(x)-v(y)) |x-y|^{-1-2s} dy dx
/// over the completed domain, with u = v = 0 outside (a, b); stiffness is
/// (c_{1,s}/2) G and mass the piecewise-linear L2 Gram matrix.
struct AssembledSystem {
  SymBandMatrix stiffness_raw;
  SymBandMatrix stiffness;
  SymBandMatrix mass;
  Mesh1D mesh;
  KernelSpec spec;
  HorizonMode mode;
};

/// Assembles G and A = (c/2) G.
///
/// Truncated mode: G_ij depends only on d = |i - j| and equals
///   2 int_0^delta r^{-1-2s} C_d(r) dr,  C_d(r) = int (phi_i(x+r)-phi_i(x))(phi_j(x+r)-phi_j(x)) dx,
/// where C_d is the cubic B-spline combination h (2 B(d) - B(r/h - d) - B(r/h + d)).
/// Near panels use exact power moments; far panels (where the monomial
/// expansion would cancel) use a 24-point Gauss rule on the smooth integrand.
///
/// Infinite mode: the all-pairs interaction on (a, b) x (a, b) (truncated
/// form at delta = b - a minus its collar term) plus the exterior tail
/// 2 int phi_i phi_j psi, psi from infinite_tail; the collar and tail
/// products are integrated element by element.
AssembledSystem assemble_stiffness(const Mesh1D& mesh, const KernelSpec& spec, HorizonMode mode);

/// Tridiagonal piecewise-linear mass matrix on the free unknowns.
SymBandMatrix assemble_mass(const Mesh1D& mesh);

/// Right-hand side presets: f = 0, f = 1 or f = sin(k pi (x - a) / (b - a)).
struct LoadPreset {
  enum class Kind { zero, one, sine };
  Kind kind = Kind::one;
  int k = 1;

  static LoadPreset zero() { return {Kind::zero, 1}; }
  static LoadPreset one() { return {Kind::one, 1}; }
  static LoadPreset sine(int k) { return {Kind::sine, k}; }
  /// Parses "zero", "one" or "sin_<k>"; throws ConfigError on anything else.
  static LoadPreset parse(const std::string& text);
  std::string to_string() const;
  double operator()(double x, double a, double b) const;

  friend bool operator==(const LoadPreset&, const LoadPreset&) = default;
};

/// F_i = scale * int f phi_i dx, in closed form.
Vector assemble_load(const Mesh1D& mesh, const LoadPreset& f, double scale);

/// Collar interaction matrix T_ij = 2 int_a^b phi_i phi_j tau(x) dx where tau
/// is collar_tail (horizon given) or infinite_tail (horizon empty). Tridiagonal.
SymBandMatrix assemble_tail_matrix(const Mesh1D& mesh, const FracParams& params,
                                   std::optional<double> horizon);

/// Independent check of one entry of G: iterated Gauss quadrature over every
/// pair of elements of (a, b) clipped to |x - y| < delta, refined by panel
/// doubling (with a power-law substitution on panels touching x = y) until
/// two successive values agree to 1e-9, plus the collar term
/// 2 int phi_i phi_j collar_tail. Throws AssemblyError after 20 doublings.
double pair_integral_oracle(std::size_t i, std::size_t j, const Mesh1D& mesh,
                            const KernelSpec& spec);

}  // namespace nonlocal
