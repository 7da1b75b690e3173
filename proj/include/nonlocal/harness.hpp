#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/assembly.hpp"
#include "nonlocal/constants.hpp"
#include "nonlocal/mesh.hpp"

namespace nonlocal {

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const noexcept { return b - a; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// kappa(N,s) lambda / delta^{2(1-s)}.
double rescale_eigen(double lambda, double delta, const FracParams& p);

/// One CSV row. Eigenvalue rows have k >= 1. The row with k = 0 reports the
/// linear solve with f = 1: lambda and rescaled hold ||u_h||_{L2}, reference
/// the norm of the reference solution, abs_err the L2 distance between them.
struct SweepRow {
  double delta = 0.0;
  double h = 0.0;
  NodeIndex m = 0;
  double s = 0.0;
  int k = 0;
  double lambda = 0.0;
  double rescaled = 0.0;
  double reference = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

enum class SweepMode { zero, infty };

/// Per-horizon quantities that do not fit the CSV row layout.
struct DeltaDiagnostics {
  double delta = 0.0;
  int n_int = 0;
  /// M-norm distance of the first eigenvector to the reference eigenvector.
  double eigvec_distance = 0.0;
  /// L2 distance of the f = 1 solution to its reference.
  double solution_error = 0.0;
  /// Sizes of eigenvalue clusters (relative gap 1e-6), in ascending order.
  std::vector<int> multiplicities;
  /// Infinity sweep, delta >= b - a only: max_k relative defect of
  /// lambda_k^inf - lambda_k^delta against c_{1,s} / (s delta^{2s}). NaN otherwise.
  double shift_defect = 0.0;
};

struct SweepReport {
  SweepMode mode = SweepMode::zero;
  Interval domain;
  std::string timestamp;
  /// Finest n_int of the sweep (the common one in infinity mode).
  int n_int = 0;
  std::vector<SweepRow> rows;
  std::vector<DeltaDiagnostics> per_delta;
  /// Infinity sweep: least-squares slope of log(lambda_1^inf - lambda_1^delta)
  /// against log(delta) over delta >= b - a. NaN with fewer than two points.
  double tail_slope = 0.0;
};

/// n_int = (b - a) m / delta, which must be an integer >= 2.
int derive_n_int(double length, NodeIndex m, double delta);

/// delta -> 0 study at fixed m = delta / h. `deltas` must be strictly
/// decreasing. References: (k pi / (b-a))^2 and (x-a)(b-x)/2 for the
/// rescaled problem with f = 1.
SweepReport sweep_zero(const Interval& domain, double s, NodeIndex m,
                       std::span<const double> deltas, int k, int threads = 0);

/// delta -> infinity study on a fixed mesh h = (b-a)/n_int with delta = m h.
/// References come from the infinite-horizon assembly on the same mesh.
/// `ms` must be strictly increasing and reach delta >= b - a.
SweepReport sweep_infty(const Interval& domain, double s, int n_int,
                        std::span<const NodeIndex> ms, int k, int threads = 0);

struct CDeltaRow {
  double delta = 0.0;
  double ratio = 0.0;
  double c_delta = 0.0;
  bool pass = false;
};

/// Norm comparison for the first truncated eigenvector v:
/// ratio = v^T G_inf v / v^T G_delta v against
/// C(delta) = 1 + 4 |Omega_delta| / (delta^{1+2s} lambda_1^delta).
/// Throws InvariantViolation if some ratio falls below 1 - 1e-10.
std::vector<CDeltaRow> check_c_delta(const Interval& domain, double s, int n_int,
                                     std::span<const NodeIndex> ms, int threads = 0);

struct EnergyRow {
  double delta = 0.0;
  double i_value = 0.0;
  double reference = 0.0;
};

/// I(u) = 2(1-s)/delta^{2(1-s)} u^T G u for the raw Gram matrix of `sys`.
double scaled_energy(const AssembledSystem& sys, std::span<const double> u);

/// Scaled energy of the interpolant of sin(pi (x-a)/(b-a)) along a
/// delta -> 0 sweep; reference gamma(1) int |u'|^2 = pi^2 / (b - a).
std::vector<EnergyRow> gamma_limit_energy(const Interval& domain, double s, NodeIndex m,
                                          std::span<const double> deltas, int threads = 0);

/// Mass of rho_delta(z) = (c_{N,s}/2) |z|^{2-N-2s} on B(0, delta), computed
/// through the radial power moment.
double bbm_mollifier_mass(double s, double delta, int dim = 1);
/// Mass of the normalized mollifier 2(1-s)/(sigma_{N-1} delta^{2(1-s)}) |z|^{2-N-2s} on B(0, delta).
double bbm_normalized_mass(double s, double delta, int dim = 1);

/// Sizes of runs of ascending values whose consecutive relative gap is <= rel_gap.
std::vector<int> cluster_multiplicities(std::span<const double> values, double rel_gap = 1e-6);

/// Exact L2(a, b) distance between the piecewise-linear function with free
/// values u (zero at a and b) and `exact` (evaluated by 5-point Gauss per element).
double l2_distance(const Mesh1D& mesh, std::span<const double> u,
                   const std::function<double(double)>& exact);

/// Nodal interpolant of `f` on the free nodes.
Vector interpolate(const Mesh1D& mesh, const std::function<double(double)>& f);

}  // namespace nonlocal
