// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonlocal/assembly.hpp"
#include "nonlocal/constants.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/harness.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/solvers.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Pinned tolerances.
constexpr double kPointwiseTol = 1e-6;
constexpr double kOracleRelTol = 1e-7;
constexpr double kSpectralRelTol = 0.02;
constexpr double kSolutionRelTol = 0.01;
constexpr double kReferenceSolutionNorm = 0.09128709;
constexpr double kShiftRelTol = 1e-8;
constexpr double kSlopeRelTol = 0.10;
constexpr double kInfinitySolutionTol = 1e-6;
constexpr double kBbmAllowance = 1.01;
constexpr double kEnergyRelTol = 0.02;
constexpr double kEigenDefectTol = 1e-8;
constexpr double kDenseOracleTol = 1e-9;
constexpr double kCgCholeskyTol = 1e-9;
constexpr double kRayleighSlack = 1e-10;
constexpr double kConstantsTol = 1e-2;
constexpr double kMassTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;
  std::function<Outcome()> body;
};

class Detail {
 public:
  Detail() { out_ << std::setprecision(4); }
  template <class T>
  Detail& operator<<(const T& v) {
    out_ << v;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

const std::vector<double> kZeroDeltas{0.2, 0.1, 0.05, 0.025};
constexpr double kInftyS = 0.25;
constexpr int kInftyNInt = 256;

std::vector<NodeIndex> spectral_ms() { return {16, 32, 64, 128, 256, 512, 1024, 2048}; }

// delta = 1/16, 1/4, then 4^j for j = 0 .. 20.
std::vector<NodeIndex> solution_ms() {
  std::vector<NodeIndex> ms{16, 64};
  for (NodeIndex m = 256; m <= (NodeIndex{256} << 40); m *= 4) ms.push_back(m);
  return ms;
}

Outcome pointwise() {
  double worst = 0.0;
  for (double s : {0.25, 0.4, 0.75}) {
    for (double delta : {0.1, 0.4}) {
      const FracParams p(1, s);
      const double value =
          apply_pointwise([](double x) { return x * x; }, 0.5, KernelSpec(p, delta));
      worst = std::max(worst, std::abs(kappa(p) * value / std::pow(delta, 2.0 * (1.0 - s)) + 2.0));
    }
  }
  return {worst <= kPointwiseTol, (Detail() << "max |rescaled + 2| = " << worst).str()};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int entries = 0;
  for (double s : {0.25, 0.5, 0.75}) {
    const Mesh1D mesh = Mesh1D::build(0.0, 1.0, 8, 2);
    const AssembledSystem sys = assemble_stiffness(
        mesh, KernelSpec(FracParams(1, s), mesh.delta()), HorizonMode::truncated);
    for (std::size_t i = 0; i < mesh.free_count(); ++i) {
      for (std::size_t j = i; j < mesh.free_count() && j <= i + 3; ++j) {
        const double ref = pair_integral_oracle(i, j, mesh, sys.spec);
        worst = std::max(worst, std::abs(sys.stiffness_raw(i, j) - ref) / std::abs(ref));
        ++entries;
      }
    }
  }
  return {worst <= kOracleRelTol,
          (Detail() << entries << " entries, max rel deviation = " << worst).str()};
}

const std::vector<SweepReport>& zero_reports() {
  static const std::vector<SweepReport> reports = [] {
    std::vector<SweepReport> r;
    for (double s : {0.25, 0.4}) r.push_back(sweep_zero(Interval{}, s, 8, kZeroDeltas, 3));
    return r;
  }();
  return reports;
}

Outcome spectral_zero() {
  bool monotone = true;
  double worst_final = 0.0;
  for (const SweepReport& r : zero_reports()) {
    for (int k = 1; k <= 3; ++k) {
      double previous = INFINITY;
      for (const SweepRow& row : r.rows) {
        if (row.k != k) continue;
        monotone = monotone && row.abs_err <= previous;
        previous = row.abs_err;
        if (row.delta == kZeroDeltas.back()) worst_final = std::max(worst_final, row.rel_err);
      }
    }
  }
  return {monotone && worst_final <= kSpectralRelTol,
          (Detail() << "monotone=" << (monotone ? "yes" : "no")
                    << ", worst rel err at delta=0.025: " << worst_final)
              .str()};
}

Outcome solution_zero() {
  const std::vector<double> deltas{0.025};
  const SweepReport r = sweep_zero(Interval{}, 0.25, 8, deltas, 1);
  double err = INFINITY;
  for (const SweepRow& row : r.rows) {
    if (row.k == 0) err = row.abs_err;
  }
  const double limit = kSolutionRelTol * kReferenceSolutionNorm;
  return {err <= limit, (Detail() << "||u - x(1-x)/2|| = " << err << " (limit " << limit
                                  << ", ratio " << err / kReferenceSolutionNorm << ")")
                            .str()};
}

Outcome spectral_infty() {
  const std::vector<NodeIndex> ms = spectral_ms();
  const SweepReport r = sweep_infty(Interval{}, kInftyS, kInftyNInt, ms, 5);
  bool increasing = true;
  double previous = 0.0;
  for (const SweepRow& row : r.rows) {
    if (row.k != 1) continue;
    increasing = increasing && row.lambda > previous;
    previous = row.lambda;
  }
  double worst_shift = 0.0;
  for (const DeltaDiagnostics& d : r.per_delta) {
    if (d.delta >= 1.0) worst_shift = std::max(worst_shift, d.shift_defect);
  }
  const double target = -2.0 * kInftyS;
  const bool slope_ok = std::abs(r.tail_slope - target) <= kSlopeRelTol * std::abs(target);
  return {increasing && worst_shift <= kShiftRelTol && slope_ok,
          (Detail() << "lambda_1 increasing=" << (increasing ? "yes" : "no")
                    << ", max shift defect = " << worst_shift << ", slope = "
                    << std::setprecision(10) << r.tail_slope)
              .str()};
}

Outcome solution_infty() {
  const std::vector<NodeIndex> ms = solution_ms();
  const SweepReport r = sweep_infty(Interval{}, kInftyS, kInftyNInt, ms, 1);
  bool decreasing = true;
  double previous = INFINITY;
  double last = INFINITY;
  for (const SweepRow& row : r.rows) {
    if (row.k != 0) continue;
    decreasing = decreasing && row.abs_err < previous;
    previous = row.abs_err;
    last = row.abs_err;
  }
  return {decreasing && last <= kInfinitySolutionTol,
          (Detail() << "decreasing=" << (decreasing ? "yes" : "no") << ", distance at delta="
                    << r.rows.back().delta << ": " << last)
              .str()};
}

Outcome norm_equivalence() {
  const std::vector<NodeIndex> ms = spectral_ms();
  std::vector<CDeltaRow> rows;
  try {
    rows = check_c_delta(Interval{}, kInftyS, kInftyNInt, ms);
  } catch (const InvariantViolation& e) {
    return {false, e.what()};
  }
  bool all = true;
  bool c_decreasing = true;
  double previous = INFINITY;
  for (const CDeltaRow& row : rows) {
    all = all && row.pass;
    if (row.delta >= 1.0) {
      c_decreasing = c_decreasing && row.c_delta - 1.0 < previous;
      previous = row.c_delta - 1.0;
    }
  }
  return {all && c_decreasing, (Detail() << rows.size() << " rows, bounds hold="
                                         << (all ? "yes" : "no") << ", C-1 decreasing="
                                         << (c_decreasing ? "yes" : "no")
                                         << ", C(delta_max) = " << rows.back().c_delta)
                                   .str()};
}

Outcome bbm_bound() {
  double worst = 0.0;
  for (const SweepReport& r : zero_reports()) {
    for (const SweepRow& row : r.rows) {
      if (row.k == 1) worst = std::max(worst, row.rescaled / kPi2);
    }
  }
  return {worst <= kBbmAllowance, (Detail() << "max rescaled lambda_1 / pi^2 = " << worst).str()};
}

Outcome gamma_limit() {
  const std::vector<EnergyRow> rows = gamma_limit_energy(Interval{}, 0.25, 8, kZeroDeltas);
  bool decreasing = true;
  double previous = INFINITY;
  double last = INFINITY;
  for (const EnergyRow& row : rows) {
    const double err = std::abs(row.i_value - row.reference) / row.reference;
    decreasing = decreasing && err < previous;
    previous = err;
    last = err;
  }
  return {decreasing && last <= kEnergyRelTol,
          (Detail() << "decreasing=" << (decreasing ? "yes" : "no")
                    << ", rel err at delta=0.025: " << last)
              .str()};
}

oracle::Dense dense(const SymBandMatrix& a) {
  oracle::Dense d = oracle::zeros(a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) d[i][j] = a(i, j);
  return d;
}

Outcome solver_invariants() {
  double defect = 0.0;
  double dense_dev = 0.0;
  double cg_dev = 0.0;
  double rayleigh_violation = 0.0;

  for (double s : {0.25, 0.4}) {
    const Mesh1D mesh = Mesh1D::build(0.0, 1.0, 320, 8);
    const AssembledSystem sys = assemble_stiffness(
        mesh, KernelSpec(FracParams(1, s), mesh.delta()), HorizonMode::truncated);
    const EigenSet eig = solve_eigen(sys, 10);
    const EigenDefects d = eigen_defects(sys.stiffness, eig);
    defect = std::max({defect, d.max_residual, d.orthonormality});

    const Vector f = assemble_load(mesh, LoadPreset::one(), 1.0);
    const Vector u1 = solve_dirichlet(sys, f, LinearMethod::cholesky);
    const Vector u2 = solve_dirichlet(sys, f, LinearMethod::cg);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) {
      num += (u1[i] - u2[i]) * (u1[i] - u2[i]);
      den += u1[i] * u1[i];
    }
    cg_dev = std::max(cg_dev, std::sqrt(num / den));

    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
      Vector w = oracle::random_vector(rng, u1.size());
      const double scale = std::sqrt(sys.mass.quadratic_form(w));
      for (double& x : w) x /= scale;
      rayleigh_violation =
          std::max(rayleigh_violation, eig.values[0] - kRayleighSlack - sys.stiffness.quadratic_form(w));
    }
  }

  for (double s : {0.25, 0.5, 0.75}) {
    const Mesh1D tr_mesh = Mesh1D::build(0.0, 1.0, 65, 4);
    const Mesh1D inf_mesh = Mesh1D::build(0.0, 1.0, 48, 48);
    for (const auto& [mesh, mode] :
         {std::pair{tr_mesh, HorizonMode::truncated}, std::pair{inf_mesh, HorizonMode::infinite}}) {
      const AssembledSystem sys =
          assemble_stiffness(mesh, KernelSpec(FracParams(1, s), mesh.delta()), mode);
      const std::size_t n = mesh.free_count();
      const EigenSet eig = solve_eigen(sys, n);
      const std::vector<double> ref =
          oracle::generalized_eigenvalues(dense(sys.stiffness), dense(sys.mass));
      for (std::size_t j = 0; j < n; ++j) {
        dense_dev = std::max(dense_dev, std::abs(eig.values[j] - ref[j]) / ref[j]);
      }
    }
  }
  const bool pass = defect <= kEigenDefectTol && dense_dev <= kDenseOracleTol &&
                    cg_dev <= kCgCholeskyTol && rayleigh_violation <= 0.0;
  return {pass, (Detail() << "eigen defect = " << defect << ", dense oracle dev = " << dense_dev
                          << ", cg/cholesky = " << cg_dev
                          << ", rayleigh ok=" << (rayleigh_violation <= 0.0 ? "yes" : "no"))
                    .str()};
}

Outcome constants_limits() {
  double kappa_dev = 0.0;
  double c_dev = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const FracParams p(n, 0.999);
    kappa_dev = std::max(kappa_dev, std::abs(kappa(p) - 1.0));
    const double target = 4.0 * n / surface_measure(n);
    c_dev = std::max(c_dev, std::abs(c_norm(p) / 0.001 - target) / target);
  }
  double mass_dev = 0.0;
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9, 0.999}) {
    for (double delta : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
      mass_dev = std::max(mass_dev, std::abs(bbm_normalized_mass(s, delta) - 1.0));
    }
  }
  return {kappa_dev <= kConstantsTol && c_dev <= kConstantsTol && mass_dev <= kMassTol,
          (Detail() << "|kappa-1| = " << kappa_dev << ", c/(1-s) rel dev = " << c_dev
                    << ", |mass-1| = " << mass_dev)
              .str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "pointwise operator exactness", 1.0, pointwise},
      {2, "assembly oracle equivalence", 30.0, oracle_equivalence},
      {3, "delta->0 spectral convergence", 60.0, spectral_zero},
      {4, "delta->0 solution convergence", 10.0, solution_zero},
      {5, "delta->inf spectral convergence and rate", 60.0, spectral_infty},
      {6, "delta->inf solution convergence", 30.0, solution_infty},
      {7, "norm equivalence C(delta)", 10.0, norm_equivalence},
      {8, "BBM one-sided bound", 60.0, bbm_bound},
      {9, "Gamma-limit energy", 20.0, gamma_limit},
      {10, "solver invariants", 30.0, solver_invariants},
      {11, "constants limits", 1.0, constants_limits},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name << " | "
              << outcome.detail << " | " << std::fixed << std::setprecision(3) << seconds
              << " s (limit " << std::setprecision(0) << c.time_limit << " s"
              << (in_time ? "" : ", exceeded") << ")" << std::defaultfloat << std::setprecision(6)
              << '\n';
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
