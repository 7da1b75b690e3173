#include "nonlocal/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "nonlocal/errors.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/solvers.hpp"

namespace nonlocal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buf;
}

double m_norm(const SymBandMatrix& mass, std::span<const double> v) {
  return std::sqrt(mass.quadratic_form(v));
}

double m_distance(const SymBandMatrix& mass, std::span<const double> u, std::span<const double> v) {
  Vector diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - v[i];
  return m_norm(mass, diff);
}

void normalize_in_mass(const SymBandMatrix& mass, Vector& v) {
  const double norm = m_norm(mass, v);
  for (double& x : v) x /= norm;
}

SweepRow eigen_row(double delta, const Mesh1D& mesh, double s, int k, double lambda,
                   double rescaled, double reference) {
  const double abs_err = std::abs(rescaled - reference);
  return SweepRow{delta,  mesh.h(),  mesh.m(), s,       k,
                  lambda, rescaled,  reference, abs_err, reference != 0.0 ? abs_err / reference : 0.0};
}

SweepRow solution_row(double delta, const Mesh1D& mesh, double s, double norm, double reference,
                      double distance) {
  return SweepRow{delta, mesh.h(), mesh.m(), s, 0, norm, norm, reference, distance,
                  reference != 0.0 ? distance / reference : 0.0};
}

void require_strictly_monotone(std::span<const double> values, bool decreasing, const char* what) {
  if (values.empty()) throw ConfigError(std::string(what) + " must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool ok = decreasing ? values[i] < values[i - 1] : values[i] > values[i - 1];
    if (!ok) {
      throw ConfigError(std::string(what) + (decreasing ? " must be strictly decreasing"
                                                        : " must be strictly increasing"));
    }
  }
}

}  // namespace

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NSOLVE_THREADS"); env != nullptr) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double rescale_eigen(double lambda, double delta, const FracParams& p) {
  if (!(lambda > 0.0) || !(delta > 0.0)) {
    throw DomainError("rescale_eigen requires positive eigenvalue and horizon");
  }
  return kappa(p) * lambda / std::pow(delta, 2.0 * (1.0 - p.s()));
}

int derive_n_int(double length, NodeIndex m, double delta) {
  if (!(delta > 0.0)) throw ConfigError("horizon delta must be positive");
  const double exact = length * static_cast<double>(m) / delta;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 * exact || rounded < 2.0 ||
      rounded > static_cast<double>(std::numeric_limits<int>::max())) {
    throw ConfigError("delta = " + std::to_string(delta) + " with m = " + std::to_string(m) +
                      " does not give an integer n_int >= 2 (got " + std::to_string(exact) + ")");
  }
  return static_cast<int>(rounded);
}

std::vector<int> cluster_multiplicities(std::span<const double> values, double rel_gap) {
  std::vector<int> sizes;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool joins = i > 0 && std::abs(values[i] - values[i - 1]) <=
                                    rel_gap * std::max(std::abs(values[i]), std::abs(values[i - 1]));
    if (joins) {
      ++sizes.back();
    } else {
      sizes.push_back(1);
    }
  }
  return sizes;
}

Vector interpolate(const Mesh1D& mesh, const std::function<double(double)>& f) {
  Vector out(mesh.free_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(mesh.free_x(i));
  return out;
}

double l2_distance(const Mesh1D& mesh, std::span<const double> u,
                   const std::function<double(double)>& exact) {
  const int n_int = mesh.n_int();
  const double h = mesh.h();
  double sum = 0.0;
  for (int e = 0; e < n_int; ++e) {
    const double xl = mesh.a() + e * h;
    const double ul = (e >= 1) ? u[static_cast<std::size_t>(e - 1)] : 0.0;
    const double ur = (e + 1 <= n_int - 1) ? u[static_cast<std::size_t>(e)] : 0.0;
    sum += quad::integrate(
        [&](double x) {
          const double t = (x - xl) / h;
          const double diff = (1.0 - t) * ul + t * ur - exact(x);
          return diff * diff;
        },
        xl, xl + h, 5);
  }
  return std::sqrt(sum);
}

SweepReport sweep_zero(const Interval& domain, double s, NodeIndex m,
                       std::span<const double> deltas, int k, int threads) {
  require_strictly_monotone(deltas, true, "deltas");
  if (k < 1) throw ConfigError("k must be >= 1");
  const FracParams params(1, s);
  const double length = domain.length();
  std::vector<int> n_ints(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) n_ints[i] = derive_n_int(length, m, deltas[i]);

  auto reference_solution = [&](double x) { return 0.5 * (x - domain.a) * (domain.b - x); };
  // ||(x-a)(b-x)/2||_{L2} = L^{5/2} / sqrt(120)
  const double reference_norm = std::pow(length, 2.5) / std::sqrt(120.0);
  auto first_mode = [&](double x) { return std::sin(std::numbers::pi * (x - domain.a) / length); };

  struct PerDelta {
    std::vector<SweepRow> rows;
    DeltaDiagnostics diag;
  };
  std::vector<PerDelta> results(deltas.size());

  parallel_for(deltas.size(), resolve_thread_count(threads), [&](std::size_t idx) {
    const double delta = deltas[idx];
    const Mesh1D mesh = Mesh1D::build(domain.a, domain.b, n_ints[idx], m);
    const KernelSpec spec(params, mesh.delta());
    const AssembledSystem sys = assemble_stiffness(mesh, spec, HorizonMode::truncated);
    if (static_cast<std::size_t>(k) > mesh.free_count()) {
      throw ConfigError("k exceeds the number of free unknowns at delta = " + std::to_string(delta));
    }
    const EigenSet eig = solve_eigen(sys, static_cast<std::size_t>(k));

    const double scale = std::pow(mesh.delta(), 2.0 * (1.0 - s)) / kappa(params);
    const Vector load = assemble_load(mesh, LoadPreset::one(), scale);
    const Vector u = solve_dirichlet(sys, load, LinearMethod::cholesky);
    const double err = l2_distance(mesh, u, reference_solution);

    PerDelta& out = results[idx];
    out.rows.push_back(solution_row(delta, mesh, s, m_norm(sys.mass, u), reference_norm, err));
    for (int j = 1; j <= k; ++j) {
      const double lambda = eig.values[static_cast<std::size_t>(j - 1)];
      const double ref = std::pow(j * std::numbers::pi / length, 2.0);
      out.rows.push_back(eigen_row(delta, mesh, s, j, lambda,
                                   rescale_eigen(lambda, mesh.delta(), params), ref));
    }
    Vector target = interpolate(mesh, first_mode);
    normalize_in_mass(sys.mass, target);
    out.diag.delta = delta;
    out.diag.n_int = mesh.n_int();
    out.diag.eigvec_distance = m_distance(sys.mass, eig.vectors[0], target);
    out.diag.solution_error = err;
    out.diag.multiplicities = cluster_multiplicities(eig.values);
    out.diag.shift_defect = kNaN;
  });

  SweepReport report;
  report.mode = SweepMode::zero;
  report.domain = domain;
  report.timestamp = utc_timestamp();
  report.n_int = *std::max_element(n_ints.begin(), n_ints.end());
  report.tail_slope = kNaN;
  for (PerDelta& r : results) {
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    report.per_delta.push_back(std::move(r.diag));
  }
  return report;
}

SweepReport sweep_infty(const Interval& domain, double s, int n_int,
                        std::span<const NodeIndex> ms, int k, int threads) {
  if (ms.empty()) throw ConfigError("ms must not be empty");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < 1) throw ConfigError("every m must be >= 1");
    if (i > 0 && ms[i] <= ms[i - 1]) throw ConfigError("ms must be strictly increasing");
  }
  if (k < 1) throw ConfigError("k must be >= 1");
  if (ms.back() < n_int) {
    throw ConfigError("sweep-infty needs some m >= n_int (delta >= b - a) to check the tail");
  }
  const FracParams params(1, s);
  const double c = c_norm(params);
  const double length = domain.length();

  const Mesh1D base = Mesh1D::build(domain.a, domain.b, n_int, n_int);
  if (static_cast<std::size_t>(k) > base.free_count()) {
    throw ConfigError("k exceeds the number of free unknowns");
  }
  const AssembledSystem reference =
      assemble_stiffness(base, KernelSpec(params, base.delta()), HorizonMode::infinite);
  const EigenSet ref_eig = solve_eigen(reference, static_cast<std::size_t>(k));
  const Vector ones = assemble_load(base, LoadPreset::one(), 1.0);
  const Vector u_ref = solve_dirichlet(reference, ones, LinearMethod::cholesky);
  const double u_ref_norm = m_norm(reference.mass, u_ref);

  struct PerDelta {
    std::vector<SweepRow> rows;
    DeltaDiagnostics diag;
    double lambda1 = 0.0;
  };
  std::vector<PerDelta> results(ms.size());

  parallel_for(ms.size(), resolve_thread_count(threads), [&](std::size_t idx) {
    const Mesh1D mesh = Mesh1D::build(domain.a, domain.b, n_int, ms[idx]);
    const double delta = mesh.delta();
    const AssembledSystem sys =
        assemble_stiffness(mesh, KernelSpec(params, delta), HorizonMode::truncated);
    const EigenSet eig = solve_eigen(sys, static_cast<std::size_t>(k));
    const Vector u = solve_dirichlet(sys, ones, LinearMethod::cholesky);
    // Piecewise-linear functions: the M-norm is the exact L2 norm.
    const double distance = m_distance(sys.mass, u, u_ref);

    PerDelta& out = results[idx];
    out.rows.push_back(solution_row(delta, mesh, s, m_norm(sys.mass, u), u_ref_norm, distance));
    const bool beyond_diameter = ms[idx] >= n_int;
    const double shift = c / (s * std::pow(delta, 2.0 * s));
    double shift_defect = beyond_diameter ? 0.0 : kNaN;
    for (int j = 1; j <= k; ++j) {
      const auto jj = static_cast<std::size_t>(j - 1);
      const double lambda = eig.values[jj];
      out.rows.push_back(eigen_row(delta, mesh, s, j, lambda, lambda, ref_eig.values[jj]));
      if (beyond_diameter) {
        const double gap = ref_eig.values[jj] - lambda;
        shift_defect = std::max(shift_defect, std::abs(gap - shift) / shift);
      }
    }
    out.lambda1 = eig.values[0];
    out.diag.delta = delta;
    out.diag.n_int = n_int;
    out.diag.eigvec_distance = m_distance(sys.mass, eig.vectors[0], ref_eig.vectors[0]);
    out.diag.solution_error = distance;
    out.diag.multiplicities = cluster_multiplicities(eig.values);
    out.diag.shift_defect = shift_defect;
  });

  SweepReport report;
  report.mode = SweepMode::infty;
  report.domain = domain;
  report.timestamp = utc_timestamp();
  report.n_int = n_int;

  // Least-squares slope of log(lambda_1^inf - lambda_1^delta) vs log(delta).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int points = 0;
  for (std::size_t idx = 0; idx < ms.size(); ++idx) {
    const double gap = ref_eig.values[0] - results[idx].lambda1;
    if (ms[idx] < n_int || !(gap > 0.0)) continue;
    const double x = std::log(results[idx].diag.delta);
    const double y = std::log(gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++points;
  }
  report.tail_slope =
      points >= 2 ? (points * sxy - sx * sy) / (points * sxx - sx * sx) : kNaN;
  (void)length;

  for (PerDelta& r : results) {
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    report.per_delta.push_back(std::move(r.diag));
  }
  return report;
}

std::vector<CDeltaRow> check_c_delta(const Interval& domain, double s, int n_int,
                                     std::span<const NodeIndex> ms, int threads) {
  if (ms.empty()) throw ConfigError("ms must not be empty");
  const FracParams params(1, s);
  const Mesh1D base = Mesh1D::build(domain.a, domain.b, n_int, n_int);
  const AssembledSystem reference =
      assemble_stiffness(base, KernelSpec(params, base.delta()), HorizonMode::infinite);

  std::vector<CDeltaRow> rows(ms.size());
  parallel_for(ms.size(), resolve_thread_count(threads), [&](std::size_t idx) {
    const Mesh1D mesh = Mesh1D::build(domain.a, domain.b, n_int, ms[idx]);
    const double delta = mesh.delta();
    const AssembledSystem sys =
        assemble_stiffness(mesh, KernelSpec(params, delta), HorizonMode::truncated);
    const EigenSet eig = solve_eigen(sys, 1);
    const Vector& v = eig.vectors[0];
    const double ratio = reference.stiffness_raw.quadratic_form(v) / sys.stiffness_raw.quadratic_form(v);
    const double completed_measure = domain.length() + 2.0 * delta;
    const double c_delta =
        1.0 + 4.0 * completed_measure / (std::pow(delta, 1.0 + 2.0 * s) * eig.values[0]);
    rows[idx] = CDeltaRow{delta, ratio, c_delta, ratio >= 1.0 - 1e-10 && ratio <= c_delta};
  });
  for (const CDeltaRow& row : rows) {
    if (row.ratio < 1.0 - 1e-10) {
      throw InvariantViolation("norm ratio " + std::to_string(row.ratio) + " < 1 at delta = " +
                               std::to_string(row.delta));
    }
  }
  return rows;
}

double scaled_energy(const AssembledSystem& sys, std::span<const double> u) {
  const double s = sys.spec.s();
  const double delta = sys.spec.delta();
  return 2.0 * (1.0 - s) / std::pow(delta, 2.0 * (1.0 - s)) * sys.stiffness_raw.quadratic_form(u);
}

std::vector<EnergyRow> gamma_limit_energy(const Interval& domain, double s, NodeIndex m,
                                          std::span<const double> deltas, int threads) {
  require_strictly_monotone(deltas, true, "deltas");
  const FracParams params(1, s);
  const double length = domain.length();
  const double reference = gamma_limit_const(1) * std::numbers::pi * std::numbers::pi / (2.0 * length);
  std::vector<EnergyRow> rows(deltas.size());
  parallel_for(deltas.size(), resolve_thread_count(threads), [&](std::size_t idx) {
    const Mesh1D mesh =
        Mesh1D::build(domain.a, domain.b, derive_n_int(length, m, deltas[idx]), m);
    const AssembledSystem sys =
        assemble_stiffness(mesh, KernelSpec(params, mesh.delta()), HorizonMode::truncated);
    const Vector u = interpolate(
        mesh, [&](double x) { return std::sin(std::numbers::pi * (x - domain.a) / length); });
    rows[idx] = EnergyRow{deltas[idx], scaled_energy(sys, u), reference};
  });
  return rows;
}

double bbm_mollifier_mass(double s, double delta, int dim) {
  const FracParams params(dim, s);
  if (!(delta > 0.0)) throw DomainError("mollifier horizon must be positive");
  // int_{B(0,delta)} |z|^{2-N-2s} dz = sigma_{N-1} int_0^delta r^{1-2s} dr.
  return 0.5 * c_norm(params) * surface_measure(dim) * power_moment(2, 0.0, delta, s);
}

double bbm_normalized_mass(double s, double delta, int dim) {
  const FracParams params(dim, s);
  if (!(delta > 0.0)) throw DomainError("mollifier horizon must be positive");
  const double sigma = surface_measure(dim);
  const double prefactor = 2.0 * (1.0 - s) / (sigma * std::pow(delta, 2.0 * (1.0 - s)));
  return prefactor * sigma * power_moment(2, 0.0, delta, s);
}

}  // namespace nonlocal
