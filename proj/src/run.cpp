#include "nonlocal/run.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nonlocal/constants.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

using nlohmann::json;

struct Outcome {
  std::string csv;
  json summary;
  bool checks_passed = true;
};

json domain_json(const Interval& d) { return {{"a", d.a}, {"b", d.b}}; }

json report_summary(const SweepReport& report) {
  json per_delta = json::array();
  for (const DeltaDiagnostics& d : report.per_delta) {
    per_delta.push_back({{"delta", d.delta},
                         {"n_int", d.n_int},
                         {"eigvec_distance", d.eigvec_distance},
                         {"solution_error", d.solution_error},
                         {"multiplicities", d.multiplicities},
                         {"shift_defect", d.shift_defect}});
  }
  return {{"mode", report.mode == SweepMode::zero ? "zero" : "infty"},
          {"domain", domain_json(report.domain)},
          {"timestamp", report.timestamp},
          {"n_int", report.n_int},
          {"tail_slope", report.tail_slope},
          {"per_delta", per_delta}};
}

AssembledSystem assemble_for(const RunConfig& cfg) {
  const FracParams params(1, cfg.s);
  const Mesh1D mesh = Mesh1D::build(cfg.domain.a, cfg.domain.b, cfg.n_int, cfg.m);
  return assemble_stiffness(mesh, KernelSpec(params, mesh.delta()), cfg.horizon);
}

Outcome run_constants(const RunConfig& cfg) {
  std::ostringstream out;
  out << csv::kConstantsHeader << '\n';
  for (int dim : cfg.dims) {
    for (double s : cfg.s_values) {
      const FracParams p(dim, s);
      out << dim << ',' << csv::format(s) << ',' << csv::format(c_norm(p)) << ','
          << csv::format(kappa(p)) << ',' << csv::format(surface_measure(dim)) << ','
          << csv::format(gamma_limit_const(dim)) << '\n';
    }
  }
  return {out.str(), {{"mode", "constants"}}, true};
}

Outcome run_solve(const RunConfig& cfg) {
  const AssembledSystem sys = assemble_for(cfg);
  const Mesh1D& mesh = sys.mesh;
  double scale = 1.0;
  if (cfg.rescaled) {
    scale = std::pow(mesh.delta(), 2.0 * (1.0 - cfg.s)) / kappa(FracParams(1, cfg.s));
  }
  const Vector load = assemble_load(mesh, cfg.rhs, scale);
  const Vector u = solve_dirichlet(sys, load, cfg.method);

  std::ostringstream out;
  out << csv::kSolveHeader << '\n';
  for (int i = 0; i <= mesh.n_int(); ++i) {
    const double value = (i == 0 || i == mesh.n_int()) ? 0.0 : u[static_cast<std::size_t>(i - 1)];
    out << i << ',' << csv::format(mesh.a() + i * mesh.h()) << ',' << csv::format(value) << '\n';
  }
  json summary = {{"mode", "solve"},
                  {"domain", domain_json(cfg.domain)},
                  {"n_int", mesh.n_int()},
                  {"delta", mesh.delta()},
                  {"l2_norm", std::sqrt(sys.mass.quadratic_form(u))}};
  return {out.str(), summary, true};
}

Outcome run_eigs(const RunConfig& cfg) {
  const AssembledSystem sys = assemble_for(cfg);
  const Mesh1D& mesh = sys.mesh;
  const FracParams params(1, cfg.s);
  const EigenSet eig = solve_eigen(sys, static_cast<std::size_t>(cfg.k));
  const bool truncated = cfg.horizon == HorizonMode::truncated;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<SweepRow> rows;
  for (int j = 1; j <= cfg.k; ++j) {
    const double lambda = eig.values[static_cast<std::size_t>(j - 1)];
    SweepRow row{mesh.delta(), mesh.h(), mesh.m(), cfg.s, j, lambda, lambda, nan, nan, nan};
    if (truncated) {
      row.rescaled = rescale_eigen(lambda, mesh.delta(), params);
      row.reference = std::pow(j * std::numbers::pi / mesh.length(), 2.0);
      row.abs_err = std::abs(row.rescaled - row.reference);
      row.rel_err = row.abs_err / row.reference;
    }
    rows.push_back(row);
  }
  std::ostringstream out;
  csv::write_sweep(out, rows);
  const EigenDefects defects = eigen_defects(sys.stiffness, eig);
  json summary = {{"mode", "eigs"},
                  {"domain", domain_json(cfg.domain)},
                  {"n_int", mesh.n_int()},
                  {"horizon", truncated ? "truncated" : "infinite"},
                  {"multiplicities", cluster_multiplicities(eig.values)},
                  {"max_residual", defects.max_residual},
                  {"orthonormality", defects.orthonormality}};
  return {out.str(), summary, true};
}

Outcome run_sweep(const RunConfig& cfg) {
  const SweepReport report =
      cfg.mode == RunMode::sweep_zero
          ? sweep_zero(cfg.domain, cfg.s, cfg.m, cfg.deltas, cfg.k)
          : sweep_infty(cfg.domain, cfg.s, cfg.n_int, cfg.ms, cfg.k);
  std::ostringstream out;
  csv::write_sweep(out, report.rows);
  return {out.str(), report_summary(report), true};
}

Outcome run_check(const RunConfig& cfg) {
  const std::vector<CDeltaRow> rows = check_c_delta(cfg.domain, cfg.s, cfg.n_int, cfg.ms);
  std::ostringstream out;
  csv::write_check(out, rows);
  bool passed = true;
  for (const CDeltaRow& r : rows) passed = passed && r.pass;
  return {out.str(), {{"mode", "check"}, {"domain", domain_json(cfg.domain)}, {"passed", passed}},
          passed};
}

Outcome dispatch(const RunConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::constants:
      return run_constants(cfg);
    case RunMode::solve:
      return run_solve(cfg);
    case RunMode::eigs:
      return run_eigs(cfg);
    case RunMode::sweep_zero:
    case RunMode::sweep_infty:
      return run_sweep(cfg);
    case RunMode::check:
      return run_check(cfg);
  }
  throw ConfigError("unhandled mode");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& fallback, std::ostream& log) {
  try {
    const Outcome outcome = dispatch(config);
    if (config.output) {
      write_file(*config.output, outcome.csv);
    } else {
      fallback << outcome.csv;
    }
    if (config.summary) write_file(*config.summary, outcome.summary.dump(2) + "\n");
    if (!outcome.checks_passed) {
      log << "error: norm comparison bound violated on at least one row\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const InvariantViolation& e) {
    log << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace nonlocal
