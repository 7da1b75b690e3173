#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/assembly.hpp"
#include "nonlocal/harness.hpp"
#include "nonlocal/mesh.hpp"
#include "nonlocal/solvers.hpp"

namespace nonlocal {

enum class RunMode { solve, eigs, sweep_zero, sweep_infty, check, constants };

std::string_view mode_name(RunMode mode) noexcept;
/// "solve", "eigs", "sweep-zero", "sweep-infty", "check", "constants".
RunMode parse_mode(std::string_view text);

/// Validated run description. Keys per mode:
///   solve        s, n_int, m (infinite horizon: m optional), rhs, method, horizon, rescaled
///   eigs         s, n_int, m (infinite horizon: m optional), k, horizon
///   sweep-zero   s, m, deltas, k
///   sweep-infty  s, n_int, ms, k
///   check        s, n_int, ms
///   constants    N (list), s_values (list)
/// domain, output and summary are accepted by every mode.
struct RunConfig {
  RunMode mode = RunMode::eigs;
  Interval domain;
  double s = 0.0;
  int n_int = 0;
  NodeIndex m = 0;
  std::vector<NodeIndex> ms;
  std::vector<double> deltas;
  int k = 5;
  LoadPreset rhs = LoadPreset::one();
  LinearMethod method = LinearMethod::cholesky;
  HorizonMode horizon = HorizonMode::truncated;
  bool rescaled = false;
  std::vector<int> dims;
  std::vector<double> s_values;
  std::optional<std::string> output;
  std::optional<std::string> summary;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON document. Throws ConfigError naming the
/// offending key (unknown, missing for the mode, or out of range).
RunConfig parse_config(std::string_view text);

/// JSON text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace nonlocal
