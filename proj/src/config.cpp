#include "nonlocal/config.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>

#include <json.hpp>

#include "nonlocal/constants.hpp"
#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<RunMode, std::string_view>, 6> kModes{{
    {RunMode::solve, "solve"},
    {RunMode::eigs, "eigs"},
    {RunMode::sweep_zero, "sweep-zero"},
    {RunMode::sweep_infty, "sweep-infty"},
    {RunMode::check, "check"},
    {RunMode::constants, "constants"},
}};

std::set<std::string> allowed_keys(RunMode mode) {
  std::set<std::string> keys{"mode", "domain", "output", "summary"};
  switch (mode) {
    case RunMode::solve:
      keys.insert({"s", "n_int", "m", "rhs", "method", "horizon", "rescaled"});
      break;
    case RunMode::eigs:
      keys.insert({"s", "n_int", "m", "k", "horizon"});
      break;
    case RunMode::sweep_zero:
      keys.insert({"s", "m", "deltas", "k"});
      break;
    case RunMode::sweep_infty:
      keys.insert({"s", "n_int", "ms", "k"});
      break;
    case RunMode::check:
      keys.insert({"s", "n_int", "ms"});
      break;
    case RunMode::constants:
      keys.insert({"N", "s_values"});
      break;
  }
  return keys;
}

class Reader {
 public:
  Reader(const json& doc, RunMode mode) : doc_(doc), mode_(mode) {}

  bool has(const char* key) const { return doc_.contains(key); }

  const json& require(const char* key) const {
    if (!doc_.contains(key)) {
      throw ConfigError("mode '" + std::string(mode_name(mode_)) + "' requires field '" + key +
                        "'");
    }
    return doc_.at(key);
  }

  static double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("field '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("field '" + key + "' must be finite");
    return x;
  }

  static std::int64_t integer(const json& v, const std::string& key) {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() &&
          v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ConfigError("field '" + key + "' is out of range");
      }
      return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
    }
    throw ConfigError("field '" + key + "' must be an integer");
  }

  static const json& array(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty()) {
      throw ConfigError("field '" + key + "' must be a non-empty array");
    }
    return v;
  }

  static std::string string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("field '" + key + "' must be a string");
    return v.get<std::string>();
  }

 private:
  const json& doc_;
  RunMode mode_;
};

double read_s(const json& v, const std::string& key) {
  const double s = Reader::number(v, key);
  if (!(s > 0.0 && s < 1.0)) {
    throw ConfigError("field '" + key + "' = " + v.dump() + " is out of range (0 < s < 1)");
  }
  return s;
}

int read_positive_int(const json& v, const std::string& key, std::int64_t minimum) {
  const std::int64_t x = Reader::integer(v, key);
  if (x < minimum || x > INT32_MAX) {
    throw ConfigError("field '" + key + "' = " + v.dump() + " is out of range (>= " +
                      std::to_string(minimum) + ")");
  }
  return static_cast<int>(x);
}

NodeIndex read_m(const json& v, const std::string& key) {
  const std::int64_t m = Reader::integer(v, key);
  if (m < 1) throw ConfigError("field '" + key + "' = " + v.dump() + " must be >= 1");
  return m;
}

}  // namespace

std::string_view mode_name(RunMode mode) noexcept {
  for (const auto& [value, name] : kModes) {
    if (value == mode) return name;
  }
  return "unknown";
}

RunMode parse_mode(std::string_view text) {
  for (const auto& [value, name] : kModes) {
    if (name == text) return value;
  }
  throw ConfigError("unknown mode '" + std::string(text) +
                    "' (expected solve, eigs, sweep-zero, sweep-infty, check or constants)");
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  if (!doc.contains("mode")) throw ConfigError("missing required field 'mode'");

  RunConfig cfg;
  cfg.mode = parse_mode(Reader::string(doc.at("mode"), "mode"));
  const std::set<std::string> allowed = allowed_keys(cfg.mode);
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' for mode '" +
                        std::string(mode_name(cfg.mode)) + "'");
    }
  }
  const Reader in(doc, cfg.mode);

  if (in.has("domain")) {
    const json& d = doc.at("domain");
    if (!d.is_object()) throw ConfigError("field 'domain' must be an object {a, b}");
    for (const auto& item : d.items()) {
      if (item.key() != "a" && item.key() != "b") {
        throw ConfigError("unknown key 'domain." + item.key() + "'");
      }
    }
    if (d.contains("a")) cfg.domain.a = Reader::number(d.at("a"), "domain.a");
    if (d.contains("b")) cfg.domain.b = Reader::number(d.at("b"), "domain.b");
    if (!(cfg.domain.a < cfg.domain.b)) throw ConfigError("domain requires a < b");
  }
  if (in.has("output")) cfg.output = Reader::string(doc.at("output"), "output");
  if (in.has("summary")) cfg.summary = Reader::string(doc.at("summary"), "summary");

  if (cfg.mode == RunMode::constants) {
    for (const json& v : Reader::array(in.require("s_values"), "s_values")) {
      cfg.s_values.push_back(read_s(v, "s_values"));
    }
    if (in.has("N")) {
      for (const json& v : Reader::array(doc.at("N"), "N")) {
        cfg.dims.push_back(read_positive_int(v, "N", 1));
      }
    } else {
      cfg.dims = {1};
    }
    return cfg;
  }

  cfg.s = read_s(in.require("s"), "s");
  if (in.has("horizon")) {
    const std::string h = Reader::string(doc.at("horizon"), "horizon");
    if (h == "truncated") {
      cfg.horizon = HorizonMode::truncated;
    } else if (h == "infinite") {
      cfg.horizon = HorizonMode::infinite;
    } else {
      throw ConfigError("field 'horizon' must be 'truncated' or 'infinite'");
    }
  }
  if (allowed.contains("k") && in.has("k")) {
    cfg.k = read_positive_int(doc.at("k"), "k", 1);
  }
  if (allowed.contains("n_int")) cfg.n_int = read_positive_int(in.require("n_int"), "n_int", 2);

  switch (cfg.mode) {
    case RunMode::solve:
    case RunMode::eigs:
      if (cfg.horizon == HorizonMode::infinite && !in.has("m")) {
        cfg.m = cfg.n_int;
      } else {
        cfg.m = read_m(in.require("m"), "m");
      }
      if (cfg.mode == RunMode::eigs && cfg.k > cfg.n_int - 1) {
        throw ConfigError("field 'k' exceeds the number of free unknowns n_int - 1");
      }
      break;
    case RunMode::sweep_zero: {
      cfg.m = read_m(in.require("m"), "m");
      for (const json& v : Reader::array(in.require("deltas"), "deltas")) {
        const double d = Reader::number(v, "deltas");
        if (!(d > 0.0)) throw ConfigError("field 'deltas' must hold positive values");
        cfg.deltas.push_back(d);
      }
      for (std::size_t i = 1; i < cfg.deltas.size(); ++i) {
        if (!(cfg.deltas[i] < cfg.deltas[i - 1])) {
          throw ConfigError("field 'deltas' must be strictly decreasing");
        }
      }
      for (double d : cfg.deltas) derive_n_int(cfg.domain.length(), cfg.m, d);
      break;
    }
    case RunMode::sweep_infty:
    case RunMode::check:
      for (const json& v : Reader::array(in.require("ms"), "ms")) cfg.ms.push_back(read_m(v, "ms"));
      for (std::size_t i = 1; i < cfg.ms.size(); ++i) {
        if (cfg.ms[i] <= cfg.ms[i - 1]) throw ConfigError("field 'ms' must be strictly increasing");
      }
      if (cfg.ms.back() < cfg.n_int) {
        throw ConfigError("field 'ms' must reach m >= n_int (delta >= b - a)");
      }
      break;
    case RunMode::constants:
      break;
  }

  if (cfg.mode == RunMode::solve) {
    if (in.has("rhs")) cfg.rhs = LoadPreset::parse(Reader::string(doc.at("rhs"), "rhs"));
    if (in.has("method")) {
      const std::string m = Reader::string(doc.at("method"), "method");
      if (m == "cholesky") {
        cfg.method = LinearMethod::cholesky;
      } else if (m == "cg") {
        cfg.method = LinearMethod::cg;
      } else {
        throw ConfigError("field 'method' must be 'cholesky' or 'cg'");
      }
    }
    if (in.has("rescaled")) {
      if (!doc.at("rescaled").is_boolean()) throw ConfigError("field 'rescaled' must be a boolean");
      cfg.rescaled = doc.at("rescaled").get<bool>();
    }
    if (cfg.rescaled && cfg.horizon == HorizonMode::infinite) {
      throw ConfigError("field 'rescaled' only applies to the truncated horizon");
    }
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json doc;
  doc["mode"] = std::string(mode_name(cfg.mode));
  doc["domain"] = {{"a", cfg.domain.a}, {"b", cfg.domain.b}};
  if (cfg.output) doc["output"] = *cfg.output;
  if (cfg.summary) doc["summary"] = *cfg.summary;
  if (cfg.mode == RunMode::constants) {
    doc["N"] = cfg.dims;
    doc["s_values"] = cfg.s_values;
    return doc.dump();
  }
  doc["s"] = cfg.s;
  switch (cfg.mode) {
    case RunMode::solve:
      doc["rhs"] = cfg.rhs.to_string();
      doc["method"] = cfg.method == LinearMethod::cholesky ? "cholesky" : "cg";
      doc["rescaled"] = cfg.rescaled;
      [[fallthrough]];
    case RunMode::eigs:
      doc["n_int"] = cfg.n_int;
      doc["m"] = cfg.m;
      doc["horizon"] = cfg.horizon == HorizonMode::truncated ? "truncated" : "infinite";
      if (cfg.mode == RunMode::eigs) doc["k"] = cfg.k;
      break;
    case RunMode::sweep_zero:
      doc["m"] = cfg.m;
      doc["deltas"] = cfg.deltas;
      doc["k"] = cfg.k;
      break;
    case RunMode::sweep_infty:
      doc["k"] = cfg.k;
      [[fallthrough]];
    case RunMode::check:
      doc["n_int"] = cfg.n_int;
      doc["ms"] = cfg.ms;
      break;
    case RunMode::constants:
      break;
  }
  return doc.dump();
}

}  // namespace nonlocal
