#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nonlocal/config.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/run.hpp"

using namespace nonlocal;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nonlocal_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("valid configurations") {
  const RunConfig e = parse_config(
      R"({"mode":"eigs","domain":{"a":0,"b":1},"s":0.25,"n_int":128,"m":8,"k":3})");
  CHECK(e.mode == RunMode::eigs);
  CHECK(e.n_int == 128);
  CHECK(e.m == 8);
  CHECK(e.k == 3);
  CHECK(e.method == LinearMethod::cholesky);
  CHECK(e.rhs == LoadPreset::one());

  const RunConfig z = parse_config(R"({"mode":"sweep-zero","deltas":[0.2,0.1],"s":0.25,"m":8})");
  CHECK(z.deltas == std::vector<double>{0.2, 0.1});
  CHECK(z.k == 5);
  CHECK(z.domain == Interval{0.0, 1.0});

  const RunConfig c = parse_config(R"({"mode":"constants","s_values":[0.5]})");
  CHECK(c.dims == std::vector<int>{1});
}

TEST_CASE("errors name the key") {
  CHECK(error_of(R"({"mode":"eigs","s":1.5,"n_int":8,"m":2})").find("'s'") != std::string::npos);
  CHECK(error_of(R"({"mode":"eigs","s":0.5,"n_int":8,"m":2,"bogus":1})").find("bogus") !=
        std::string::npos);
  const std::string missing = error_of(R"({"mode":"sweep-infty","s":0.5,"ms":[8,16]})");
  CHECK(missing.find("sweep-infty") != std::string::npos);
  CHECK(missing.find("n_int") != std::string::npos);
  CHECK(error_of(R"({"mode":"nope"})").find("nope") != std::string::npos);
  CHECK(error_of("{not json").find("malformed") != std::string::npos);
  CHECK(error_of(R"({"mode":"sweep-zero","deltas":[0.1,0.2],"s":0.25,"m":8})").find("deltas") !=
        std::string::npos);
  CHECK(error_of(R"({"mode":"sweep-zero","deltas":[0.3],"s":0.25,"m":8})") != "");
  CHECK(error_of(R"({"mode":"eigs","s":0.5,"n_int":8,"m":2,"k":8})").find("k") != std::string::npos);
  CHECK(error_of(R"({"mode":"solve","s":0.5,"n_int":8,"m":2,"rhs":"cos"})").find("cos") !=
        std::string::npos);
  CHECK(error_of(R"({"mode":"eigs","s":0.5,"n_int":8.5,"m":2})").find("n_int") != std::string::npos);
  CHECK(error_of(R"({"mode":"eigs","domain":{"a":1,"b":0},"s":0.5,"n_int":8,"m":2})") != "");
}

TEST_CASE("parse(serialize(config)) round trip") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::uniform_int_distribution<int> small(2, 400);
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig cfg;
    cfg.mode = static_cast<RunMode>(trial % 6);
    cfg.domain = {-unit(rng), 1.0 + unit(rng)};
    if (trial % 3 == 0) cfg.output = "out_" + std::to_string(trial) + ".csv";
    if (trial % 4 == 0) cfg.summary = "summary.json";
    if (cfg.mode == RunMode::constants) {
      cfg.dims = {1, small(rng)};
      cfg.s_values = {unit(rng), unit(rng)};
    } else {
      cfg.s = unit(rng);
    }
    switch (cfg.mode) {
      case RunMode::solve:
        cfg.rhs = trial % 2 ? LoadPreset::sine(trial) : LoadPreset::zero();
        cfg.method = trial % 4 < 2 ? LinearMethod::cg : LinearMethod::cholesky;
        cfg.rescaled = trial % 3 == 1;
        [[fallthrough]];
      case RunMode::eigs:
        cfg.n_int = small(rng);
        cfg.m = small(rng);
        if (cfg.mode == RunMode::eigs) cfg.k = std::min(cfg.n_int - 1, 3);
        break;
      case RunMode::sweep_zero: {
        cfg.m = 8;
        const double length = cfg.domain.length();
        cfg.deltas = {length * 8 / 16, length * 8 / 32, length * 8 / 64};
        break;
      }
      case RunMode::sweep_infty:
      case RunMode::check:
        cfg.n_int = 16;
        cfg.ms = {1, 7, 16, NodeIndex{1} << 45};
        if (cfg.mode == RunMode::sweep_infty) cfg.k = 2;
        break;
      case RunMode::constants:
        break;
    }
    INFO(serialize_config(cfg));
    CHECK(parse_config(serialize_config(cfg)) == cfg);
  }
}

TEST_CASE("CSV number formatting is shortest round-trip") {
  CHECK(csv::format(0.1) == "0.1");
  CHECK(csv::format(2.0) == "2");
  CHECK(csv::format(0.0) == "0");
  CHECK(csv::format(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(csv::format(0.3183098861837907)) == 0.3183098861837907);
  CHECK(csv::format(std::int64_t{-42}) == "-42");
}

TEST_CASE("constants run writes the exact row") {
  const std::string path = temp_path("constants.csv");
  RunConfig cfg = parse_config(R"({"mode":"constants","N":[1],"s_values":[0.5]})");
  cfg.output = path;
  std::ostringstream out, log;
  CHECK(run(cfg, out, log) == kExitOk);
  CHECK(slurp(path) == "N,s,c_ns,kappa,sigma,gamma\n1,0.5,0.3183098861837907,3.141592653589793,2,2\n");
  std::remove(path.c_str());
}

TEST_CASE("solve with zero load writes zeros") {
  RunConfig cfg =
      parse_config(R"({"mode":"solve","s":0.5,"n_int":8,"m":2,"rhs":"zero","method":"cg"})");
  std::ostringstream out, log;
  CHECK(run(cfg, out, log) == kExitOk);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "i,x,u");
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "0");
    ++count;
  }
  CHECK(count == 9);
}

TEST_CASE("unwritable output is an I/O error with status 1") {
  RunConfig cfg = parse_config(R"({"mode":"constants","s_values":[0.5]})");
  cfg.output = "/nonexistent-dir/x/out.csv";
  std::ostringstream out, log;
  CHECK(run(cfg, out, log) == kExitError);
  CHECK(log.str().find("cannot open") != std::string::npos);
}

TEST_CASE("runs are byte-for-byte deterministic") {
  const RunConfig cfg =
      parse_config(R"({"mode":"sweep-zero","s":0.25,"m":4,"deltas":[0.25,0.125],"k":3})");
  std::ostringstream a, b, log;
  CHECK(run(cfg, a, log) == kExitOk);
  CHECK(run(cfg, b, log) == kExitOk);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(std::string(csv::kSweepHeader) + "\n", 0) == 0);
}

TEST_CASE("sweep-zero acceptance configuration") {
  const RunConfig cfg = parse_config(
      R"({"mode":"sweep-zero","s":0.25,"m":8,"deltas":[0.2,0.1,0.05,0.025],"k":3})");
  std::ostringstream out, log;
  REQUIRE(run(cfg, out, log) == kExitOk);
  std::istringstream lines(out.str());
  std::string line, last_k1;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() == 10 && cells[4] == "1") last_k1 = cells[9];
  }
  REQUIRE(!last_k1.empty());
  CHECK(std::stod(last_k1) <= 0.02);
}

TEST_CASE("check and eigs modes") {
  std::ostringstream out, log;
  const RunConfig check = parse_config(R"({"mode":"check","s":0.25,"n_int":16,"ms":[4,16,64]})");
  CHECK(run(check, out, log) == kExitOk);
  CHECK(out.str().rfind("delta,ratio,C_delta,pass\n", 0) == 0);

  std::ostringstream eig;
  const RunConfig infinite =
      parse_config(R"({"mode":"eigs","s":0.25,"n_int":16,"horizon":"infinite","k":2})");
  CHECK(infinite.m == 16);
  CHECK(run(infinite, eig, log) == kExitOk);
}
