#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nonlocal/config.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated-horizon fractional Laplacian solver"};
  std::string mode;
  std::string config_path;
  std::string output;
  std::string summary;
  app.add_option("mode", mode, "solve | eigs | sweep-zero | sweep-infty | check | constants")
      ->required();
  app.add_option("--config", config_path, "JSON run description")->required();
  app.add_option("--output", output, "CSV destination (overrides the config; default stdout)");
  app.add_option("--summary", summary, "JSON metadata destination");
  CLI11_PARSE(app, argc, argv);

  nonlocal::RunConfig config;
  try {
    const nonlocal::RunMode requested = nonlocal::parse_mode(mode);
    std::ifstream file(config_path);
    if (!file) throw nonlocal::IoError("cannot read config '" + config_path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    config = nonlocal::parse_config(text.str());
    if (config.mode != requested) {
      throw nonlocal::ConfigError("command-line mode '" + mode + "' does not match config mode '" +
                                  std::string(nonlocal::mode_name(config.mode)) + "'");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nonlocal::kExitError;
  }
  if (!output.empty()) config.output = output;
  if (!summary.empty()) config.summary = summary;
  return nonlocal::run(config, std::cout, std::cerr);
}
