// actchain: activity-chain reconstruction pipeline driver.
//
// Usage: actchain <subcommand> [--config file.json] [--set key=value]...
// Logging goes to stderr; stdout carries one machine-readable JSON summary.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "actchain/config.hpp"
#include "actchain/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"activity-chain reconstruction pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  if (const char* env = std::getenv("ACTCHAIN_CONFIG")) config_path = env;
  std::vector<std::string> overrides;
  int threads = -1;

  app.add_option("--config,-c", config_path, "JSON config file");
  app.add_option("--set", overrides, "dotted-path override, key=value")
      ->take_all();
  app.add_option("--threads", threads, "worker cap (0 = hardware default)");

  const std::vector<std::string> names = {"synth",    "ingest", "stays",
                                          "label",    "profiles", "infer",
                                          "validate", "lda",    "sweep",
                                          "analytics", "all"};
  for (const auto& n : names) app.add_subcommand(n)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string stage = app.get_subcommands().front()->get_name();

  try {
    actchain::PipelineConfig cfg;
    if (!config_path.empty()) cfg = actchain::PipelineConfig::load(config_path);
    for (const auto& kv : overrides) cfg.apply_override(kv);
    if (threads >= 0) cfg.threads = threads;

    std::cerr << "[actchain] stage " << stage << " -> " << cfg.io.out_dir << "\n";
    const nlohmann::json summary = actchain::run_stage(stage, cfg);
    std::cout << summary.dump() << "\n";
    return 0;
  } catch (const actchain::MissingInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
