#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "specgeo/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"specgeo: numeric experiments on special geometry constructions"};

  std::string command, config_path, out_dir = "out";
  uint64_t seed = 0;
  bool seed_given = false;
  double tol = 0.0;

  app.add_option("--command", command,
                 "curvature-table | group-fuzz | conify-check | rmap-check | "
                 "completeness-probe")
      ->required();
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", seed, "64-bit PRNG seed (overrides the config)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--out", out_dir, "report directory");
  app.add_option("--tol", tol, "primary tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << (e.get_exit_code() == 0 ? "" : "usage error: ") << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in) throw specgeo::ConfigError("cannot read config file " + config_path);
    specgeo::ExperimentConfig cfg;
    cfg.config = specgeo::json::parse(in);
    cfg.command = command;
    cfg.seed = seed_given ? seed : cfg.config.value("seed", uint64_t{0});
    cfg.out_dir = out_dir;
    cfg.tol = tol;

    specgeo::ExperimentResult res = specgeo::run_experiment(cfg);
    std::cout << res.summary.dump(2) << "\n";
    for (const auto& f : res.files) std::cerr << "wrote " << f << "\n";
    return res.exit_code;
  } catch (const specgeo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const specgeo::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
