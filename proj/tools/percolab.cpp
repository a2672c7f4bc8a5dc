#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "percolab/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAssertion = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolab: Monte Carlo percolation laboratory"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment config and write a report");
  std::string config_path, out_dir = "percolab-out";
  int workers = 1;
  bool do_assert = false;
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--workers", workers, "sample-level worker threads (0 = auto)");
  run->add_option("--out", out_dir, "output directory for report.json and CSV curves");
  run->add_flag("--assert", do_assert, "exit 3 if any acceptance threshold fails");

  auto* list = app.add_subcommand("list", "print the experiment catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << percolab::list_experiments_json().dump(2) << std::endl;
    return kExitOk;
  }

  percolab::json config;
  {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot open config file: " << config_path << std::endl;
      return kExitValidation;
    }
    try {
      is >> config;
    } catch (const std::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << std::endl;
      return kExitValidation;
    }
  }

  try {
    auto outcome = percolab::run_experiment(config, workers, out_dir);
    std::filesystem::create_directories(out_dir);
    std::ofstream os(std::filesystem::path(out_dir) / "report.json", std::ios::binary);
    os << outcome.report.dump(2) << "\n";
    std::cout << outcome.report.dump(2) << std::endl;
    if (do_assert && !outcome.asserts_ok) {
      std::cerr << "assertion thresholds violated" << std::endl;
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const percolab::ConfigError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitValidation;
  }
}
