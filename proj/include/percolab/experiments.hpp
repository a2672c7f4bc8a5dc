#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "percolab/lattice.hpp"

namespace percolab {

using json = nlohmann::ordered_json;

/// Config/validation failure; carries the offending field name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error("config field '" + field + "': " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

LatticeSpec lattice_spec_from_json(const json& j);
json lattice_spec_to_json(const LatticeSpec& spec);

struct ExperimentResult {
  std::vector<json> estimates;  // {name, value, stderr, n, seed, method}
  std::vector<std::pair<std::string, std::string>> curves;  // name -> CSV text
  std::vector<json> asserts;    // {name, ok, detail}
};

struct Experiment {
  std::string name;
  std::string summary;
  json params;  // parameter name -> short schema string
  std::function<ExperimentResult(const json& config, int workers)> run;
};

const std::vector<Experiment>& experiment_registry();

/// Machine-readable catalog of all experiments.
json list_experiments_json();

struct RunOutcome {
  json report;  // {config, estimates, curves, meta}
  bool asserts_ok = true;
};

/// Runs one experiment config; writes curve CSV files under out_dir when it is
/// nonempty. Throws ConfigError on invalid configs.
RunOutcome run_experiment(const json& config, int workers, const std::string& out_dir);

}  // namespace percolab
