#pragma once

#include "abfrac/types.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace abfrac::cli {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Effective parameters of one CLI invocation. JSON keys mirror the field
/// names (phi_c, history_lag, ...); flags override file values.
struct RunConfig {
  // quadrature studies
  std::vector<double> alpha{0.5};
  double T = 1.0;
  std::vector<Index> n{64, 128, 256, 512, 1024};
  std::string function = "quadratic";

  // aquifer
  Index M = 350;
  Index N = 350;
  double S = 1.0;
  double K = 1.0;
  double D = 1.0;
  double c = 1.0;
  double phi_c = 0.0;
  double outer = 1.0;
  std::string initial_kind = "linear";
  std::vector<double> initial_values;
  std::vector<Index> snapshots{0, 20, 50};
  bool history_lag = false;

  // reference cross-check
  int stehfest_terms = 14;
  std::string bessel_branch = "k0";

  // output
  std::string out_dir = ".";
  bool plot = false;
  bool json = false;
};

/// Applies the keys of `doc` onto `config`; unknown keys and wrong types raise
/// ConfigError naming the field.
void apply_json(const nlohmann::json& doc, RunConfig& config);

/// Reads and applies a JSON config file. Parse errors report line and column.
void load_config_file(const std::string& path, RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

void validate_converge(const RunConfig& config);
void validate_simulate(const RunConfig& config);
void validate_selfcheck(const RunConfig& config);

}  // namespace abfrac::cli
