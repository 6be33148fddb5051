#include "abfrac/cli/config.hpp"

#include "abfrac/reference.hpp"
#include "abfrac/test_functions.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace abfrac::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("field '" + field + "': " + message);
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number, got " + std::string(v.type_name()));
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

Index as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer, got " + std::string(v.type_name()));
  return static_cast<Index>(v.get<long long>());
}

bool as_bool(const json& v, const std::string& field) {
  if (!v.is_boolean()) fail(field, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& field) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(as_number(v, field));
  }
  return out;
}

std::vector<Index> as_integer_list(const json& v, const std::string& field) {
  std::vector<Index> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_integer(v[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(as_integer(v, field));
  }
  return out;
}

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0)) fail(field, "must be > 0, got " + std::to_string(v));
}

void validate_alpha_list(const RunConfig& config) {
  if (config.alpha.empty()) fail("alpha", "needs at least one value");
  for (std::size_t i = 0; i < config.alpha.size(); ++i) {
    const double a = config.alpha[i];
    if (!(a > 0.0 && a < 1.0)) {
      fail("alpha[" + std::to_string(i) + "]", "must lie in (0,1), got " + std::to_string(a));
    }
  }
}

}  // namespace

void apply_json(const json& doc, RunConfig& config) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  static const std::set<std::string> known = {
      "alpha", "T",     "n",     "M",         "N",           "S",
      "K",     "D",     "c",     "phi_c",     "outer",       "initial",
      "snapshots", "history_lag", "stehfest_terms", "function", "bessel_branch"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) fail(key, "unknown key");
    if (key == "alpha") config.alpha = as_number_list(value, key);
    else if (key == "T") config.T = as_number(value, key);
    else if (key == "n") config.n = as_integer_list(value, key);
    else if (key == "M") config.M = as_integer(value, key);
    else if (key == "N") config.N = as_integer(value, key);
    else if (key == "S") config.S = as_number(value, key);
    else if (key == "K") config.K = as_number(value, key);
    else if (key == "D") config.D = as_number(value, key);
    else if (key == "c") config.c = as_number(value, key);
    else if (key == "phi_c") config.phi_c = as_number(value, key);
    else if (key == "outer") config.outer = as_number(value, key);
    else if (key == "snapshots") config.snapshots = as_integer_list(value, key);
    else if (key == "history_lag") config.history_lag = as_bool(value, key);
    else if (key == "stehfest_terms") config.stehfest_terms = static_cast<int>(as_integer(value, key));
    else if (key == "function") config.function = as_string(value, key);
    else if (key == "bessel_branch") config.bessel_branch = as_string(value, key);
    else if (key == "initial") {
      if (!value.is_object()) fail(key, "expected an object with 'kind' and optional 'values'");
      for (const auto& [ikey, ivalue] : value.items()) {
        if (ikey == "kind") config.initial_kind = as_string(ivalue, "initial.kind");
        else if (ikey == "values") {
          if (!ivalue.is_array()) fail("initial.values", "expected an array of numbers");
          config.initial_values = as_number_list(ivalue, "initial.values");
        } else {
          fail("initial." + ikey, "unknown key");
        }
      }
    }
  }
}

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    apply_json(doc, config);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const RunConfig& config) {
  json j;
  j["alpha"] = config.alpha;
  j["T"] = config.T;
  j["n"] = config.n;
  j["function"] = config.function;
  j["M"] = config.M;
  j["N"] = config.N;
  j["S"] = config.S;
  j["K"] = config.K;
  j["D"] = config.D;
  j["c"] = config.c;
  j["phi_c"] = config.phi_c;
  j["outer"] = config.outer;
  j["initial"] = {{"kind", config.initial_kind}, {"values", config.initial_values}};
  j["snapshots"] = config.snapshots;
  j["history_lag"] = config.history_lag;
  j["stehfest_terms"] = config.stehfest_terms;
  j["bessel_branch"] = config.bessel_branch;
  return j;
}

void validate_converge(const RunConfig& config) {
  validate_alpha_list(config);
  if (config.alpha.size() != 1) fail("alpha", "converge takes a single order");
  require_positive(config.T, "T");
  try {
    (void)parse_test_function(config.function);
  } catch (const std::invalid_argument& e) {
    fail("function", e.what());
  }
  if (config.n.size() < 2) fail("n", "needs at least two step counts");
  for (std::size_t i = 0; i < config.n.size(); ++i) {
    if (config.n[i] < 1) fail("n[" + std::to_string(i) + "]", "must be >= 1");
    if (i > 0 && config.n[i] != 2 * config.n[i - 1]) {
      fail("n[" + std::to_string(i) + "]", "step counts must double successively");
    }
  }
}

void validate_simulate(const RunConfig& config) {
  validate_alpha_list(config);
  require_positive(config.T, "T");
  require_positive(config.S, "S");
  require_positive(config.K, "K");
  require_positive(config.D, "D");
  require_positive(config.c, "c");
  if (config.M < 3) fail("M", "must be >= 3");
  if (config.N < 1) fail("N", "must be >= 1");
  if (!std::isfinite(config.phi_c)) fail("phi_c", "must be finite");
  if (!std::isfinite(config.outer)) fail("outer", "must be finite");
  if (config.snapshots.empty()) fail("snapshots", "needs at least one time level");
  for (std::size_t i = 0; i < config.snapshots.size(); ++i) {
    const Index k = config.snapshots[i];
    if (k < 0 || k > config.N) {
      fail("snapshots[" + std::to_string(i) + "]",
           "time level " + std::to_string(k) + " outside 0.." + std::to_string(config.N));
    }
  }
  if (config.initial_kind == "custom") {
    if (static_cast<Index>(config.initial_values.size()) != config.M) {
      fail("initial.values", "custom profile needs M = " + std::to_string(config.M) +
                                 " values, got " + std::to_string(config.initial_values.size()));
    }
  } else if (config.initial_kind == "constant") {
    if (config.initial_values.size() > 1) fail("initial.values", "constant profile takes one value");
  } else if (config.initial_kind != "linear") {
    fail("initial.kind", "expected linear, constant or custom, got '" + config.initial_kind + "'");
  }
}

void validate_selfcheck(const RunConfig& config) {
  if (config.stehfest_terms < 8 || config.stehfest_terms > 18 || config.stehfest_terms % 2 != 0) {
    fail("stehfest_terms", "must be even and within 8..18");
  }
  try {
    (void)parse_bessel_branch(config.bessel_branch);
  } catch (const std::invalid_argument& e) {
    fail("bessel_branch", e.what());
  }
}

}  // namespace abfrac::cli
