#include "abfrac/cli/commands.hpp"

#include "abfrac/aquifer.hpp"
#include "abfrac/cli/config.hpp"
#include "abfrac/cli/output.hpp"
#include "abfrac/errors.hpp"
#include "abfrac/reference.hpp"
#include "abfrac/selfcheck.hpp"
#include "abfrac/specfun.hpp"
#include "abfrac/test_functions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace abfrac::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Flag values as parsed; applied over the file config only when given.
struct FlagValues {
  std::string config_path;
  std::string out_dir;
  bool plot = false;
  bool json = false;

  double ml_alpha = 0.0;
  double ml_beta = 1.0;
  double ml_z = 0.0;
  double ml_tol = 1e-15;

  std::vector<double> alpha;
  double T = 1.0;
  std::vector<Index> n;
  std::string function;
  Index M = 0;
  Index N = 0;
  double S = 0, K = 0, D = 0, c = 0;
  double phi_c = 0;
  double outer = 0;
  std::vector<Index> snapshots;
  bool history_lag = false;
  std::string initial_kind;
  int stehfest_terms = 14;
  std::string branch;
  std::string inject_fault;
};

struct Options {
  CLI::Option* config = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* plot = nullptr;
  CLI::Option* json = nullptr;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
};

RunConfig effective_config(const FlagValues& flags, const Options& opts) {
  RunConfig config;
  if (opts.config->count() > 0) load_config_file(flags.config_path, config);
  if (opts.out->count() > 0) config.out_dir = flags.out_dir;
  config.plot = flags.plot;
  config.json = flags.json;
  for (const auto& [option, apply] : opts.overrides) {
    if (option->count() > 0) apply(config);
  }
  return config;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::vector<std::string>& outputs) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = to_json(config);
  manifest["config"]["out_dir"] = config.out_dir;
  manifest["config"]["plot"] = config.plot;
  manifest["outputs"] = outputs;
  write_text_file((fs::path(config.out_dir) / "run_manifest.json").string(), manifest.dump(2) + "\n");
}

int cmd_ml(const FlagValues& flags, std::ostream& out, std::ostream& err) {
  try {
    const MLParams<double> params(flags.ml_alpha, flags.ml_beta);
    const double value = mittag_leffler(params, flags.ml_z, flags.ml_tol);
    if (flags.json) {
      out << json{{"alpha", flags.ml_alpha}, {"beta", flags.ml_beta}, {"z", flags.ml_z},
                  {"value", value}}
                 .dump()
          << "\n";
    } else {
      out << format_double(value) << "\n";
    }
    return kOk;
  } catch (const std::domain_error& e) {
    err << "ml: domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "ml: " << e.what() << "\n";
    return kCheckFailed;
  }
}

int cmd_converge(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate_converge(config);
  const FracOrder<double> alpha(config.alpha.front());
  const TestFunction fn = parse_test_function(config.function);
  if (!ab_integral_closed_form(fn, alpha, config.T)) {
    err << "converge: no closed-form reference for '" << config.function << "' at T = "
        << format_double(config.T) << " (alpha = " << format_double(alpha.value()) << ")\n";
    return kReferenceUnavailable;
  }
  const auto study = study_ab_trapezoid(fn, alpha, config.T, config.n);

  std::string csv = csv_row({"n", "tau", "abs_error_at_T", "eoc"});
  for (const auto& row : study.rows) {
    csv += csv_row({std::to_string(row.n), format_double(row.tau), format_double(row.abs_error),
                    row.local_eoc ? format_double(*row.local_eoc) : ""});
  }
  const std::string summary = study.eoc ? format_double(*study.eoc) : "exact";
  csv += csv_row({"summary", "", "", summary});

  fs::create_directories(config.out_dir);
  std::vector<std::string> outputs{"converge.csv"};
  write_text_file((fs::path(config.out_dir) / "converge.csv").string(), csv);
  if (config.plot) {
    Panel panel{"AB trapezoid, f = " + config.function + ", alpha = " + format_double(alpha.value()),
                "n", "|error at T|", {}, true, true};
    Series s{"end-point error", {}, {}};
    for (const auto& row : study.rows) {
      s.x.push_back(static_cast<double>(row.n));
      s.y.push_back(row.abs_error);
    }
    panel.series.push_back(std::move(s));
    write_text_file((fs::path(config.out_dir) / "converge.svg").string(), render_svg({panel}));
    outputs.emplace_back("converge.svg");
  }
  write_manifest(config, "converge", outputs);

  if (config.json) {
    json j;
    j["function"] = config.function;
    j["alpha"] = alpha.value();
    j["rows"] = json::array();
    for (const auto& row : study.rows) {
      j["rows"].push_back({{"n", row.n},
                           {"tau", row.tau},
                           {"abs_error_at_T", row.abs_error},
                           {"eoc", row.local_eoc ? json(*row.local_eoc) : json(nullptr)}});
    }
    j["eoc"] = study.eoc ? json(*study.eoc) : json("exact");
    out << j.dump(2) << "\n";
  } else {
    out << csv;
  }
  return kOk;
}

BoundaryConditions make_boundary(const RunConfig& config, const SpatialGrid& grid) {
  if (config.initial_kind == "linear") {
    return BoundaryConditions::linear_drawdown(grid, config.phi_c, config.outer);
  }
  BoundaryConditions bc;
  bc.phi_c = config.phi_c;
  bc.outer = config.outer;
  if (config.initial_kind == "constant") {
    const double v = config.initial_values.empty() ? config.phi_c : config.initial_values.front();
    bc.initial = Eigen::VectorXd::Constant(grid.size(), v);
  } else {
    bc.initial = Eigen::Map<const Eigen::VectorXd>(config.initial_values.data(),
                                                   static_cast<Index>(config.initial_values.size()));
  }
  return bc;
}

std::string profiles_csv(const HeadField& field, const std::vector<Index>& snapshots) {
  std::vector<std::string> header{"r"};
  for (const Index k : snapshots) header.push_back("k" + std::to_string(k));
  std::string csv = csv_row(header);
  const Eigen::VectorXd r = field.space().radii();
  for (Index c = 0; c < field.space().size(); ++c) {
    std::vector<std::string> cells{format_double(r[c])};
    for (const Index k : snapshots) cells.push_back(format_double(field.values()(k, c)));
    csv += csv_row(cells);
  }
  return csv;
}

Series profile_series(const HeadField& field, Index k, std::string label) {
  const Eigen::VectorXd r = field.space().radii();
  Series s{std::move(label), {}, {}};
  s.x.assign(r.data(), r.data() + r.size());
  for (Index c = 0; c < field.space().size(); ++c) s.y.push_back(field.values()(k, c));
  return s;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate_simulate(config);
  const AquiferParams params(config.S, config.K, config.D, config.c);
  const SpatialGrid grid(config.M);
  const BoundaryConditions bc = make_boundary(config, grid);
  bc.validate(grid);
  if (!bc.endpoints_consistent()) {
    err << "warning: initial head differs from the Dirichlet values at the end nodes; "
           "overwriting with phi_c and outer\n";
  }

  std::vector<double> orders = config.alpha;
  if (config.plot && orders.size() == 1) orders.push_back(orders.front() == 0.9 ? 0.5 : 0.9);

  const SimulationOptions options{config.T, config.history_lag};
  std::vector<std::future<HeadField>> runs;
  for (const double a : orders) {
    runs.push_back(std::async(std::launch::async, [&, a] {
      return simulate(params, grid, bc, FracOrder<double>(a), config.N, options);
    }));
  }
  std::vector<HeadField> fields;
  std::string breakdown;
  Index breakdown_step = -1;
  for (auto& run : runs) {
    try {
      fields.push_back(run.get());
    } catch (const SolverBreakdown& e) {
      if (breakdown.empty()) {
        breakdown = e.what();
        breakdown_step = e.step();
      }
    }
  }
  if (!breakdown.empty()) {
    err << "simulate: solver breakdown (step " << breakdown_step << "): " << breakdown << "\n";
    return kSolverBreakdown;
  }

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  std::vector<std::string> outputs{"head_profiles.csv"};
  write_text_file((dir / "head_profiles.csv").string(), profiles_csv(fields.front(), config.snapshots));
  if (config.alpha.size() > 1) {
    for (std::size_t i = 0; i < config.alpha.size(); ++i) {
      const std::string name = "head_profiles_alpha" + format_double(config.alpha[i]) + ".csv";
      write_text_file((dir / name).string(), profiles_csv(fields[i], config.snapshots));
      outputs.push_back(name);
    }
  }

  if (config.plot) {
    const Index first = config.snapshots.front();
    const Index last = config.snapshots.back();
    auto alpha_label = [&](std::size_t i) { return "alpha = " + format_double(orders[i]); };

    std::vector<Panel> fig_a;
    for (const Index k : config.snapshots) {
      Panel p{alpha_label(0) + ", k = " + std::to_string(k), "r", "phi", {}};
      p.series.push_back(profile_series(fields[0], k, "k = " + std::to_string(k)));
      fig_a.push_back(std::move(p));
    }
    std::vector<Panel> fig_b;
    for (const Index k : {first, last}) {
      Panel p{"k = " + std::to_string(k), "r", "phi", {}};
      p.series.push_back(profile_series(fields[0], k, alpha_label(0)));
      p.series.push_back(profile_series(fields[1], k, alpha_label(1)));
      fig_b.push_back(std::move(p));
    }
    std::vector<Panel> fig_c;
    for (std::size_t i = 0; i < 2; ++i) {
      Panel p{alpha_label(i), "r", "phi", {}};
      p.series.push_back(profile_series(fields[i], first, "k = " + std::to_string(first)));
      p.series.push_back(profile_series(fields[i], last, "k = " + std::to_string(last)));
      fig_c.push_back(std::move(p));
    }
    write_text_file((dir / "fig_a.svg").string(), render_svg(fig_a));
    write_text_file((dir / "fig_b.svg").string(), render_svg(fig_b));
    write_text_file((dir / "fig_c.svg").string(), render_svg(fig_c));
    outputs.insert(outputs.end(), {"fig_a.svg", "fig_b.svg", "fig_c.svg"});
  }
  write_manifest(config, "simulate", outputs);

  double max_abs = 0.0;
  for (const auto& f : fields) max_abs = std::max(max_abs, f.values().cwiseAbs().maxCoeff());
  if (config.json) {
    out << json{{"outputs", outputs}, {"max_abs_head", max_abs}, {"alpha", orders}}.dump(2) << "\n";
  } else {
    for (const auto& name : outputs) out << "wrote " << (dir / name).string() << "\n";
    out << "max |phi| = " << format_double(max_abs) << "\n";
  }
  return kOk;
}

int cmd_selfcheck(const RunConfig& config, const FlagValues& flags, std::ostream& out,
                  std::ostream& err) {
  validate_selfcheck(config);
  SelfCheckOptions options;
  options.crosscheck.stehfest_terms = config.stehfest_terms;
  options.crosscheck.branch = parse_bessel_branch(config.bessel_branch);
  if (flags.inject_fault == "weight-sign") {
    options.weights = sign_flipped_weight_source;
  } else if (!flags.inject_fault.empty()) {
    err << "selfcheck: unknown fault '" << flags.inject_fault << "'\n";
    return kDomainError;
  }

  const auto results = run_selfcheck(options);
  const bool ok = all_passed(results);
  if (config.json) {
    json j;
    j["passed"] = ok;
    j["checks"] = json::array();
    for (const auto& r : results) {
      j["checks"].push_back({{"name", r.name},
                             {"status", r.passed ? "pass" : "fail"},
                             {"measured", std::isfinite(r.measured) ? json(r.measured) : json(nullptr)},
                             {"criterion", r.criterion}});
    }
    out << j.dump(2) << "\n";
  } else {
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
      std::ostringstream measured;
      measured << std::setprecision(6) << r.measured;
      out << std::left << std::setw(static_cast<int>(width) + 2) << r.name
          << (r.passed ? "PASS  " : "FAIL  ") << std::setw(14) << measured.str() << r.criterion
          << "\n";
    }
    out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Atangana-Baleanu fractional integral toolkit"};
  app.name("abfrac");
  app.require_subcommand(1);

  FlagValues flags;
  Options opts;
  opts.config = app.add_option("--config", flags.config_path, "JSON config file");
  opts.out = app.add_option("--out", flags.out_dir, "output directory");
  opts.plot = app.add_flag("--plot", flags.plot, "also write SVG plots");
  opts.json = app.add_flag("--json", flags.json, "machine-readable stdout");

  auto* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  ml->fallthrough();
  ml->add_option("--alpha", flags.ml_alpha, "order in (0,1]")->required();
  ml->add_option("--beta", flags.ml_beta, "second parameter > 0")->capture_default_str();
  ml->add_option("--z", flags.ml_z, "real argument, |z| <= 50")->required();
  ml->add_option("--tol", flags.ml_tol, "absolute series tolerance")->capture_default_str();

  auto add_override = [&](CLI::Option* option, std::function<void(RunConfig&)> apply) {
    opts.overrides.emplace_back(option, std::move(apply));
  };

  auto* converge = app.add_subcommand("converge", "end-point error study of the AB trapezoid rule");
  converge->fallthrough();
  add_override(converge->add_option("--alpha", flags.alpha, "fractional order")->delimiter(','),
               [&](RunConfig& c) { c.alpha = flags.alpha; });
  add_override(converge->add_option("--T", flags.T, "time horizon"),
               [&](RunConfig& c) { c.T = flags.T; });
  add_override(converge->add_option("--n", flags.n, "step counts (doubling), or one base count")
                   ->delimiter(','),
               [&](RunConfig& c) {
                 c.n = flags.n;
                 if (c.n.size() == 1) {
                   for (int i = 1; i < 5; ++i) c.n.push_back(c.n.back() * 2);
                 }
               });
  add_override(converge->add_option("--function", flags.function, "const|linear|quadratic|exp"),
               [&](RunConfig& c) { c.function = flags.function; });

  auto* sim = app.add_subcommand("simulate", "leaky-aquifer head profiles");
  sim->fallthrough();
  add_override(sim->add_option("--alpha", flags.alpha, "fractional order(s)")->delimiter(','),
               [&](RunConfig& c) { c.alpha = flags.alpha; });
  add_override(sim->add_option("--T", flags.T, "time horizon"), [&](RunConfig& c) { c.T = flags.T; });
  add_override(sim->add_option("--M", flags.M, "spatial nodes"), [&](RunConfig& c) { c.M = flags.M; });
  add_override(sim->add_option("--N", flags.N, "time steps"), [&](RunConfig& c) { c.N = flags.N; });
  add_override(sim->add_option("--S", flags.S, "storage coefficient"), [&](RunConfig& c) { c.S = flags.S; });
  add_override(sim->add_option("--K", flags.K, "hydraulic conductivity"), [&](RunConfig& c) { c.K = flags.K; });
  add_override(sim->add_option("--D", flags.D, "aquifer thickness"), [&](RunConfig& c) { c.D = flags.D; });
  add_override(sim->add_option("--c", flags.c, "leakage parameter"), [&](RunConfig& c) { c.c = flags.c; });
  add_override(sim->add_option("--phi-c", flags.phi_c, "head at the well node"),
               [&](RunConfig& c) { c.phi_c = flags.phi_c; });
  add_override(sim->add_option("--outer", flags.outer, "head at r = 1"),
               [&](RunConfig& c) { c.outer = flags.outer; });
  add_override(sim->add_option("--snapshots", flags.snapshots, "time levels to export")->delimiter(','),
               [&](RunConfig& c) { c.snapshots = flags.snapshots; });
  add_override(sim->add_flag("--history-lag", flags.history_lag, "explicit newest history term"),
               [&](RunConfig& c) { c.history_lag = flags.history_lag; });
  add_override(sim->add_option("--initial", flags.initial_kind, "linear|constant"),
               [&](RunConfig& c) {
                 c.initial_kind = flags.initial_kind;
                 c.initial_values.clear();
               });

  auto* self = app.add_subcommand("selfcheck", "run the invariant suite");
  self->fallthrough();
  add_override(self->add_option("--stehfest-terms", flags.stehfest_terms, "even, 8..18"),
               [&](RunConfig& c) { c.stehfest_terms = flags.stehfest_terms; });
  add_override(self->add_option("--branch", flags.branch, "k0|j0 for the Laplace cross-check"),
               [&](RunConfig& c) { c.bessel_branch = flags.branch; });
  self->add_option("--inject-fault", flags.inject_fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "abfrac: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    if (ml->parsed()) return cmd_ml(flags, out, err);
    const RunConfig config = effective_config(flags, opts);
    if (converge->parsed()) return cmd_converge(config, out, err);
    if (sim->parsed()) return cmd_simulate(config, out, err);
    if (self->parsed()) return cmd_selfcheck(config, flags, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const SolverBreakdown& e) {
    err << "solver breakdown at step " << e.step() << ": " << e.what() << "\n";
    return kSolverBreakdown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kCheckFailed;
}

}  // namespace abfrac::cli
