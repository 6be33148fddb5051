#include "abfrac/selfcheck.hpp"

#include "abfrac/abquad.hpp"
#include "abfrac/aquifer.hpp"
#include "abfrac/reference.hpp"
#include "abfrac/specfun.hpp"
#include "abfrac/test_functions.hpp"

#include <cmath>
#include <algorithm>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace abfrac {

Vector<double> library_weight_source(double alpha, Index n) {
  return jump_weights(FracOrder<double>(alpha), n).b;
}

Vector<double> sign_flipped_weight_source(double alpha, Index n) {
  return -library_weight_source(alpha, n);
}

namespace {

std::string le(double bound) {
  std::ostringstream os;
  os << "<= " << bound;
  return os.str();
}

std::string ge(double bound) {
  std::ostringstream os;
  os << ">= " << bound;
  return os.str();
}

std::string within(double lo, double hi) {
  std::ostringstream os;
  os << "in [" << lo << ", " << hi << "]";
  return os.str();
}

constexpr double kOrders[] = {0.3, 0.5, 0.9};

void weight_checks(const SelfCheckOptions& options, std::vector<CheckResult>& out) {
  constexpr Index kMaxTerms = 4096;
  double b0_dev = 0.0;
  double min_weight = 1.0;
  double telescoping = 0.0;
  for (const double a : {0.1, 0.5, 0.9}) {
    const Vector<double> b = options.weights(a, kMaxTerms);
    b0_dev = std::max(b0_dev, std::abs(b[0] - 1.0));
    min_weight = std::min(min_weight, b.minCoeff());
    double partial = 0.0;
    for (Index m = 1; m <= kMaxTerms; ++m) {
      partial += b[m - 1];
      telescoping = std::max(telescoping, std::abs(partial - std::pow(double(m), a)));
    }
  }
  out.push_back({"weights.b0_is_one", b0_dev == 0.0, b0_dev, "== 0"});
  out.push_back({"weights.positive", min_weight > 0.0, min_weight, "> 0"});
  out.push_back({"weights.telescoping", telescoping <= 1e-10, telescoping, le(1e-10)});
}

void quadrature_checks(std::vector<CheckResult>& out) {
  double worst_const = 0.0;
  for (const double a : kOrders) {
    const FracOrder<double> alpha(a);
    const UniformTimeGrid<double> grid(1.0, 1000);
    const auto one = SampledSignal<double>::sample(grid, [](double) { return 1.0; });
    const auto I = ab_integral_trapezoid(one, alpha);
    for (Index k = 0; k <= grid.steps(); ++k) {
      const double exact = *ab_integral_closed_form(TestFunction::Constant, alpha, grid.node(k));
      worst_const = std::max(worst_const, std::abs(I[k] - exact) / std::abs(exact));
    }
  }
  out.push_back({"ab_trapezoid.constant_exact", worst_const <= 1e-12, worst_const, le(1e-12)});

  for (const double a : kOrders) {
    const auto study = study_ab_trapezoid(TestFunction::Quadratic, FracOrder<double>(a), 1.0,
                                          {64, 128, 256, 512, 1024});
    const double eoc = study.eoc.value_or(0.0);
    out.push_back({"ab_trapezoid.order_t2_alpha_" + std::to_string(a).substr(0, 3),
                   eoc >= 0.9 && eoc <= 1.5, eoc, within(0.9, 1.5)});
  }

  // linearity on random data
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const UniformTimeGrid<double> grid(1.0, 200);
  Vector<double> f(grid.steps() + 1);
  Vector<double> g(grid.steps() + 1);
  for (Index k = 0; k <= grid.steps(); ++k) {
    f[k] = unif(rng);
    g[k] = unif(rng);
  }
  const double sa = 1.7;
  const double sb = -0.6;
  double linearity = 0.0;
  for (const double a : kOrders) {
    const FracOrder<double> alpha(a);
    const auto lhs = ab_integral_trapezoid(SampledSignal<double>(grid, sa * f + sb * g), alpha);
    const auto If = ab_integral_trapezoid(SampledSignal<double>(grid, f), alpha);
    const auto Ig = ab_integral_trapezoid(SampledSignal<double>(grid, g), alpha);
    linearity = std::max(
        linearity, (lhs.values() - sa * If.values() - sb * Ig.values()).cwiseAbs().maxCoeff());
  }
  out.push_back({"ab_trapezoid.linearity", linearity <= 1e-12, linearity, le(1e-12)});
}

void specfun_checks(std::vector<CheckResult>& out) {
  double ml_exp = 0.0;
  const MLParams<double> unit(1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double z = -5.0 + 10.0 * i / 49.0;
    ml_exp = std::max(ml_exp, std::abs(mittag_leffler(unit, z) - std::exp(z)));
  }
  out.push_back({"specfun.ml_exp_identity", ml_exp <= 1e-10, ml_exp, le(1e-10)});

  double recurrence = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.1 + (20.0 - 0.1) * i / 400.0;
    const double gx1 = gamma_fn(x + 1.0);
    recurrence = std::max(recurrence, std::abs(gx1 - x * gamma_fn(x)) / gx1);
  }
  out.push_back({"specfun.gamma_recurrence", recurrence <= 1e-11, recurrence, le(1e-11)});

  const double j0_zero = std::abs(bessel_j0(2.404825557695773));
  out.push_back({"specfun.j0_first_zero", j0_zero <= 1e-9, j0_zero, le(1e-9)});
}

void inverse_relation_check(std::vector<CheckResult>& out) {
  const FracOrder<double> alpha(0.5);
  std::vector<double> errors;
  for (const Index n : {32, 64, 128, 256}) {
    const UniformTimeGrid<double> grid(1.0, n);
    const auto f = SampledSignal<double>::sample(grid, [](double t) { return t * t; });
    const auto back = ab_integral_trapezoid(abc_derivative(f, alpha), alpha);
    errors.push_back((back.values() - (f.values().array() - f[0]).matrix()).cwiseAbs().maxCoeff());
  }
  const double eoc = estimate_convergence_order(errors);
  out.push_back({"abc_derivative.inverse_relation_eoc", eoc >= 0.8, eoc, ge(0.8)});
}

void solver_checks(std::vector<CheckResult>& out) {
  const AquiferParams params(1.0, 1.0, 1.0, 1.0);
  {
    const SpatialGrid grid(100);
    const auto bc = BoundaryConditions::linear_drawdown(grid, 0.0, 1.0);
    const FracOrder<double> alpha(0.5);
    const auto base = simulate(params, grid, bc, alpha, 100);
    const auto doubled = simulate(params, grid, bc.scaled(2.0), alpha, 100);
    const double dev = (doubled.values() - 2.0 * base.values()).cwiseAbs().maxCoeff();
    out.push_back({"aquifer.linearity", dev <= 1e-9, dev, le(1e-9)});
  }
  {
    const SpatialGrid grid(200);
    const auto bc = BoundaryConditions::linear_drawdown(grid, 0.0, 1.0);
    const auto report = self_convergence(params, bc, FracOrder<double>(0.5), 50, grid);
    const double eoc = report.eoc.value_or(0.0);
    out.push_back({"aquifer.temporal_eoc", eoc >= 0.7 && eoc <= 1.5, eoc, within(0.7, 1.5)});
  }
}

void reference_checks(const SelfCheckOptions& options, std::vector<CheckResult>& out) {
  struct Case {
    LaplaceTransform F;
    double (*exact)(double);
    double tol;
  };
  const Case cases[] = {
      {[](double p) { return 1.0 / p; }, [](double) { return 1.0; }, 1e-6},
      {[](double p) { return 1.0 / (p * p); }, [](double t) { return t; }, 1e-5},
      {[](double p) { return 1.0 / (p + 1.0); }, [](double t) { return std::exp(-t); }, 1e-4},
  };
  double worst_ratio = 0.0;  // error / tolerance
  for (const auto& c : cases) {
    for (const double t : {0.5, 1.0, 2.0}) {
      worst_ratio = std::max(worst_ratio, std::abs(stehfest_invert(c.F, t, options.crosscheck.stehfest_terms) - c.exact(t)) / c.tol);
    }
  }
  out.push_back({"stehfest.known_transforms", worst_ratio <= 1.0, worst_ratio,
                 "error/tolerance <= 1"});

  const auto cross = classical_limit_crosscheck(options.crosscheck);
  out.push_back({"reference.classical_limit_crosscheck", cross.relative_difference <= 0.05,
                 cross.relative_difference, le(0.05)});
}

template <typename F>
void guarded(const char* group, std::vector<CheckResult>& out, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.push_back({std::string(group) + ".exception: " + e.what(), false,
                   std::numeric_limits<double>::quiet_NaN(), "no exception"});
  }
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options) {
  std::vector<CheckResult> results;
  guarded("weights", results, [&] { weight_checks(options, results); });
  guarded("specfun", results, [&] { specfun_checks(results); });
  guarded("ab_trapezoid", results, [&] { quadrature_checks(results); });
  guarded("abc_derivative", results, [&] { inverse_relation_check(results); });
  guarded("aquifer", results, [&] { solver_checks(results); });
  guarded("reference", results, [&] { reference_checks(options, results); });
  return results;
}

}  // namespace abfrac
