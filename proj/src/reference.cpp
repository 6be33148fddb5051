#include "abfrac/reference.hpp"

#include "abfrac/abquad.hpp"
#include "abfrac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace abfrac {

LaplaceParams::LaplaceParams(double p_, FracOrder<double> alpha_, AquiferParams params_)
    : p(p_), alpha(alpha_), params(params_) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::domain_error("Laplace variable p must be > 0");
}

double laplace_q(const LaplaceParams& lp) {
  const double a = lp.alpha.value();
  const double pa = std::pow(lp.p, a);
  const double vp = lp.params.varpi();
  return normalization(lp.alpha) * lp.params.beta_sq() * pa / ((1.0 - a) * pa + a) + 1.0 / (vp * vp);
}

double laplace_head(double r, const LaplaceParams& lp, double A, double B) {
  if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("laplace_head needs r in (0, 1]");
  const double x = r * std::sqrt(laplace_q(lp));
  double value = A * bessel_j0(x);
  if (B != 0.0) {
    if (!(x > 0.0)) throw std::domain_error("K0 branch undefined at r sqrt(q) = 0");
    value += B * bessel_k0(x);
  }
  return value;
}

BesselBranch parse_bessel_branch(const std::string& name) {
  if (name == "k0" || name == "K0") return BesselBranch::K0;
  if (name == "j0" || name == "J0") return BesselBranch::J0;
  throw std::invalid_argument("unknown Bessel branch '" + name + "' (expected k0 or j0)");
}

std::string to_string(BesselBranch branch) { return branch == BesselBranch::K0 ? "k0" : "j0"; }

Eigen::VectorXd stehfest_coefficients(int terms) {
  if (terms < 2 || terms > 30 || terms % 2 != 0) {
    throw std::domain_error("Stehfest term count must be even and in [2, 30]");
  }
  auto factorial = [](int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= static_cast<long double>(i);
    return f;
  };
  const int half = terms / 2;
  Eigen::VectorXd v(terms);
  for (int k = 1; k <= terms; ++k) {
    long double sum = 0.0L;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += std::pow(static_cast<long double>(j), half) * factorial(2 * j) /
             (factorial(half - j) * factorial(j) * factorial(j - 1) * factorial(k - j) *
              factorial(2 * j - k));
    }
    const long double sign = ((k + half) % 2 == 0) ? 1.0L : -1.0L;
    v[k - 1] = static_cast<double>(sign * sum);
  }
  return v;
}

double stehfest_invert(const LaplaceTransform& F, double t, int terms) {
  if (!(t > 0.0)) throw std::domain_error("stehfest_invert needs t > 0");
  if (terms < 8 || terms > 18 || terms % 2 != 0) {
    throw std::domain_error("stehfest_invert supports even term counts 8..18");
  }
  const Eigen::VectorXd v = stehfest_coefficients(terms);
  const double scale = std::numbers::ln2 / t;
  double sum = 0.0;
  for (int k = 1; k <= terms; ++k) sum += v[k - 1] * F(static_cast<double>(k) * scale);
  return scale * sum;
}

StehfestResult stehfest_invert_checked(const LaplaceTransform& F, double t, int terms) {
  const double value = stehfest_invert(F, t, terms);
  const int other = terms >= 10 ? terms - 2 : terms + 2;
  const double companion = stehfest_invert(F, t, other);
  const double spread = std::abs(value - companion) / std::max(std::abs(value), 1e-300);
  return StehfestResult{value, companion, spread, spread > 0.01};
}

CrossCheckResult classical_limit_crosscheck(const CrossCheckConfig& config) {
  const FracOrder<double> alpha(config.alpha);
  const AquiferParams params(config.S, config.K, config.D, config.c);
  const SpatialGrid grid(config.M);

  BoundaryConditions bc;
  bc.phi_c = config.phi_c;
  bc.outer = config.outer;
  bc.initial = Eigen::VectorXd::Zero(grid.size());

  const auto field = simulate(params, grid, bc, alpha, config.N, SimulationOptions{config.horizon});
  const Index probe_node = std::clamp<Index>(
      static_cast<Index>(std::lround(config.probe_radius / grid.spacing())), 2, grid.size() - 1);
  const double r = grid.radius(probe_node);
  const double solver_value = field.values()(config.N, probe_node - 1);

  const double r_well = grid.radius(1);
  const LaplaceTransform transform = [&](double p) {
    const LaplaceParams lp(p, alpha, params);
    const double root_q = std::sqrt(laplace_q(lp));
    if (config.branch == BesselBranch::K0) {
      const double coeff = config.phi_c / (p * bessel_k0(r_well * root_q));
      return laplace_head(r, lp, 0.0, coeff);
    }
    const double coeff = config.phi_c / (p * bessel_j0(r_well * root_q));
    return laplace_head(r, lp, coeff, 0.0);
  };
  const auto inverted = stehfest_invert_checked(transform, config.horizon, config.stehfest_terms);
  const double rel = std::abs(solver_value - inverted.value) / std::max(std::abs(inverted.value), 1e-300);
  return CrossCheckResult{r, config.horizon, solver_value, inverted.value, rel, inverted.unstable};
}

}  // namespace abfrac
