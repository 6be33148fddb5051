/**
 * @file reference.hpp
 * @brief Laplace-domain solution of the leaky-aquifer problem and a
 *        Gaver-Stehfest inversion used to cross-check the time-domain solver.
 */
#pragma once

#include "abfrac/aquifer.hpp"
#include "abfrac/types.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>

namespace abfrac {

struct LaplaceParams {
  LaplaceParams(double p, FracOrder<double> alpha, AquiferParams params);

  double p;
  FracOrder<double> alpha;
  AquiferParams params;
};

/// q = B(alpha) beta^2 p^alpha / ((1 - alpha) p^alpha + alpha) + varpi^-2
double laplace_q(const LaplaceParams& lp);

/// A J0(r sqrt(q)) + B K0(r sqrt(q)) for r in (0, 1].
double laplace_head(double r, const LaplaceParams& lp, double A, double B);

enum class BesselBranch { J0, K0 };

BesselBranch parse_bessel_branch(const std::string& name);
std::string to_string(BesselBranch branch);

using LaplaceTransform = std::function<double(double)>;

inline constexpr int kDefaultStehfestTerms = 14;

/// Stehfest weights V_1..V_N (index 0 holds V_1). N even, 2 <= N <= 30.
Eigen::VectorXd stehfest_coefficients(int terms);

/// f(t) ~ ln2/t sum_k V_k F(k ln2 / t). `terms` must be even and within 8..18.
double stehfest_invert(const LaplaceTransform& F, double t, int terms = kDefaultStehfestTerms);

struct StehfestResult {
  double value;
  double companion;        ///< same inversion with a neighbouring term count
  double relative_spread;  ///< |value - companion| / max(|value|, tiny)
  bool unstable;           ///< relative_spread > 1%
};

StehfestResult stehfest_invert_checked(const LaplaceTransform& F, double t,
                                       int terms = kDefaultStehfestTerms);

/// Constant-head well test problem: zero initial head, phi = phi_c at the well
/// node for t > 0, phi = outer at r = 1. The Laplace side fits the single
/// branch coefficient from the well condition phi~(r_c, p) = phi_c / p.
struct CrossCheckConfig {
  double alpha = 0.999;
  double S = 0.04;
  double K = 0.2;
  double D = 1.0;
  double c = 1.0;
  Index M = 400;
  Index N = 400;
  double horizon = 0.2;
  double probe_radius = 0.1;
  double phi_c = 1.0;
  double outer = 0.0;
  int stehfest_terms = kDefaultStehfestTerms;
  BesselBranch branch = BesselBranch::K0;
};

struct CrossCheckResult {
  double radius;
  double time;
  double solver;
  double laplace;
  double relative_difference;
  bool stehfest_unstable;
};

CrossCheckResult classical_limit_crosscheck(const CrossCheckConfig& config = {});

}  // namespace abfrac
