#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abfrac/reference.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace abfrac;

namespace {

const AquiferParams kUnit(1.0, 1.0, 1.0, 1.0);

}  // namespace

TEST_CASE("q symbol values and limits") {
  CHECK(laplace_q(LaplaceParams(1.0, FracOrder<double>(0.5), kUnit)) ==
        doctest::Approx(1.7820947917738781).epsilon(1e-14));

  const AquiferParams p(0.3, 0.5, 2.0, 0.8);  // varpi = 0.8
  const double inv_vp2 = 1.0 / (p.varpi() * p.varpi());
  CHECK(laplace_q(LaplaceParams(1e-14, FracOrder<double>(0.5), p)) == doctest::Approx(inv_vp2).epsilon(1e-6));
  for (const double s : {0.1, 1.0, 7.0}) {
    const double q = laplace_q(LaplaceParams(s, FracOrder<double>(1.0 - 1e-9), p));
    CHECK(q == doctest::Approx(p.beta_sq() * s + inv_vp2).epsilon(1e-6));
  }
  CHECK_THROWS(LaplaceParams(0.0, FracOrder<double>(0.5), p));
}

TEST_CASE("q is increasing in p and bounded below") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> a_dist(0.02, 0.98);
  std::uniform_real_distribution<double> v_dist(0.1, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const AquiferParams p(v_dist(rng), v_dist(rng), v_dist(rng), v_dist(rng));
    const FracOrder<double> alpha(a_dist(rng));
    const double floor = 1.0 / (p.varpi() * p.varpi());
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
      const double s = 100.0 * i / 400.0;
      const double q = laplace_q(LaplaceParams(s, alpha, p));
      CHECK(q >= floor);
      CHECK(q > prev);
      prev = q;
    }
  }
}

TEST_CASE("Laplace-domain head") {
  const LaplaceParams lp(1.0, FracOrder<double>(0.5), kUnit);
  CHECK(laplace_head(1e-9, lp, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(laplace_head(0.4, lp, 0.0, 0.0) == 0.0);
  // S chosen so that q = 4 at p = 1
  const double B = normalization(FracOrder<double>(0.5));
  const LaplaceParams four(1.0, FracOrder<double>(0.5), AquiferParams(3.0 / B, 1.0, 1.0, 1.0));
  CHECK(laplace_q(four) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(laplace_head(1.0, four, 1.0, 0.0) == doctest::Approx(0.22389077914123567).epsilon(1e-12));
  CHECK(laplace_head(0.5, four, 0.0, 2.0) == doctest::Approx(2.0 * std::cyl_bessel_k(0.0, 1.0)).epsilon(1e-12));
  CHECK_THROWS(laplace_head(0.0, lp, 1.0, 0.0));
  CHECK_THROWS(laplace_head(1.5, lp, 1.0, 0.0));
}

TEST_CASE("Bessel branch names") {
  CHECK(parse_bessel_branch("k0") == BesselBranch::K0);
  CHECK(parse_bessel_branch("j0") == BesselBranch::J0);
  CHECK(to_string(BesselBranch::K0) == "k0");
  CHECK_THROWS_AS(parse_bessel_branch("y0"), std::invalid_argument);
}

TEST_CASE("Stehfest coefficients") {
  for (const int n : {8, 10, 12, 14, 16, 18}) {
    const auto v = stehfest_coefficients(n);
    CHECK(std::abs(v.sum()) <= 1e-14 * v.cwiseAbs().sum());
  }
  const auto v = stehfest_coefficients(2);
  CHECK(v[0] == doctest::Approx(2.0));
  CHECK(v[1] == doctest::Approx(-2.0));
  CHECK_THROWS(stehfest_coefficients(7));
  CHECK_THROWS(stehfest_invert([](double p) { return 1.0 / p; }, 1.0, 20));
  CHECK_THROWS(stehfest_invert([](double p) { return 1.0 / p; }, 1.0, 6));
  CHECK_THROWS(stehfest_invert([](double p) { return 1.0 / p; }, 0.0));
}

TEST_CASE("Stehfest inverts known transforms") {
  CHECK(std::abs(stehfest_invert([](double p) { return 1.0 / p; }, 1.0) - 1.0) <= 1e-6);
  CHECK(std::abs(stehfest_invert([](double p) { return 1.0 / (p * p); }, 2.0) - 2.0) <= 1e-5);
  CHECK(std::abs(stehfest_invert([](double p) { return 1.0 / (p + 1.0); }, 1.0) - 0.3678794411714423) <= 1e-4);
  for (const double t : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(std::abs(stehfest_invert([](double p) { return 1.0 / (p * p); }, t) - t) <= 1e-5);
    CHECK(std::abs(stehfest_invert([](double p) { return 1.0 / (p + 1.0); }, t) - std::exp(-t)) <= 1e-4);
  }
}

TEST_CASE("Stehfest 12 and 16 terms agree on smooth transforms") {
  const std::vector<LaplaceTransform> set = {
      [](double p) { return 1.0 / p; },
      [](double p) { return 1.0 / (p * p); },
      [](double p) { return 1.0 / (p + 1.0); },
      [](double p) { return 1.0 / std::sqrt(p); },
      [](double p) { return 1.0 / (p * (p + 0.5)); },
  };
  for (const auto& F : set) {
    for (const double t : {0.5, 1.0, 2.0}) {
      const double a = stehfest_invert(F, t, 12);
      const double b = stehfest_invert(F, t, 16);
      CHECK(std::abs(a - b) <= 1e-3 * std::abs(b));
    }
  }
}

TEST_CASE("Stehfest flags oscillatory originals as unstable") {
  const auto smooth = stehfest_invert_checked([](double p) { return 1.0 / (p + 1.0); }, 1.0);
  CHECK_FALSE(smooth.unstable);
  const auto sine = stehfest_invert_checked([](double p) { return 1.0 / (p * p + 1.0); }, 10.0);
  CHECK(sine.unstable);
}

TEST_CASE("classical-limit cross-check against the K0 Laplace solution") {
  const auto result = classical_limit_crosscheck();
  CHECK(result.radius == doctest::Approx(0.1));
  CHECK_FALSE(result.stehfest_unstable);
  CHECK(result.relative_difference <= 0.05);
}

TEST_CASE("J0 branch does not solve the modified equation") {
  CrossCheckConfig config;
  config.branch = BesselBranch::J0;
  const auto result = classical_limit_crosscheck(config);
  CHECK(result.relative_difference > 0.05);
}
