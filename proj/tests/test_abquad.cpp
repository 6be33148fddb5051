#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abfrac/abquad.hpp"
#include "abfrac/errors.hpp"
#include "abfrac/test_functions.hpp"

#include <cmath>
#include <random>

using namespace abfrac;

namespace {

double ab_norm(double a) { return 1.0 - a + a / std::tgamma(a); }

double ab_monomial(int m, double a, double t) {
  const double rl = std::tgamma(m + 1.0) / std::tgamma(m + 1.0 + a) * std::pow(t, m + a);
  return ((1.0 - a) * std::pow(t, m) + a * rl) / ab_norm(a);
}

Vector<double> random_vector(std::mt19937& rng, Index n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vector<double> v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST_CASE("FracOrder and grids validate their inputs") {
  CHECK_THROWS_AS(FracOrder<double>(0.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder<double>(1.0), std::domain_error);
  CHECK_NOTHROW(FracOrder<double>(0.5));
  const UniformTimeGrid<double> grid(2.0, 8);
  CHECK(grid.step() == 0.25);
  CHECK(grid.node(8) == doctest::Approx(2.0));
  CHECK_THROWS_AS(SampledSignal<double>(grid, Vector<double>::Zero(3)), std::invalid_argument);
  Vector<double> bad = Vector<double>::Zero(9);
  bad[4] = std::nan("");
  CHECK_THROWS_AS(SampledSignal<double>(grid, bad), std::domain_error);
}

TEST_CASE("normalization values") {
  CHECK(normalization(FracOrder<double>(0.5)) == doctest::Approx(0.7820947917738781).epsilon(1e-14));
  CHECK(normalization(FracOrder<double>(0.9)) == doctest::Approx(0.9422008488215855).epsilon(1e-13));
  CHECK(std::abs(normalization(FracOrder<double>(1.0 - 1e-8)) - 1.0) <= 1e-6);
}

TEST_CASE("jump weights") {
  const auto w = jump_weights(FracOrder<double>(0.5), 10);
  CHECK(w.b[0] == 1.0);
  CHECK(w.b[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(w.b.sum() == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(w.lambda == doctest::Approx(-1.0));
  CHECK_THROWS_AS(jump_weights(FracOrder<double>(0.5), 0), std::domain_error);
}

TEST_CASE("jump weights are positive, decreasing and telescope") {
  for (const double a : {0.1, 0.5, 0.9}) {
    const auto w = jump_weights(FracOrder<double>(a), 4096);
    double partial = 0.0;
    for (Index m = 1; m <= 4096; ++m) {
      partial += w.b[m - 1];
      CHECK(w.b[m - 1] > 0.0);
      if (m > 1) CHECK(w.b[m - 1] < w.b[m - 2]);
      REQUIRE(std::abs(partial - std::pow(double(m), a)) <= 1e-10);
    }
  }
}

TEST_CASE("zero input gives zero output") {
  const UniformTimeGrid<double> grid(1.0, 32);
  const SampledSignal<double> zero(grid, Vector<double>::Zero(33));
  const FracOrder<double> alpha(0.4);
  CHECK(rl_integral_trapezoid(zero, alpha).values().isZero(0.0));
  CHECK(ab_integral_trapezoid(zero, alpha).values().isZero(0.0));
  CHECK(ab_integral_rectangle(zero, alpha).values().isZero(0.0));
}

TEST_CASE("RL trapezoid of t") {
  const UniformTimeGrid<double> grid(1.0, 1024);
  const auto f = SampledSignal<double>::sample(grid, [](double t) { return t; });
  const auto I = rl_integral_trapezoid(f, FracOrder<double>(0.5));
  CHECK(I[1024] == doctest::Approx(0.752252778063675).epsilon(5e-3 / 0.75));
  CHECK(std::abs(I[1024] - 0.752252778063675) <= 5e-3);
}

TEST_CASE("AB trapezoid on constants and t^2") {
  const UniformTimeGrid<double> grid(1.0, 1024);
  const FracOrder<double> alpha(0.5);
  const auto one = SampledSignal<double>::sample(grid, [](double) { return 1.0; });
  CHECK(std::abs(ab_integral_trapezoid(one, alpha)[1024] - 1.3606913058889648) <= 1e-10);
  const auto sq = SampledSignal<double>::sample(grid, [](double t) { return t * t; });
  CHECK(std::abs(ab_integral_trapezoid(sq, alpha)[1024] - 1.0240460870592643) <= 5e-3);
}

TEST_CASE("AB trapezoid is exact on constants at every node") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> c_dist(-5.0, 5.0);
  for (const double a : {0.3, 0.5, 0.9}) {
    const double c = c_dist(rng);
    const UniformTimeGrid<double> grid(1.0, 1000);
    const auto f = SampledSignal<double>::sample(grid, [c](double) { return c; });
    const auto I = ab_integral_trapezoid(f, FracOrder<double>(a));
    for (Index k = 0; k <= 1000; ++k) {
      const double exact = c * ab_monomial(0, a, grid.node(k));
      REQUIRE(std::abs(I[k] - exact) <= 1e-12 * std::abs(exact));
    }
  }
}

TEST_CASE("AB output at t = 0 is only the local term") {
  const UniformTimeGrid<double> grid(1.0, 16);
  const auto f = SampledSignal<double>::sample(grid, [](double t) { return 2.0 + t; });
  const FracOrder<double> alpha(0.7);
  CHECK(ab_integral_trapezoid(f, alpha)[0] == doctest::Approx(0.3 / normalization(alpha) * 2.0));
}

TEST_CASE("rectangle rule agrees with trapezoid on constants and converges on t") {
  const FracOrder<double> alpha(0.5);
  const UniformTimeGrid<double> grid(1.0, 200);
  const auto one = SampledSignal<double>::sample(grid, [](double) { return 1.0; });
  CHECK((ab_integral_rectangle(one, alpha).values() - ab_integral_trapezoid(one, alpha).values())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);

  std::vector<double> errors;
  for (const Index n : {64, 128, 256}) {
    const UniformTimeGrid<double> g(1.0, n);
    const auto f = SampledSignal<double>::sample(g, [](double t) { return t; });
    errors.push_back(std::abs(ab_integral_rectangle(f, alpha)[n] - ab_monomial(1, 0.5, 1.0)));
  }
  CHECK(errors[1] < errors[0]);
  CHECK(errors[2] < errors[1]);
  CHECK(estimate_convergence_order(errors) >= 0.9);
}

TEST_CASE("AB integrals are linear and positivity preserving") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> s_dist(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 10 + trial * 7;
    const UniformTimeGrid<double> grid(1.5, n);
    const FracOrder<double> alpha(0.05 + 0.9 * trial / 19.0);
    const SampledSignal<double> f(grid, random_vector(rng, n + 1, -1.0, 1.0));
    const SampledSignal<double> g(grid, random_vector(rng, n + 1, -1.0, 1.0));
    const double a = s_dist(rng);
    const double b = s_dist(rng);
    const auto lhs = ab_integral_trapezoid(SampledSignal<double>(grid, a * f.values() + b * g.values()), alpha);
    const Vector<double> rhs = a * ab_integral_trapezoid(f, alpha).values() + b * ab_integral_trapezoid(g, alpha).values();
    CHECK((lhs.values() - rhs).cwiseAbs().maxCoeff() <= 1e-12);

    const SampledSignal<double> pos(grid, random_vector(rng, n + 1, 0.0, 1.0));
    CHECK(rl_integral_trapezoid(pos, alpha).values().minCoeff() >= 0.0);
    CHECK(ab_integral_trapezoid(pos, alpha).values().minCoeff() >= 0.0);
    CHECK(ab_integral_rectangle(pos, alpha).values().minCoeff() >= 0.0);
  }
}

TEST_CASE("classical limit approaches the cumulative trapezoid rule") {
  const UniformTimeGrid<double> grid(2.0, 400);
  const auto f = SampledSignal<double>::sample(grid, [](double t) { return std::sin(t); });
  const auto I = ab_integral_trapezoid(f, FracOrder<double>(1.0 - 1e-6));
  double cumulative = 0.0;
  for (Index k = 0; k <= 400; ++k) {
    if (k > 0) cumulative += 0.5 * grid.step() * (f[k - 1] + f[k]);
    REQUIRE(std::abs(I[k] - cumulative) <= 1e-3);
  }
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const auto [x, w] = gauss_legendre<double>(4);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  double m6 = 0.0;
  for (Index i = 0; i < 4; ++i) m6 += w[i] * std::pow(x[i], 6);
  CHECK(m6 == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("ABC derivative of a constant vanishes") {
  const UniformTimeGrid<double> grid(1.0, 64);
  const auto f = SampledSignal<double>::sample(grid, [](double) { return 3.5; });
  CHECK(abc_derivative(f, FracOrder<double>(0.5)).values().cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("ABC derivative of t against the Mittag-Leffler form") {
  const double a = 0.5;
  const UniformTimeGrid<double> grid(1.0, 512);
  const auto f = SampledSignal<double>::sample(grid, [](double t) { return t; });
  const auto d = abc_derivative(f, FracOrder<double>(a), 4);
  const double lambda = -a / (1.0 - a);
  const double oracle =
      ab_norm(a) / (1.0 - a) * mittag_leffler(MLParams<double>(a, 2.0), lambda);
  CHECK(oracle == doctest::Approx(0.8696311318343497).epsilon(1e-12));
  CHECK(std::abs(d[512] - oracle) <= 1e-3);
}

TEST_CASE("AB integral inverts the ABC derivative with first order") {
  for (const double a : {0.5, 0.9}) {
    const FracOrder<double> alpha(a);
    std::vector<double> errors;
    for (const Index n : {32, 64, 128, 256}) {
      const UniformTimeGrid<double> grid(1.0, n);
      const auto f = SampledSignal<double>::sample(grid, [](double t) { return t * t; });
      const auto back = ab_integral_trapezoid(abc_derivative(f, alpha), alpha);
      errors.push_back((back.values().array() - (f.values().array() - f[0])).abs().maxCoeff());
    }
    CHECK(estimate_convergence_order(errors) >= 0.8);
  }
}

TEST_CASE("kernel moments validate quadrature size") {
  const UniformTimeGrid<double> grid(1.0, 8);
  CHECK_THROWS(kernel_moments(FracOrder<double>(0.5), grid, 1));
}

TEST_CASE("estimate_convergence_order") {
  CHECK(estimate_convergence_order(std::vector<double>{0.1, 0.05, 0.025}) == doctest::Approx(1.0));
  CHECK(estimate_convergence_order(std::vector<double>{0.1, 0.025, 0.00625}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(estimate_convergence_order(std::vector<double>{0.1}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_convergence_order(std::vector<double>{0.1, 0.0}), DegenerateConvergence);
  const std::vector<double> tiny{1e-15, 1e-16};
  CHECK_FALSE(convergence_order_or_exact<double>(tiny, 1e-12).has_value());
}

TEST_CASE("AB trapezoid order on t^2") {
  std::vector<double> errors;
  for (const Index n : {64, 128, 256, 512}) {
    const UniformTimeGrid<double> grid(1.0, n);
    const auto f = SampledSignal<double>::sample(grid, [](double t) { return t * t; });
    errors.push_back(std::abs(ab_integral_trapezoid(f, FracOrder<double>(0.5))[n] - ab_monomial(2, 0.5, 1.0)));
  }
  const double eoc = estimate_convergence_order(errors);
  CHECK(eoc >= 0.9);
  CHECK(eoc <= 1.5);
}

TEST_CASE("closed forms used by the convergence study") {
  const FracOrder<double> alpha(0.5);
  CHECK(*ab_integral_closed_form(TestFunction::Quadratic, alpha, 1.0) ==
        doctest::Approx(1.0240460870592643).epsilon(1e-14));
  CHECK(*ab_integral_closed_form(TestFunction::Linear, alpha, 0.7) ==
        doctest::Approx(ab_monomial(1, 0.5, 0.7)).epsilon(1e-14));
  // exp: (1-a)/B e^t + a/B t^a E_{1,1+a}(t); check against a fine-grid study
  const auto e = ab_integral_closed_form(TestFunction::Exponential, alpha, 1.0);
  REQUIRE(e.has_value());
  const UniformTimeGrid<double> grid(1.0, 8192);
  const auto f = SampledSignal<double>::sample(grid, [](double t) { return std::exp(t); });
  CHECK(std::abs(ab_integral_trapezoid(f, alpha)[8192] - *e) <= 1e-3);
  CHECK_FALSE(ab_integral_closed_form(TestFunction::Exponential, alpha, 60.0).has_value());

  const auto study = study_ab_trapezoid(TestFunction::Constant, alpha, 1.0, {64, 128, 256});
  CHECK_FALSE(study.eoc.has_value());
  const auto lin = study_ab_trapezoid(TestFunction::Linear, FracOrder<double>(0.9), 1.0, {64, 128, 256, 512});
  for (std::size_t i = 1; i < lin.rows.size(); ++i) CHECK(lin.rows[i].abs_error < lin.rows[i - 1].abs_error);
}
