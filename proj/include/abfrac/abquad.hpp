/**
 * @file abquad.hpp
 * @brief Product quadrature for the Atangana-Baleanu fractional integral and
 *        the Caputo-sense AB derivative on uniform grids.
 *
 * The power-law kernel is integrated exactly over each subinterval, which gives
 * the jump weights b_j = (j+1)^alpha - j^alpha; only the smooth factor is
 * approximated (interval average for the trapezoid variant, right endpoint for
 * the rectangle variant). All schemes are direct O(n^2) history sums.
 */
#pragma once

#include "abfrac/errors.hpp"
#include "abfrac/specfun.hpp"
#include "abfrac/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abfrac {

template <typename Scalar>
Scalar normalization(const FracOrder<Scalar>& alpha) {
  const Scalar a = alpha.value();
  return Scalar(1) - a + a / gamma_fn(a);
}

/// Precomputed weights for a fractional order on a step size tau.
template <typename Scalar = double>
struct ABWeights {
  FracOrder<Scalar> alpha;
  Vector<Scalar> b;   ///< b[j] = (j+1)^alpha - j^alpha, j = 0..n-1
  Scalar B_alpha;     ///< 1 - alpha + alpha / Gamma(alpha)
  Scalar lambda;      ///< -alpha / (1 - alpha), Mittag-Leffler kernel rate
  Scalar c_alpha;     ///< alpha tau^alpha / (B(alpha) Gamma(alpha + 1))
  Scalar tau;

  /// (1 - alpha) / B(alpha), the weight of the local term.
  Scalar local_factor() const { return (Scalar(1) - alpha.value()) / B_alpha; }
};

/// Weights for n steps of size tau (tau = 1 when only b and B are needed).
template <typename Scalar>
ABWeights<Scalar> jump_weights(const FracOrder<Scalar>& alpha, Index n, Scalar tau = Scalar(1)) {
  if (n < 1) throw std::domain_error("jump_weights requires n >= 1");
  if (!(tau > Scalar(0))) throw std::domain_error("jump_weights requires tau > 0");
  const Scalar a = alpha.value();
  Vector<Scalar> b(n);
  b[0] = Scalar(1);
  for (Index j = 1; j < n; ++j) {
    // j^a ((1 + 1/j)^a - 1), free of the cancellation in (j+1)^a - j^a
    const Scalar jj = Scalar(j);
    b[j] = std::pow(jj, a) * std::expm1(a * std::log1p(Scalar(1) / jj));
  }
  const Scalar B = normalization(alpha);
  const Scalar c = a * std::pow(tau, a) / (B * gamma_fn(a + Scalar(1)));
  return ABWeights<Scalar>{alpha, std::move(b), B, -a / (Scalar(1) - a), c, tau};
}

template <typename Scalar>
ABWeights<Scalar> jump_weights(const FracOrder<Scalar>& alpha, const UniformTimeGrid<Scalar>& grid) {
  return jump_weights(alpha, grid.steps(), grid.step());
}

/// Riemann-Liouville integral of order alpha by product trapezoid:
/// out[k] = tau^alpha / Gamma(alpha+1) sum_{j<k} (f_j + f_{j+1})/2 b_{k-1-j}.
template <typename Scalar>
SampledSignal<Scalar> rl_integral_trapezoid(const SampledSignal<Scalar>& f,
                                            const FracOrder<Scalar>& alpha) {
  const auto& grid = f.grid();
  const Index n = grid.steps();
  const auto w = jump_weights(alpha, n);
  const Vector<Scalar>& v = f.values();
  const Vector<Scalar> avg = Scalar(0.5) * (v.head(n) + v.tail(n));
  const Scalar scale = std::pow(grid.step(), alpha.value()) / gamma_fn(alpha.value() + Scalar(1));

  Vector<Scalar> out = Vector<Scalar>::Zero(n + 1);
  for (Index k = 1; k <= n; ++k) {
    out[k] = scale * avg.head(k).dot(w.b.head(k).reverse());
  }
  return SampledSignal<Scalar>(grid, std::move(out));
}

/// AB integral, trapezoid variant: (1-alpha)/B f_k + alpha/B RL[f](t_k).
template <typename Scalar>
SampledSignal<Scalar> ab_integral_trapezoid(const SampledSignal<Scalar>& f,
                                            const FracOrder<Scalar>& alpha) {
  const Scalar a = alpha.value();
  const Scalar B = normalization(alpha);
  const auto rl = rl_integral_trapezoid(f, alpha);
  Vector<Scalar> out = ((Scalar(1) - a) / B) * f.values() + (a / B) * rl.values();
  return SampledSignal<Scalar>(f.grid(), std::move(out));
}

/// AB integral, rectangle (right endpoint) variant.
template <typename Scalar>
SampledSignal<Scalar> ab_integral_rectangle(const SampledSignal<Scalar>& f,
                                            const FracOrder<Scalar>& alpha) {
  const auto& grid = f.grid();
  const Index n = grid.steps();
  const auto w = jump_weights(alpha, grid);
  const Vector<Scalar>& v = f.values();

  Vector<Scalar> out = w.local_factor() * v;
  for (Index k = 1; k <= n; ++k) {
    out[k] += w.c_alpha * v.segment(1, k).dot(w.b.head(k).reverse());
  }
  return SampledSignal<Scalar>(grid, std::move(out));
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> gauss_legendre(int points) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (points < 1) throw std::domain_error("gauss_legendre requires at least one point");
  Matrix jacobi = Matrix::Zero(points, points);
  for (int i = 1; i < points; ++i) {
    const Scalar off = Scalar(i) / std::sqrt(Scalar(4) * Scalar(i) * Scalar(i) - Scalar(1));
    jacobi(i, i - 1) = off;
    jacobi(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi);
  Vector<Scalar> nodes = eig.eigenvalues();
  Vector<Scalar> weights = Scalar(2) * eig.eigenvectors().row(0).transpose().array().square();
  return {std::move(nodes), std::move(weights)};
}

/// Kernel moments w[m] = int_{(m-1)tau}^{m tau} E_alpha(lambda u^alpha) du for
/// m = 1..n (w[0] = 0), each by `quad_pts`-point Gauss-Legendre.
template <typename Scalar>
Vector<Scalar> kernel_moments(const FracOrder<Scalar>& alpha, const UniformTimeGrid<Scalar>& grid,
                              int quad_pts) {
  if (quad_pts < 2) throw std::domain_error("kernel_moments requires quad_pts >= 2");
  const Scalar a = alpha.value();
  const Scalar lambda = -a / (Scalar(1) - a);
  const MLParams<Scalar> ml(a, Scalar(1));
  const auto [nodes, weights] = gauss_legendre<Scalar>(quad_pts);
  const Scalar tau = grid.step();
  const Scalar half = tau / Scalar(2);

  Vector<Scalar> w = Vector<Scalar>::Zero(grid.steps() + 1);
  for (Index m = 1; m <= grid.steps(); ++m) {
    const Scalar mid = (Scalar(m) - Scalar(0.5)) * tau;
    Scalar acc = Scalar(0);
    for (int q = 0; q < quad_pts; ++q) {
      const Scalar u = mid + half * nodes[q];
      acc += weights[q] * mittag_leffler(ml, lambda * std::pow(u, a));
    }
    w[m] = half * acc;
  }
  return w;
}

/// Caputo-sense AB derivative with piecewise-linear f:
/// out[k] = B/(1-alpha) sum_{j<k} (f_{j+1}-f_j)/tau * w[k-j].
template <typename Scalar>
SampledSignal<Scalar> abc_derivative(const SampledSignal<Scalar>& f, const FracOrder<Scalar>& alpha,
                                     int quad_pts = 4) {
  const auto& grid = f.grid();
  const Index n = grid.steps();
  const Vector<Scalar> w = kernel_moments(alpha, grid, quad_pts);
  const Vector<Scalar>& v = f.values();
  const Vector<Scalar> slope = (v.tail(n) - v.head(n)) / grid.step();
  const Scalar scale = normalization(alpha) / (Scalar(1) - alpha.value());

  Vector<Scalar> out = Vector<Scalar>::Zero(n + 1);
  for (Index k = 1; k <= n; ++k) {
    out[k] = scale * slope.head(k).dot(w.segment(1, k).reverse());
  }
  return SampledSignal<Scalar>(grid, std::move(out));
}

/// Least-squares slope of log(error) against log(step), the step halving
/// between consecutive entries. Throws DegenerateConvergence when an error is
/// exactly zero.
template <typename Scalar>
Scalar estimate_convergence_order(std::span<const Scalar> errors) {
  if (errors.size() < 2) {
    throw std::invalid_argument("estimate_convergence_order needs at least two errors");
  }
  for (const Scalar e : errors) {
    if (e == Scalar(0)) throw DegenerateConvergence("error vanished: scheme is exact");
    if (!(e > Scalar(0)) || !std::isfinite(static_cast<double>(e))) {
      throw std::invalid_argument("errors must be positive and finite");
    }
  }
  const Index m = static_cast<Index>(errors.size());
  Vector<Scalar> x(m);
  Vector<Scalar> y(m);
  for (Index i = 0; i < m; ++i) {
    x[i] = -Scalar(i) * std::log(Scalar(2));
    y[i] = std::log(errors[static_cast<std::size_t>(i)]);
  }
  const Vector<Scalar> dx = x.array() - x.mean();
  const Vector<Scalar> dy = y.array() - y.mean();
  return dx.dot(dy) / dx.squaredNorm();
}

template <typename Scalar>
Scalar estimate_convergence_order(const std::vector<Scalar>& errors) {
  return estimate_convergence_order(std::span<const Scalar>(errors));
}

/// Order of convergence, or nullopt when every error is at or below
/// `exact_threshold` (the scheme reproduces the reference).
template <typename Scalar>
std::optional<Scalar> convergence_order_or_exact(std::span<const Scalar> errors,
                                                 Scalar exact_threshold) {
  const bool exact = std::all_of(errors.begin(), errors.end(),
                                 [&](Scalar e) { return std::abs(e) <= exact_threshold; });
  if (exact) return std::nullopt;
  return estimate_convergence_order(errors);
}

}  // namespace abfrac
