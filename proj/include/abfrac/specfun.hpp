/**
 * @file specfun.hpp
 * @brief Gamma, real-argument Mittag-Leffler, and the Bessel functions J0 and K0.
 *
 * Everything here is a pure function of its arguments and is templated on the
 * floating-point scalar. Domain violations raise std::domain_error; a
 * Mittag-Leffler series that cannot reach its tolerance raises ConvergenceError.
 */
#pragma once

#include "abfrac/errors.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace abfrac {

/// Parameters of E_{alpha,beta}: 0 < alpha <= 1, beta > 0.
template <std::floating_point Scalar = double>
struct MLParams {
  Scalar alpha;
  Scalar beta;

  MLParams(Scalar a, Scalar b) : alpha(a), beta(b) {
    if (!(a > Scalar(0) && a <= Scalar(1))) {
      throw std::domain_error("Mittag-Leffler alpha must lie in (0,1], got " +
                              std::to_string(static_cast<double>(a)));
    }
    if (!(b > Scalar(0)) || !std::isfinite(static_cast<double>(b))) {
      throw std::domain_error("Mittag-Leffler beta must be positive, got " +
                              std::to_string(static_cast<double>(b)));
    }
  }
};

inline constexpr int kMittagLefflerTermCap = 10000;
inline constexpr double kMittagLefflerMaxArgument = 50.0;

template <std::floating_point Scalar>
constexpr Scalar default_ml_tolerance() {
  return Scalar(16) * std::numeric_limits<Scalar>::epsilon();
}

template <std::floating_point Scalar>
Scalar gamma_fn(Scalar x) {
  if (!(x > Scalar(0))) {
    throw std::domain_error("gamma_fn requires x > 0, got " + std::to_string(static_cast<double>(x)));
  }
  return std::tgamma(x);
}

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) for real |z| <= 50.
///
/// Summation stops once the current term and the geometric tail estimate
/// |t_k| r / (1 - r), r = |t_k / t_{k-1}|, are both below `tol`. The term ratio
/// of this series decreases monotonically once the gamma growth dominates, so
/// the estimate bounds the remainder from that point on.
template <std::floating_point Scalar>
Scalar mittag_leffler(const MLParams<Scalar>& p, Scalar z,
                      Scalar tol = default_ml_tolerance<Scalar>()) {
  using std::abs;
  if (!(abs(z) <= Scalar(kMittagLefflerMaxArgument))) {
    throw std::domain_error("mittag_leffler argument outside |z| <= 50: " +
                            std::to_string(static_cast<double>(z)));
  }
  if (!(tol > Scalar(0))) throw std::domain_error("mittag_leffler tolerance must be positive");

  // Beyond this gamma argument std::tgamma overflows in double.
  constexpr Scalar kDirectGammaLimit = Scalar(170);
  const Scalar log_abs_z = abs(z) > Scalar(0) ? std::log(abs(z)) : Scalar(0);

  Scalar sum = Scalar(1) / std::tgamma(p.beta);
  Scalar previous = sum;
  for (int k = 1; k <= kMittagLefflerTermCap; ++k) {
    const Scalar g = p.alpha * Scalar(k) + p.beta;
    Scalar term;
    const Scalar power = std::pow(z, Scalar(k));
    if (g < kDirectGammaLimit && std::isfinite(static_cast<double>(power))) {
      term = power / std::tgamma(g);
    } else {
      const Scalar sign = (z < Scalar(0) && (k % 2) == 1) ? Scalar(-1) : Scalar(1);
      term = sign * std::exp(Scalar(k) * log_abs_z - std::lgamma(g));
    }
    if (!std::isfinite(static_cast<double>(term))) {
      throw ConvergenceError("mittag_leffler series overflowed at term " + std::to_string(k));
    }
    sum += term;

    const Scalar magnitude = abs(term);
    if (magnitude == Scalar(0)) return sum;
    const Scalar ratio = previous != Scalar(0) ? magnitude / abs(previous) : Scalar(0);
    if (magnitude < tol && ratio < Scalar(1)) {
      const Scalar tail = magnitude * ratio / (Scalar(1) - ratio);
      if (tail < tol) return sum;
    }
    previous = term;
  }
  throw ConvergenceError("mittag_leffler did not converge within " +
                         std::to_string(kMittagLefflerTermCap) + " terms (z = " +
                         std::to_string(static_cast<double>(z)) + ")");
}

namespace detail {

inline constexpr double kJ0BranchSwitch = 12.0;
inline constexpr double kK0BranchSwitch = 2.0;

// sum (-1)^k (x^2/4)^k / (k!)^2
template <std::floating_point Scalar>
Scalar bessel_j0_series(Scalar x) {
  const Scalar q = x * x / Scalar(4);
  Scalar term = Scalar(1);
  Scalar sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (Scalar(k) * Scalar(k));
    sum += term;
    if (Scalar(k) > x && std::abs(term) < std::numeric_limits<Scalar>::epsilon() * Scalar(1e-2)) break;
  }
  return sum;
}

// Hankel expansion J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
// Summed until the terms stop decreasing.
template <std::floating_point Scalar>
Scalar bessel_j0_asymptotic(Scalar x) {
  Scalar p = Scalar(0);
  Scalar q = Scalar(0);
  Scalar coeff = Scalar(1);  // prod_{j<=k} (2j-1)^2 / (k! 8^k)
  Scalar inv_pow = Scalar(1);
  Scalar last = std::numeric_limits<Scalar>::infinity();
  for (int k = 0; k < 80; ++k) {
    const Scalar term = coeff * inv_pow;
    if (term > last) break;
    const Scalar sign = ((k / 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q -= sign * term;
    }
    if (term < std::numeric_limits<Scalar>::epsilon() * Scalar(1e-2)) break;
    last = term;
    const Scalar odd = Scalar(2 * k + 1);
    coeff *= odd * odd / (Scalar(8) * Scalar(k + 1));
    inv_pow /= x;
  }
  const Scalar chi = x - std::numbers::pi_v<Scalar> / Scalar(4);
  return std::sqrt(Scalar(2) / (std::numbers::pi_v<Scalar> * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

// K0 = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 H_k
template <std::floating_point Scalar>
Scalar bessel_k0_series(Scalar x) {
  const Scalar q = x * x / Scalar(4);
  Scalar term = Scalar(1);
  Scalar i0 = Scalar(1);
  Scalar harmonic = Scalar(0);
  Scalar tail = Scalar(0);
  for (int k = 1; k < 200; ++k) {
    term *= q / (Scalar(k) * Scalar(k));
    harmonic += Scalar(1) / Scalar(k);
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < std::numeric_limits<Scalar>::epsilon() * Scalar(1e-2) * tail) break;
  }
  return -(std::log(x / Scalar(2)) + std::numbers::egamma_v<Scalar>) * i0 + tail;
}

// K0(x) = int_0^inf exp(-x cosh t) dt. The integrand is analytic in the strip
// |Im t| < pi/2, so the trapezoid rule converges like exp(-pi^2 / h).
template <std::floating_point Scalar>
Scalar bessel_k0_integral(Scalar x) {
  constexpr Scalar h = Scalar(0.1);
  constexpr Scalar cutoff = Scalar(745);
  Scalar sum = Scalar(0.5) * std::exp(-x);
  for (Scalar t = h;; t += h) {
    const Scalar arg = x * std::cosh(t);
    if (arg > cutoff) break;
    sum += std::exp(-arg);
  }
  return h * sum;
}

}  // namespace detail

/// J0(x) for x >= 0: power series below x = 12, Hankel asymptotic form above.
template <std::floating_point Scalar>
Scalar bessel_j0(Scalar x) {
  if (!(x >= Scalar(0))) throw std::domain_error("bessel_j0 requires x >= 0");
  return x <= Scalar(detail::kJ0BranchSwitch) ? detail::bessel_j0_series(x)
                                              : detail::bessel_j0_asymptotic(x);
}

/// Modified Bessel K0(x), x > 0.
template <std::floating_point Scalar>
Scalar bessel_k0(Scalar x) {
  if (!(x > Scalar(0))) throw std::domain_error("bessel_k0 requires x > 0 (K0 diverges at 0)");
  return x <= Scalar(detail::kK0BranchSwitch) ? detail::bessel_k0_series(x)
                                              : detail::bessel_k0_integral(x);
}

}  // namespace abfrac
