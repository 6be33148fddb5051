#pragma once

#include "abfrac/errors.hpp"
#include "abfrac/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace abfrac {

/// A x = rhs with A tridiagonal. lower[i] couples row i+1 to column i,
/// upper[i] couples row i to column i+1.
template <typename Scalar = double>
struct TridiagonalSystem {
  Vector<Scalar> lower;
  Vector<Scalar> diag;
  Vector<Scalar> upper;
  Vector<Scalar> rhs;

  explicit TridiagonalSystem(Index n = 0)
      : lower(Vector<Scalar>::Zero(n > 0 ? n - 1 : 0)),
        diag(Vector<Scalar>::Zero(n)),
        upper(Vector<Scalar>::Zero(n > 0 ? n - 1 : 0)),
        rhs(Vector<Scalar>::Zero(n)) {}

  TridiagonalSystem(Vector<Scalar> lo, Vector<Scalar> d, Vector<Scalar> up, Vector<Scalar> r)
      : lower(std::move(lo)), diag(std::move(d)), upper(std::move(up)), rhs(std::move(r)) {
    validate();
  }

  Index size() const noexcept { return diag.size(); }

  void validate() const {
    const Index n = diag.size();
    if (n < 1 || rhs.size() != n || lower.size() != n - 1 || upper.size() != n - 1) {
      throw std::invalid_argument("tridiagonal system has inconsistent lengths");
    }
  }

  /// A x
  Vector<Scalar> apply(const Vector<Scalar>& x) const {
    Vector<Scalar> y = diag.cwiseProduct(x);
    const Index n = size();
    if (n > 1) {
      y.head(n - 1) += upper.cwiseProduct(x.tail(n - 1));
      y.tail(n - 1) += lower.cwiseProduct(x.head(n - 1));
    }
    return y;
  }

  Vector<Scalar> residual(const Vector<Scalar>& x) const { return apply(x) - rhs; }

  /// min_i |diag_i| - (|lower_{i-1}| + |upper_i|)
  Scalar dominance_margin() const {
    const Index n = size();
    Vector<Scalar> off = Vector<Scalar>::Zero(n);
    if (n > 1) {
      off.head(n - 1) += upper.cwiseAbs();
      off.tail(n - 1) += lower.cwiseAbs();
    }
    return (diag.cwiseAbs() - off).minCoeff();
  }
};

/// Thomas algorithm (no pivoting). Throws SolverBreakdown when a pivot
/// magnitude drops below 1e-14.
template <typename Scalar>
Vector<Scalar> thomas_solve(const TridiagonalSystem<Scalar>& sys) {
  sys.validate();
  constexpr Scalar kMinPivot = Scalar(1e-14);
  const Index n = sys.size();
  Vector<Scalar> c(n);  // modified upper
  Vector<Scalar> d(n);  // modified rhs

  Scalar pivot = sys.diag[0];
  if (!(std::abs(pivot) >= kMinPivot)) throw SolverBreakdown("tridiagonal pivot 0 vanished", -1);
  c[0] = n > 1 ? sys.upper[0] / pivot : Scalar(0);
  d[0] = sys.rhs[0] / pivot;
  for (Index i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
    if (!(std::abs(pivot) >= kMinPivot)) {
      throw SolverBreakdown("tridiagonal pivot " + std::to_string(i) + " vanished", -1);
    }
    c[i] = i + 1 < n ? sys.upper[i] / pivot : Scalar(0);
    d[i] = (sys.rhs[i] - sys.lower[i - 1] * d[i - 1]) / pivot;
  }

  Vector<Scalar> x(n);
  x[n - 1] = d[n - 1];
  for (Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace abfrac
