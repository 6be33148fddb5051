#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace abfrac {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Fractional order, strictly inside (0, 1).
template <typename Scalar = double>
class FracOrder {
 public:
  explicit FracOrder(Scalar alpha) : alpha_(alpha) {
    if (!(alpha > Scalar(0) && alpha < Scalar(1))) {
      throw std::domain_error("fractional order must lie in (0,1), got " +
                              std::to_string(static_cast<double>(alpha)));
    }
  }

  Scalar value() const noexcept { return alpha_; }

 private:
  Scalar alpha_;
};

/// Equispaced nodes t_k = k * tau on [0, T], k = 0..n.
template <typename Scalar = double>
class UniformTimeGrid {
 public:
  UniformTimeGrid(Scalar horizon, Index steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > Scalar(0)) || !std::isfinite(static_cast<double>(horizon))) {
      throw std::domain_error("time horizon must be positive and finite");
    }
    if (steps < 1) throw std::domain_error("time grid needs at least one step");
    tau_ = horizon_ / Scalar(steps_);
  }

  Scalar horizon() const noexcept { return horizon_; }
  Index steps() const noexcept { return steps_; }
  Scalar step() const noexcept { return tau_; }
  Scalar node(Index k) const noexcept { return Scalar(k) * tau_; }

  Vector<Scalar> nodes() const {
    return Vector<Scalar>::LinSpaced(steps_ + 1, Scalar(0), Scalar(steps_)) * tau_;
  }

 private:
  Scalar horizon_;
  Index steps_;
  Scalar tau_;
};

/// Function samples on a UniformTimeGrid: values[k] = f(t_k).
template <typename Scalar = double>
class SampledSignal {
 public:
  SampledSignal(UniformTimeGrid<Scalar> grid, Vector<Scalar> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.steps() + 1) {
      throw std::invalid_argument("signal length " + std::to_string(values_.size()) +
                                  " does not match grid with " +
                                  std::to_string(grid_.steps() + 1) + " nodes");
    }
    if (!values_.allFinite()) throw std::domain_error("signal contains non-finite samples");
  }

  template <typename F>
  static SampledSignal sample(const UniformTimeGrid<Scalar>& grid, F&& f) {
    Vector<Scalar> v(grid.steps() + 1);
    for (Index k = 0; k <= grid.steps(); ++k) v[k] = f(grid.node(k));
    return SampledSignal(grid, std::move(v));
  }

  const UniformTimeGrid<Scalar>& grid() const noexcept { return grid_; }
  const Vector<Scalar>& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  Scalar operator[](Index k) const { return values_[k]; }

 private:
  UniformTimeGrid<Scalar> grid_;
  Vector<Scalar> values_;
};

}  // namespace abfrac
