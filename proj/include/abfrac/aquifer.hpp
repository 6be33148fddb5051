/**
 * @file aquifer.hpp
 * @brief Implicit finite-difference solver for radial flow in a leaky aquifer
 *        with an Atangana-Baleanu (Caputo) time derivative.
 *
 *   beta^2 D_t^alpha phi = phi_rr + phi_r / r - phi / varpi^2,  r in (0, 1]
 *
 * The equation is rewritten as phi(t) - phi(0) = AB-integral of g(phi), where
 * g is the scaled spatial operator, and the integral is discretized with the
 * product trapezoid rule. Each step solves one tridiagonal system.
 *
 * Spatial nodes are r_i = i / M for i = 1..M; node 1 is the well face and node M
 * the outer boundary, both Dirichlet. HeadField column c holds node i = c + 1.
 */
#pragma once

#include "abfrac/abquad.hpp"
#include "abfrac/tridiagonal.hpp"
#include "abfrac/types.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace abfrac {

/// Physical coefficients. varpi = K D c and beta^2 = S c / varpi^2.
class AquiferParams {
 public:
  AquiferParams(double storage, double conductivity, double thickness, double leakage);

  double storage() const noexcept { return S_; }
  double conductivity() const noexcept { return K_; }
  double thickness() const noexcept { return D_; }
  double leakage() const noexcept { return c_; }
  double varpi() const noexcept { return K_ * D_ * c_; }
  double beta_sq() const noexcept { return S_ * c_ / (varpi() * varpi()); }

 private:
  double S_, K_, D_, c_;
};

class SpatialGrid {
 public:
  explicit SpatialGrid(Index nodes);

  Index size() const noexcept { return M_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(M_); }
  /// r_i for the 1-based node index i.
  double radius(Index i) const noexcept { return static_cast<double>(i) * spacing(); }
  Eigen::VectorXd radii() const;

 private:
  Index M_;
};

/// Initial profile h over the nodes plus constant Dirichlet values at the well
/// (node 1) and the outer boundary (node M).
struct BoundaryConditions {
  double phi_c = 0.0;
  Eigen::VectorXd initial;
  double outer = 1.0;

  /// Linear profile from phi_c at r_1 to outer at r = 1.
  static BoundaryConditions linear_drawdown(const SpatialGrid& grid, double phi_c, double outer);
  static BoundaryConditions constant(const SpatialGrid& grid, double value);

  void validate(const SpatialGrid& grid) const;
  /// True when the initial profile already matches both Dirichlet values.
  bool endpoints_consistent(double tol = 1e-12) const;
  /// Initial profile with its end nodes overwritten by the Dirichlet values.
  Eigen::VectorXd pinned_initial() const;

  BoundaryConditions scaled(double factor) const;
};

/// phi_i^k for k = 0..N (rows) and nodes i = 1..M (columns).
class HeadField {
 public:
  HeadField(SpatialGrid space, UniformTimeGrid<double> time);

  const SpatialGrid& space() const noexcept { return space_; }
  const UniformTimeGrid<double>& time() const noexcept { return time_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

  /// Number of time levels written so far.
  Index filled_rows() const noexcept { return filled_; }
  auto row(Index k) const { return values_.row(k); }
  void set_row(Index k, const Eigen::VectorXd& phi);

 private:
  SpatialGrid space_;
  UniformTimeGrid<double> time_;
  Eigen::MatrixXd values_;
  Index filled_ = 0;
};

struct SimulationOptions {
  double horizon = 1.0;
  /// Treat the newest history term explicitly (g at level k instead of k+1).
  bool history_lag = false;
};

/// (beta^-2 / xi^2) [(1 + 1/2i) phi_{i+1} - (2 + xi^2/varpi^2) phi_i + (1 - 1/2i) phi_{i-1}]
/// at the interior 1-based node i (2 <= i <= M-1). `row` is indexed by column.
double spatial_operator(const Eigen::Ref<const Eigen::VectorXd>& row, Index i,
                        const AquiferParams& params, const SpatialGrid& grid);

/// spatial_operator at every interior node; zero at the two Dirichlet nodes.
Eigen::VectorXd apply_spatial_operator(const Eigen::Ref<const Eigen::VectorXd>& row,
                                       const AquiferParams& params, const SpatialGrid& grid);

/// Linear system for level k+1 given levels 0..k of `history`.
TridiagonalSystem<double> assemble_step(Index k, const HeadField& history,
                                        const AquiferParams& params, const SpatialGrid& grid,
                                        const ABWeights<double>& weights,
                                        const BoundaryConditions& bc, bool history_lag = false);

HeadField simulate(const AquiferParams& params, const SpatialGrid& grid,
                   const BoundaryConditions& bc, const FracOrder<double>& alpha, Index steps,
                   const SimulationOptions& options = {});

/// Discrete stationary profile: g(phi) = 0 inside, phi_c and outer at the ends.
Eigen::VectorXd steady_state(const AquiferParams& params, const SpatialGrid& grid, double phi_c,
                             double outer);

struct SelfConvergenceReport {
  std::vector<Index> steps;         ///< N, 2N, 4N
  std::vector<double> differences;  ///< max-norm of successive final-row differences
  std::optional<double> eoc;        ///< nullopt when the differences are below 1e-10
};

inline constexpr double kSelfConvergenceExactThreshold = 1e-10;

SelfConvergenceReport self_convergence(const AquiferParams& params, const BoundaryConditions& bc,
                                       const FracOrder<double>& alpha, Index base_steps,
                                       const SpatialGrid& grid,
                                       const SimulationOptions& options = {});

}  // namespace abfrac
