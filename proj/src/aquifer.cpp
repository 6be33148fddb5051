#include "abfrac/aquifer.hpp"

#include "abfrac/errors.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace abfrac {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

AquiferParams::AquiferParams(double storage, double conductivity, double thickness, double leakage)
    : S_(storage), K_(conductivity), D_(thickness), c_(leakage) {
  require_positive(S_, "storage coefficient S");
  require_positive(K_, "hydraulic conductivity K");
  require_positive(D_, "aquifer thickness D");
  require_positive(c_, "leakage parameter c");
  require_positive(varpi(), "varpi = K D c");
  require_positive(beta_sq(), "beta^2 = S c / varpi^2");
}

SpatialGrid::SpatialGrid(Index nodes) : M_(nodes) {
  if (nodes < 3) throw std::domain_error("spatial grid needs at least 3 nodes");
}

Eigen::VectorXd SpatialGrid::radii() const {
  return Eigen::VectorXd::LinSpaced(M_, 1.0, static_cast<double>(M_)) * spacing();
}

BoundaryConditions BoundaryConditions::linear_drawdown(const SpatialGrid& grid, double phi_c,
                                                       double outer) {
  const Eigen::VectorXd r = grid.radii();
  const double r1 = r[0];
  BoundaryConditions bc;
  bc.phi_c = phi_c;
  bc.outer = outer;
  bc.initial = (phi_c + (outer - phi_c) * (r.array() - r1) / (1.0 - r1)).matrix();
  bc.initial[grid.size() - 1] = outer;
  return bc;
}

BoundaryConditions BoundaryConditions::constant(const SpatialGrid& grid, double value) {
  BoundaryConditions bc;
  bc.phi_c = value;
  bc.outer = value;
  bc.initial = Eigen::VectorXd::Constant(grid.size(), value);
  return bc;
}

void BoundaryConditions::validate(const SpatialGrid& grid) const {
  if (initial.size() != grid.size()) {
    throw std::invalid_argument("initial head has " + std::to_string(initial.size()) +
                                " values, grid has " + std::to_string(grid.size()) + " nodes");
  }
  if (!initial.allFinite() || !std::isfinite(phi_c) || !std::isfinite(outer)) {
    throw std::domain_error("boundary/initial data must be finite");
  }
}

bool BoundaryConditions::endpoints_consistent(double tol) const {
  if (initial.size() == 0) return false;
  return std::abs(initial[0] - phi_c) <= tol && std::abs(initial[initial.size() - 1] - outer) <= tol;
}

Eigen::VectorXd BoundaryConditions::pinned_initial() const {
  Eigen::VectorXd h = initial;
  h[0] = phi_c;
  h[h.size() - 1] = outer;
  return h;
}

BoundaryConditions BoundaryConditions::scaled(double factor) const {
  return BoundaryConditions{factor * phi_c, factor * initial, factor * outer};
}

HeadField::HeadField(SpatialGrid space, UniformTimeGrid<double> time)
    : space_(space),
      time_(time),
      values_(Eigen::MatrixXd::Zero(time.steps() + 1, space.size())) {}

void HeadField::set_row(Index k, const Eigen::VectorXd& phi) {
  if (k != filled_) {
    throw std::out_of_range("head field rows must be written in order; expected row " +
                            std::to_string(filled_) + ", got " + std::to_string(k));
  }
  if (phi.size() != space_.size()) throw std::invalid_argument("head row has wrong length");
  values_.row(k) = phi.transpose();
  ++filled_;
}

double spatial_operator(const Eigen::Ref<const Eigen::VectorXd>& row, Index i,
                        const AquiferParams& params, const SpatialGrid& grid) {
  if (i < 2 || i > grid.size() - 1) {
    throw std::out_of_range("spatial_operator needs an interior node 2..M-1, got " +
                            std::to_string(i));
  }
  const double xi = grid.spacing();
  const double inv_2i = 1.0 / (2.0 * static_cast<double>(i));
  const double vp = params.varpi();
  const Index c = i - 1;
  const double stencil = (1.0 + inv_2i) * row[c + 1] - (2.0 + xi * xi / (vp * vp)) * row[c] +
                         (1.0 - inv_2i) * row[c - 1];
  return stencil / (params.beta_sq() * xi * xi);
}

Eigen::VectorXd apply_spatial_operator(const Eigen::Ref<const Eigen::VectorXd>& row,
                                       const AquiferParams& params, const SpatialGrid& grid) {
  const Index M = grid.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(M);
  for (Index i = 2; i <= M - 1; ++i) g[i - 1] = spatial_operator(row, i, params, grid);
  return g;
}

TridiagonalSystem<double> assemble_step(Index k, const HeadField& history,
                                        const AquiferParams& params, const SpatialGrid& grid,
                                        const ABWeights<double>& weights,
                                        const BoundaryConditions& bc, bool history_lag) {
  if (k < 0 || history.filled_rows() < k + 1) {
    throw std::out_of_range("assemble_step(" + std::to_string(k) + ") needs history rows 0.." +
                            std::to_string(k) + ", have " +
                            std::to_string(history.filled_rows()));
  }
  if (weights.b.size() < k + 1) {
    throw std::out_of_range("jump weights too short for step " + std::to_string(k));
  }
  const Index M = grid.size();
  if (history.space().size() != M) throw std::invalid_argument("history grid mismatch");

  // Memory sum sum_{j=0}^{k} b_j [g(phi^{k-j}) + g(phi^{k-j+1})] without the
  // implicit level-(k+1) part; g is linear, so combine the rows first.
  const auto& b = weights.b;
  Eigen::VectorXd level_weights = Eigen::VectorXd::Zero(k + 1);
  level_weights[k] += history_lag ? 2.0 * b[0] : b[0];
  for (Index j = 1; j <= k; ++j) {
    level_weights[k - j] += b[j];
    level_weights[k - j + 1] += b[j];
  }
  const Eigen::VectorXd combined =
      history.values().topRows(k + 1).transpose() * level_weights;
  const Eigen::VectorXd memory = apply_spatial_operator(combined, params, grid);

  const double implicit = weights.local_factor() + (history_lag ? 0.0 : 0.5 * weights.c_alpha);
  const double xi = grid.spacing();
  const double vp = params.varpi();
  const double s = implicit / (params.beta_sq() * xi * xi);

  TridiagonalSystem<double> sys(M);
  sys.rhs = history.row(0).transpose() + 0.5 * weights.c_alpha * memory;
  for (Index i = 2; i <= M - 1; ++i) {
    const Index c = i - 1;
    const double inv_2i = 1.0 / (2.0 * static_cast<double>(i));
    sys.diag[c] = 1.0 + s * (2.0 + xi * xi / (vp * vp));
    sys.lower[c - 1] = -s * (1.0 - inv_2i);
    sys.upper[c] = -s * (1.0 + inv_2i);
  }
  sys.diag[0] = 1.0;
  sys.rhs[0] = bc.phi_c;
  sys.diag[M - 1] = 1.0;
  sys.rhs[M - 1] = bc.outer;

  assert(sys.dominance_margin() >= 1.0 - 1e-12);
  return sys;
}

HeadField simulate(const AquiferParams& params, const SpatialGrid& grid,
                   const BoundaryConditions& bc, const FracOrder<double>& alpha, Index steps,
                   const SimulationOptions& options) {
  bc.validate(grid);
  HeadField field(grid, UniformTimeGrid<double>(options.horizon, steps));
  const auto weights = jump_weights(alpha, field.time());
  field.set_row(0, bc.pinned_initial());

  for (Index k = 0; k < steps; ++k) {
    const auto sys = assemble_step(k, field, params, grid, weights, bc, options.history_lag);
    Eigen::VectorXd next;
    try {
      next = thomas_solve(sys);
    } catch (const SolverBreakdown& e) {
      throw SolverBreakdown(std::string(e.what()) + " at step " + std::to_string(k + 1), k + 1);
    }
    if (!next.allFinite()) {
      throw SolverBreakdown("non-finite head at step " + std::to_string(k + 1), k + 1);
    }
    next[0] = bc.phi_c;
    next[grid.size() - 1] = bc.outer;
    field.set_row(k + 1, next);
  }
  return field;
}

Eigen::VectorXd steady_state(const AquiferParams& params, const SpatialGrid& grid, double phi_c,
                             double outer) {
  const Index M = grid.size();
  const double xi = grid.spacing();
  const double vp = params.varpi();
  TridiagonalSystem<double> sys(M);
  for (Index i = 2; i <= M - 1; ++i) {
    const Index c = i - 1;
    const double inv_2i = 1.0 / (2.0 * static_cast<double>(i));
    sys.diag[c] = -(2.0 + xi * xi / (vp * vp));
    sys.lower[c - 1] = 1.0 - inv_2i;
    sys.upper[c] = 1.0 + inv_2i;
  }
  sys.diag[0] = 1.0;
  sys.rhs[0] = phi_c;
  sys.diag[M - 1] = 1.0;
  sys.rhs[M - 1] = outer;
  return thomas_solve(sys);
}

SelfConvergenceReport self_convergence(const AquiferParams& params, const BoundaryConditions& bc,
                                       const FracOrder<double>& alpha, Index base_steps,
                                       const SpatialGrid& grid, const SimulationOptions& options) {
  if (base_steps < 32) throw std::domain_error("self_convergence needs base N >= 32");
  SelfConvergenceReport report;
  std::vector<Eigen::VectorXd> finals;
  for (Index level = 0; level < 3; ++level) {
    const Index n = base_steps << level;
    report.steps.push_back(n);
    const auto field = simulate(params, grid, bc, alpha, n, options);
    finals.emplace_back(field.row(n).transpose());
  }
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    report.differences.push_back((finals[i] - finals[i + 1]).cwiseAbs().maxCoeff());
  }
  report.eoc = convergence_order_or_exact(std::span<const double>(report.differences),
                                          kSelfConvergenceExactThreshold);
  return report;
}

}  // namespace abfrac
