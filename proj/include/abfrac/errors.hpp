#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abfrac {

/// A series or iteration failed to reach its tolerance within the allowed work.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every error in a refinement study vanished, so no order can be fitted.
class DegenerateConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solve or time march produced an unusable result.
class SolverBreakdown : public std::runtime_error {
 public:
  SolverBreakdown(const std::string& what, std::ptrdiff_t step)
      : std::runtime_error(what), step_(step) {}

  /// Time level at which the breakdown occurred, -1 when not tied to a step.
  std::ptrdiff_t step() const noexcept { return step_; }

 private:
  std::ptrdiff_t step_;
};

}  // namespace abfrac
