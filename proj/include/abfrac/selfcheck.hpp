#pragma once

#include "abfrac/reference.hpp"
#include "abfrac/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace abfrac {

struct CheckResult {
  std::string name;
  bool passed;
  double measured;
  std::string criterion;  ///< human-readable bound, e.g. "<= 1e-10"
};

/// Supplies the jump weights b_0..b_{n-1} for an order; replaceable so tests
/// can inject a faulty weight generator.
using WeightSource = std::function<Vector<double>(double alpha, Index n)>;

Vector<double> library_weight_source(double alpha, Index n);

/// Weights with the sign of every jump flipped, (j)^alpha - (j+1)^alpha.
Vector<double> sign_flipped_weight_source(double alpha, Index n);

struct SelfCheckOptions {
  WeightSource weights = library_weight_source;
  CrossCheckConfig crosscheck;
};

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options = {});

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace abfrac
