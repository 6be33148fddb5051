#pragma once

#include "abfrac/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abfrac {

/// Built-in smooth functions with a known AB fractional integral.
enum class TestFunction { Constant, Linear, Quadratic, Exponential };

TestFunction parse_test_function(const std::string& name);
std::string to_string(TestFunction fn);

double evaluate(TestFunction fn, double t);

/// Exact AB integral of `fn` at time t, or nullopt when no reliable closed
/// form is available (the exponential needs E_{1,1+alpha}(t) with t <= 50).
std::optional<double> ab_integral_closed_form(TestFunction fn, const FracOrder<double>& alpha,
                                              double t);

struct ConvergenceRow {
  Index n;
  double tau;
  double abs_error;
  std::optional<double> local_eoc;  ///< against the previous row
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::optional<double> eoc;  ///< least-squares order; nullopt means exact
};

inline constexpr double kExactErrorThreshold = 1e-12;

/// End-point error of ab_integral_trapezoid on [0, T] for each n. Throws
/// std::domain_error if the closed form is unavailable.
ConvergenceStudy study_ab_trapezoid(TestFunction fn, const FracOrder<double>& alpha, double horizon,
                                    const std::vector<Index>& steps);

}  // namespace abfrac
