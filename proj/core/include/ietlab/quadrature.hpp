#pragma once

#include <functional>

#include "ietlab/types.hpp"

namespace ietlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evaluations = 0;
  bool converged = false;
};

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double cell_a, double cell_b)
      : std::runtime_error(msg), a(cell_a), b(cell_b) {}
  double a, b;  // worst cell
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Stops when the summed error estimate
// meets max(abs_tol, rel_tol * |result|); throws QuadratureError when the
// subdivision budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol = 1e-10,
                           double abs_tol = 0.0, int max_depth = 48,
                           long max_evals = 20'000'000);

// Same, but with the substitutions x = a + t^2 / x = b - t^2 applied on the
// two halves, so integrable endpoint singularities (log, power > -1) become
// quadrature-friendly.
QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f,
                                             double a, double b,
                                             double rel_tol = 1e-10,
                                             double abs_tol = 0.0);

}  // namespace ietlab
