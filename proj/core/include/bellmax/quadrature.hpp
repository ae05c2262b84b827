#pragma once

#include <cstddef>
#include <functional>

namespace bellmax {

struct QuadratureOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_depth = 40;
  std::size_t max_intervals = 50000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of |K21 - G10| over the final partition
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on a finite interval.
/// The interval with the largest error estimate is bisected until the total
/// estimate meets max(abs_tol, rel_tol * |value|). Hitting max_depth or
/// max_intervals leaves `converged` false; the partial result is still
/// returned so the caller can report it.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

}  // namespace bellmax
