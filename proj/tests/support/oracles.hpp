#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's integration or inversion code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bellmax/measure_fn.hpp"

namespace bellmax::testing {

/// Double-exponential quadrature; tolerates integrable endpoint singularities.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate(f, a, b, tol);
}

/// Splits (a, b] at the given interior points and sums tanh_sinh over the parts.
inline double tanh_sinh_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts,
                              double tol = 1e-14) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], a);
    const double hi = std::min(cuts[i + 1], b);
    if (hi > lo) sum += tanh_sinh(f, lo, hi, tol);
  }
  return sum;
}

/// Integral over (0, b] of exp(log_f(ln t)), computed as the integral of
/// exp(log_f(x) + x) over (-inf, ln b]. Works when f itself overflows near 0
/// and when mass lies below the smallest positive double.
inline double exp_sinh_log_origin(const std::function<double(double)>& log_f, double b, double tol = 1e-14) {
  static thread_local boost::math::quadrature::exp_sinh<double> integrator;
  const double top = std::log(b);
  auto g = [&](double y) { return std::exp(log_f(top - y) + top - y); };
  return integrator.integrate(g, tol);
}

/// 61-point Gauss-Kronrod with adaptive bisection (Boost), for smooth pieces.
inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, 1e-15);
}

/// mu({x : phi(x) > level}) straight from the unsorted pieces.
inline double brute_distribution(const std::vector<Piece>& pieces, double level) {
  double m = 0.0;
  for (const auto& pc : pieces) {
    if (pc.value > level) m += pc.measure;
  }
  return m;
}

/// Pointwise evaluation of a step function from raw arrays, by linear scan.
inline double scan_value(const std::vector<double>& bp, const std::vector<double>& vals, double t) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (t <= bp[i + 1]) return vals[i];
  }
  return vals.back();
}

/// A seeded random nonincreasing step function with 1..max_pieces pieces.
/// Breakpoints and values come from a few different shapes so the corpus
/// covers flat, steep and spiky functions.
inline StepFunction random_step(std::mt19937_64& rng, int max_pieces = 12) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<double> cuts;
  for (int i = 0; i + 1 < n; ++i) {
    // Mix uniform and log-uniform cut points so short pieces near 0 occur.
    const double u = unit(rng);
    cuts.push_back(unit(rng) < 0.5 ? u : std::pow(10.0, -6.0 * u));
  }
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-12; }), cuts.end());
  if (cuts.back() != 1.0) cuts.back() = 1.0;

  std::vector<double> vals(cuts.size() - 1);
  const int shape = static_cast<int>(rng() % 3);
  for (auto& v : vals) {
    const double u = unit(rng);
    v = shape == 0 ? u : shape == 1 ? std::exp(8.0 * u - 4.0) : (unit(rng) < 0.2 ? 0.0 : u * u);
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  if (vals.front() == 0.0) vals.front() = 1.0;
  return StepFunction(cuts, vals);
}

}  // namespace bellmax::testing
