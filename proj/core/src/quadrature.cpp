#include "bellmax/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace bellmax {

namespace {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452068, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                       0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                       0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b, 0);
  result.evaluations = 21;
  double total = first.value;
  double total_err = first.error;
  panels.push(first);

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (total_err > target()) {
    if (panels.size() >= opts.max_intervals) break;
    Panel worst = panels.top();
    if (worst.depth >= opts.max_depth) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
    Panel right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
    result.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    total += it->value;
    total_err += it->error;
  }
  result.value = total;
  result.error = total_err;
  result.converged = std::isfinite(total) && total_err <= target();
  return result;
}

}  // namespace bellmax
