#include "internal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "CLI11.hpp"
#include "bellmax/special.hpp"
#include "bellmax/version.hpp"

namespace bellmax::cli::detail {

StepFunction random_step(std::mt19937_64& rng, int max_pieces) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<double> cuts = {0.0, 1.0};
  for (int i = 0; i + 1 < n; ++i) {
    const double u = unit(rng);
    cuts.push_back(unit(rng) < 0.5 ? u : std::pow(10.0, -6.0 * u));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-12; }), cuts.end());
  cuts.back() = 1.0;

  std::vector<double> vals(cuts.size() - 1);
  const int shape = static_cast<int>(rng() % 3);
  for (auto& v : vals) {
    const double u = unit(rng);
    v = shape == 0 ? u : shape == 1 ? std::exp(8.0 * u - 4.0) : (unit(rng) < 0.2 ? 0.0 : u * u);
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  if (vals.front() <= 0.0) vals.front() = 1.0;
  return StepFunction(std::move(cuts), std::move(vals));
}

LeafVector random_leaves(std::mt19937_64& rng, int depth, int shape) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> leaves(std::size_t{1} << depth);
  for (auto& x : leaves) {
    const double u = unit(rng);
    switch (shape % 4) {
      case 0: x = u; break;
      case 1: x = u < 0.01 ? 1000.0 * unit(rng) : 0.0; break;
      case 2: x = std::exp(10.0 * u - 5.0); break;
      default: x = std::floor(3.0 * u); break;
    }
  }
  return LeafVector(depth, std::move(leaves));
}

std::optional<double> oracle_value(const BellmanQuery& query, const BellmanResult& result) {
  FunctionalOptions opts;
  opts.policy = QuadraturePolicy::AdaptiveOnly;
  switch (query.kind) {
    case QueryKind::Thm3:
      return bellman_thm3_integral(query.p, query.q, query.r, query.F, query.f, query.L, opts);
    case QueryKind::Thm4: {
      if (query.q == 1.0 || !result.alpha) return std::nullopt;
      const double alpha = *result.alpha;
      // The extremizer's integrand is ~ t^{-1 + (1 - alpha p) q / p}; near the
      // pole adaptive quadrature cannot resolve it, so it integrates exactly.
      return delta_functional(PiecewisePower::single(query.f * (1.0 - alpha), -alpha), query.p, query.q);
    }
    case QueryKind::Thm2: {
      if (!result.sigma) return std::nullopt;
      return functional(lower_envelope(query.weak), query.spec, *result.sigma, opts);
    }
    case QueryKind::I5:
      return std::nullopt;
  }
  return std::nullopt;
}

SqueezeStats thm4_squeeze(double p, double q, double f, int trials, double rel_tol, std::mt19937_64& rng) {
  SqueezeStats stats;
  stats.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const auto raw = random_step(rng);
    const double c = f / raw.total();
    std::vector<double> vals(raw.values().begin(), raw.values().end());
    for (auto& v : vals) v *= c;
    const StepFunction g(std::vector<double>(raw.breakpoints().begin(), raw.breakpoints().end()), vals);
    const double bound = bellman_thm4(p, q, lorentz_qnorm(g, p, q), f).value;
    const double d = delta_functional(g, p, q);
    if (d > bound * (1.0 + rel_tol)) ++stats.violations;
    stats.max_ratio = std::max(stats.max_ratio, d / bound);
  }
  return stats;
}

double relative_error(double value, double reference) {
  const double diff = std::abs(value - reference);
  return reference == 0.0 ? diff : diff / std::abs(reference);
}

nlohmann::json versions() {
  return {{"bellmax", kVersion},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION},
          {"compiler", __VERSION__}};
}

}  // namespace bellmax::cli::detail
