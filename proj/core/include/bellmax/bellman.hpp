#pragma once

// Closed-form Bellman functions for tree maximal operators under L^p,
// weak-type and Lorentz constraints.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellmax/hardy.hpp"
#include "bellmax/measure_fn.hpp"

namespace bellmax {

enum class QueryKind { I5, Thm2, Thm3, Thm4 };

std::string_view to_string(QueryKind kind);
std::optional<QueryKind> parse_query_kind(std::string_view name);

struct BellmanResult {
  double value = 0.0;
  std::string branch;
  std::optional<double> sigma;
  std::optional<double> alpha;
  std::optional<double> z;
  std::optional<double> threshold;
  /// Non-fatal observations: marginal domain acceptance, restricted-range
  /// violations, stated-hypothesis mismatches.
  std::vector<std::string> flags;
};

/// Parameters of one evaluation. Which fields matter depends on `kind`:
///   I5:   p, F, f, L
///   Thm2: weak, f, spec
///   Thm3: p, q, r, F, f, L
///   Thm4: p, q, F, f  (q == 1 selects the L^{p,1} closed form)
struct BellmanQuery {
  QueryKind kind = QueryKind::Thm4;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double F = 0.0;
  double f = 0.0;
  double L = 0.0;
  std::vector<WeakConstraint> weak;
  FunctionalSpec spec{};

  /// Throws DomainError / PreconditionError / UnsupportedError exactly as
  /// `evaluate` would, without evaluating.
  void validate() const;
};

BellmanResult evaluate(const BellmanQuery& query);

/// L^p Bellman function with fixed average f, L^p mass F and outer
/// supremum L; defined for 0 <= f <= L, f^p <= F.
BellmanResult bellman_i5(double p, double F, double f, double L);

/// Supremum of the (G, h, k) functional under ||phi||_1 = f and several
/// weak-type bounds. Requires f to be at most the mass of the envelope.
BellmanResult bellman_thm2(std::span<const WeakConstraint> weak, double f, const FunctionalSpec& spec,
                           const FunctionalOptions& opts = {});

/// Weak-L^p to L^{q,r} Bellman function, 1 < q < p, r > 0,
/// 0 < f < p' F^{1/p}, f <= L.
BellmanResult bellman_thm3(double p, double q, double r, double F, double f, double L);

/// The same quantity as bellman_thm3, obtained by integrating the extremal
/// profile through bellman_thm2 instead of the closed form.
double bellman_thm3_integral(double p, double q, double r, double F, double f, double L,
                             const FunctionalOptions& opts = {});

/// Threshold L* = (p')^{p'} (F/f)^{1/(p-1)} separating the two cases of
/// bellman_thm3.
double thm3_threshold(double p, double F, double f);

/// L^{p,q} to L^{p,q} Bellman function; q == 1 gives p'(F - f).
BellmanResult bellman_thm4(double p, double q, double F, double f);

}  // namespace bellmax
