#include "bellmax/bellman.hpp"

#include <algorithm>
#include <cmath>

#include "bellmax/errors.hpp"
#include "bellmax/special.hpp"
#include "special_internal.hpp"

namespace bellmax {

using detail::fmt_num;
using detail::throw_domain;
using detail::throw_precondition;

namespace {

// Boundaries are accepted inclusively up to this relative slack; strict
// inequalities are enforced with the same band.
constexpr double kGuard = 1e-12;

void require_positive(const char* name, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw_precondition(std::string(name) + " must be positive, got " + fmt_num(x));
}

void require_exponent(const char* name, double x) {
  if (!(x > 1.0) || !std::isfinite(x)) throw_precondition(std::string(name) + " must exceed 1, got " + fmt_num(x));
}

void check_i5(double p, double F, double f, double L) {
  require_exponent("p", p);
  require_positive("F", F);
  if (!(f >= 0.0) || !std::isfinite(f)) throw_precondition("f must be finite and >= 0, got " + fmt_num(f));
  if (!std::isfinite(L)) throw_precondition("L must be finite");
  if (f > L * (1.0 + kGuard)) throw_domain("L^p Bellman function requires f <= L; got f = " + fmt_num(f) + " > L = " + fmt_num(L));
  if (std::pow(f, p) > F * (1.0 + kGuard)) {
    throw_domain("L^p Bellman function requires f^p <= F; got f^p = " + fmt_num(std::pow(f, p)) + " > F = " + fmt_num(F));
  }
}

void check_thm3(double p, double q, double r, double F, double f, double L) {
  require_exponent("p", p);
  require_exponent("q", q);
  if (!(q < p)) {
    throw UnsupportedError("weak-type Lorentz Bellman function requires 1 < q < p strictly; got q = " + fmt_num(q) +
                           ", p = " + fmt_num(p));
  }
  require_positive("r", r);
  require_positive("F", F);
  require_positive("f", f);
  if (!std::isfinite(L)) throw_precondition("L must be finite");
  const double cap = conjugate(p) * std::pow(F, 1.0 / p);
  if (!(f < cap * (1.0 - kGuard))) {
    throw_domain("weak-type Lorentz Bellman function requires 0 < f < p' F^{1/p}; got f = " + fmt_num(f) +
                 ", p' F^{1/p} = " + fmt_num(cap));
  }
  if (f > L * (1.0 + kGuard)) {
    throw_domain("weak-type Lorentz Bellman function requires f <= L; got f = " + fmt_num(f) + " > L = " + fmt_num(L));
  }
}

void check_thm4(double p, double q, double F, double f, std::vector<std::string>* flags) {
  require_exponent("p", p);
  require_positive("F", F);
  require_positive("f", f);
  if (!std::isfinite(q) || q < 1.0) throw_precondition("q must be >= 1, got " + fmt_num(q));
  if (q == 1.0) {
    if (f > F) {
      if (f > F * (1.0 + kGuard)) {
        throw_domain("L^{p,1} Bellman function requires f <= F; got f = " + fmt_num(f) + " > F = " + fmt_num(F));
      }
      if (flags) flags->push_back("marginal-domain: f exceeds F within the guard band");
    }
    return;
  }
  if (!(q > 1.0 + 1e-9)) throw_precondition("q must be 1 or exceed 1 + 1e-9, got " + fmt_num(q));
  const double fq = std::pow(f, q);
  if (p <= q) {
    const double bound = std::pow(conjugate(p) / conjugate(q), q - 1.0) * F;
    if (fq > bound * (1.0 + kGuard)) {
      throw_domain("case (i) p <= q requires f^q <= (p'/q')^{q-1} F; got f^q = " + fmt_num(fq) + " > " + fmt_num(bound));
    }
  } else {
    const double bound = q / p * F;
    if (fq > bound * (1.0 + kGuard)) {
      throw_domain("case (ii) q < p requires f^q <= (q/p) F; got f^q = " + fmt_num(fq) + " > " + fmt_num(bound));
    }
  }
}

PiecewisePower checked_envelope(std::span<const WeakConstraint> weak, double f) {
  if (weak.empty()) throw_precondition("at least one weak-type constraint is required");
  require_positive("f", f);
  PiecewisePower R = lower_envelope(weak);
  if (f > R.total() * (1.0 + 1e-13)) {
    throw_domain("weak-type constraints are infeasible: f = " + fmt_num(f) + " exceeds the envelope mass " +
                 fmt_num(R.total()));
  }
  return R;
}

}  // namespace

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::I5: return "i5";
    case QueryKind::Thm2: return "thm2";
    case QueryKind::Thm3: return "thm3";
    case QueryKind::Thm4: return "thm4";
  }
  return "?";
}

std::optional<QueryKind> parse_query_kind(std::string_view name) {
  if (name == "i5") return QueryKind::I5;
  if (name == "thm2") return QueryKind::Thm2;
  if (name == "thm3") return QueryKind::Thm3;
  if (name == "thm4") return QueryKind::Thm4;
  return std::nullopt;
}

void BellmanQuery::validate() const {
  switch (kind) {
    case QueryKind::I5: check_i5(p, F, f, L); return;
    case QueryKind::Thm2:
      spec.validate();
      checked_envelope(weak, f);
      return;
    case QueryKind::Thm3: check_thm3(p, q, r, F, f, L); return;
    case QueryKind::Thm4: check_thm4(p, q, F, f, nullptr); return;
  }
}

BellmanResult evaluate(const BellmanQuery& query) {
  switch (query.kind) {
    case QueryKind::I5: return bellman_i5(query.p, query.F, query.f, query.L);
    case QueryKind::Thm2: return bellman_thm2(query.weak, query.f, query.spec);
    case QueryKind::Thm3: return bellman_thm3(query.p, query.q, query.r, query.F, query.f, query.L);
    case QueryKind::Thm4: return bellman_thm4(query.p, query.q, query.F, query.f);
  }
  throw_precondition("unknown query kind");
}

BellmanResult bellman_i5(double p, double F, double f, double L) {
  check_i5(p, F, f, L);
  const double pd = conjugate(p);
  BellmanResult res;
  res.threshold = pd * f;
  if (L < pd * f) {
    // p L^{p-1} f - (p-1) L^p, arranged so L = f gives exactly f^p.
    using Ext = long double;
    const Ext Lx = L, P = p;
    Ext y = (std::pow(Lx, P) + P * std::pow(Lx, P - 1) * (Ext(f) - Lx)) / Ext(F);
    if (y < -kGuard || y > 1 + kGuard) {
      throw_domain("omega_p argument (p L^{p-1} f - (p-1) L^p)/F = " + fmt_num(static_cast<double>(y)) +
                   " lies outside [0, 1]");
    }
    y = std::clamp(y, Ext(0), Ext(1));
    const Ext z = detail::omega_q_ext(P, y);
    res.z = static_cast<double>(z);
    res.value = static_cast<double>(Ext(F) * std::pow(z, P));
    res.branch = "omega";
  } else {
    res.value = std::pow(L, p) + std::pow(pd, p) * (F - std::pow(f, p));
    res.branch = "linear";
  }
  return res;
}

BellmanResult bellman_thm2(std::span<const WeakConstraint> weak, double f, const FunctionalSpec& spec,
                           const FunctionalOptions& opts) {
  spec.validate();
  const PiecewisePower R = checked_envelope(weak, f);

  BellmanResult res;
  for (const auto& c : weak) {
    if (f > std::pow(conjugate(c.p) * c.F, 1.0 / c.p) * (1.0 + kGuard)) {
      res.flags.push_back("f exceeds (p_j' F_j)^{1/p_j} for p_j = " + fmt_num(c.p) +
                          "; evaluated under the envelope-mass condition");
      break;
    }
  }
  const double sigma = solve_sigma(R, f);
  res.sigma = sigma;
  res.value = functional(R, spec, sigma, opts);
  res.branch = sigma < R.u_max() ? "truncated" : "full-mass";
  return res;
}

double thm3_threshold(double p, double F, double f) {
  const double pd = conjugate(p);
  return std::pow(pd, pd) * std::pow(F / f, 1.0 / (p - 1.0));
}

BellmanResult bellman_thm3(double p, double q, double r, double F, double f, double L) {
  check_thm3(p, q, r, F, f, L);
  const double pd = conjugate(p);
  const double qd = conjugate(q);
  const double threshold = thm3_threshold(p, F, f);

  BellmanResult res;
  res.threshold = threshold;
  res.sigma = std::pow(f / (pd * std::pow(F, 1.0 / p)), pd);
  if (L <= threshold) {
    const double head = q * (p - 1.0) * qd / (r * (p - q)) * std::pow(pd, pd * r / qd) *
                        std::pow(f, r * (p - q) / (q * (p - 1.0))) * std::pow(F, r * (q - 1.0) / (q * (p - 1.0)));
    res.value = head + q / r * std::pow(L, r) - q / r * qd * std::pow(f, r / q) * std::pow(L, r / q * (q - 1.0));
    res.branch = "case1";
  } else {
    // The floor region (t0, 1] contributes (q/r) L^r (1 - t0^{r/q}); the
    // subtracted part folds into the first coefficient.
    res.value = q * std::pow(pd, r * p / q) / (r * (p / q - 1.0)) * std::pow(F, r / q) * std::pow(L, r * (1.0 - p / q)) +
                q / r * std::pow(L, r);
    res.branch = "case2";
  }
  return res;
}

double bellman_thm3_integral(double p, double q, double r, double F, double f, double L,
                             const FunctionalOptions& opts) {
  check_thm3(p, q, r, F, f, L);
  const WeakConstraint weak[] = {{p, F}};
  const FunctionalSpec spec{OuterFunction::max_power(r, L), r / q - 1.0, 1.0};
  return bellman_thm2(weak, f, spec, opts).value;
}

BellmanResult bellman_thm4(double p, double q, double F, double f) {
  BellmanResult res;
  check_thm4(p, q, F, f, &res.flags);
  const double pd = conjugate(p);
  if (q == 1.0) {
    res.value = pd * (F - f);
    res.branch = "q1";
    return res;
  }
  // y near 1 is the flat end of H_q; form it and invert in extended precision.
  using Ext = long double;
  const Ext P = p, Q = q;
  const Ext D = P * (Q - 1) / (Q * (P - 1));  // delta = p'/q'
  const Ext y = std::min(Ext(1), std::pow(Ext(f), Q) / (std::pow(D, Q - 1) * Ext(F)));
  const Ext zx = detail::omega_q_ext(Q, y);
  const double z = static_cast<double>(zx);
  res.value = static_cast<double>(std::pow(D * zx, Q) * Ext(F));
  res.z = z;
  res.alpha = static_cast<double>(1 - 1 / (D * zx));
  res.branch = p <= q ? "case-i" : "case-ii";
  if (q < p && z < conjugate(q) / pd * (1.0 - kGuard)) {
    res.flags.push_back("z = " + fmt_num(z) + " below q'/p' = " + fmt_num(conjugate(q) / pd));
  }
  return res;
}

}  // namespace bellmax
