#include "bellmax/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "bellmax/errors.hpp"
#include "power_math.hpp"

namespace bellmax {

using detail::fmt_num;
using detail::throw_domain;
using detail::throw_numerical;
using detail::throw_precondition;

namespace {

std::string describe(double a, double b) { return "(" + fmt_num(a) + ", " + fmt_num(b) + "]"; }

void push_term(std::vector<PowerTerm>& terms, double coeff, double exponent) {
  if (coeff != 0.0) terms.push_back({coeff, exponent});
}

double check_truncation(std::optional<double> truncation) {
  if (!truncation) return 1.0;
  const double sigma = *truncation;
  if (!(sigma > 0.0 && sigma <= 1.0)) throw_precondition("truncation must lie in (0, 1], got " + fmt_num(sigma));
  return sigma;
}

// Profile on (t, 1] of a function with all its mass `mass` inside (0, t].
void push_tail(std::vector<ProfileSegment>& out, double t, double mass) {
  if (t >= 1.0) return;
  ProfileSegment seg{t, 1.0, {}};
  push_term(seg.terms, mass, -1.0);
  out.push_back(std::move(seg));
}

// The most negative exponent decides the behaviour at 0.
double leading_exponent(const std::vector<PowerTerm>& terms) {
  double e = 0.0;
  for (const auto& term : terms) {
    if (term.coeff > 0.0) e = std::min(e, term.exponent);
  }
  return e;
}

double evaluate(const std::vector<PowerTerm>& terms, double t) {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.coeff * std::pow(t, term.exponent);
  return sum;
}

// integral over (a, b] of P(t)^r t^s.
double integrate_power_part(const std::vector<PowerTerm>& terms, double a, double b, double r, double s,
                            const FunctionalOptions& opts) {
  if (!(b > a) || terms.empty()) return 0.0;

  if (terms.size() == 1 && opts.policy == QuadraturePolicy::ClosedFormWhenPossible) {
    const auto& term = terms.front();
    if (term.coeff < 0.0) throw_domain("negative profile on " + describe(a, b));
    const double e = term.exponent * r + s;
    const double value = std::pow(term.coeff, r) * detail::power_integral(a, b, e);
    if (!std::isfinite(value)) {
      throw_domain("functional diverges at 0 on segment " + describe(a, b) + ": integrand exponent " + fmt_num(e) +
                   " <= -1");
    }
    return value;
  }

  auto integrand = [&](double t) {
    const double v = evaluate(terms, t);
    return v <= 0.0 ? 0.0 : std::pow(v, r) * std::pow(t, s);
  };

  QuadratureResult res;
  if (a == 0.0) {
    // t = u^{1/kappa} flattens the leading t^{kappa-1} behaviour at 0.
    const double kappa = s + 1.0 + r * leading_exponent(terms);
    if (!(kappa > 0.0)) {
      throw_domain("functional diverges at 0 on segment " + describe(a, b) + ": integrand exponent " +
                   fmt_num(kappa - 1.0) + " <= -1");
    }
    const double inv = 1.0 / kappa;
    auto transformed = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double t = std::pow(u, inv);
      return integrand(t) * t / (kappa * u);
    };
    res = integrate_adaptive(transformed, 0.0, std::pow(b, kappa), opts.quadrature);
  } else {
    res = integrate_adaptive(integrand, a, b, opts.quadrature);
  }
  if (!res.converged) {
    throw_numerical("quadrature did not converge on segment " + describe(a, b) + ": estimate " + fmt_num(res.value) +
                    ", error " + fmt_num(res.error));
  }
  return res.value;
}

// Largest t in [a, b] with P(t) >= level, or a when P < level throughout.
// P is nonincreasing on the segment.
double level_crossing(const std::vector<PowerTerm>& terms, double a, double b, double level) {
  if (terms.empty()) return level <= 0.0 ? b : a;
  if (evaluate(terms, b) >= level) return b;
  if (terms.size() == 1) {
    const auto& term = terms.front();
    if (term.exponent == 0.0) return term.coeff >= level ? b : a;
    const double t = std::pow(level / term.coeff, 1.0 / term.exponent);
    return std::clamp(t, a, b);
  }
  double lo = a > 0.0 ? a : b * 1e-300;
  if (evaluate(terms, lo) < level) return a;
  double hi = b;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (evaluate(terms, mid) >= level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

// ------------------------------------------------------------------ profile

double ProfileSegment::operator()(double t) const { return evaluate(terms, t); }

GeneralProfile::GeneralProfile(std::vector<ProfileSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw_precondition("profile needs at least one segment");
  if (segments_.front().start != 0.0) throw_precondition("profile must start at 0");
  if (segments_.back().end != 1.0) throw_precondition("profile must end at 1");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segments_[i].end > segments_[i].start)) throw_precondition("empty profile segment");
    if (i > 0 && segments_[i].start != segments_[i - 1].end) throw_precondition("profile segments must be contiguous");
  }
}

double GeneralProfile::operator()(double t) const {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                             [](const ProfileSegment& s, double x) { return s.end < x; });
  if (it == segments_.end()) --it;
  return (*it)(t);
}

double OuterFunction::operator()(double x) const {
  const double base = kind == Kind::MaxPower ? std::max(x, floor) : x;
  return std::pow(base, r);
}

FunctionalSpec FunctionalSpec::lorentz(double p, double q) { return {OuterFunction::power(q), q / p - 1.0, 1.0}; }

void FunctionalSpec::validate() const {
  if (!(G.r > 0.0) || !std::isfinite(G.r)) throw_precondition("outer exponent r must be positive, got " + fmt_num(G.r));
  if (G.kind == OuterFunction::Kind::MaxPower && (!(G.floor >= 0.0) || !std::isfinite(G.floor))) {
    throw_precondition("max-power floor must be finite and >= 0, got " + fmt_num(G.floor));
  }
  if (!(weight_exponent > -1.0) || !std::isfinite(weight_exponent)) {
    throw_precondition("weight exponent s must exceed -1, got " + fmt_num(weight_exponent));
  }
  if (!(upper > 0.0 && upper <= 1.0)) throw_precondition("upper limit k must lie in (0, 1], got " + fmt_num(upper));
}

// ------------------------------------------------------------------ hardy_of

GeneralProfile hardy_of(const StepFunction& g, std::optional<double> truncation) {
  if (!g.is_nonincreasing()) throw_precondition("hardy_of expects a nonincreasing function");
  const double sigma = check_truncation(truncation);
  const auto bp = g.breakpoints();
  const auto vals = g.values();

  std::vector<ProfileSegment> out;
  // On piece i, Hg(t) = v_i + C_i / t with C_i = sum_{j<i} (v_j - v_i) |piece j|;
  // the recurrence below keeps every update nonnegative.
  double c = 0.0;
  for (std::size_t i = 0; i < vals.size() && bp[i] < sigma; ++i) {
    if (i > 0) c += (vals[i - 1] - vals[i]) * bp[i];
    ProfileSegment seg{bp[i], std::min(bp[i + 1], sigma), {}};
    push_term(seg.terms, vals[i], 0.0);
    push_term(seg.terms, c, -1.0);
    out.push_back(std::move(seg));
  }
  push_tail(out, sigma, g.primitive(sigma));
  return GeneralProfile(std::move(out));
}

GeneralProfile hardy_of(const PiecewisePower& g, std::optional<double> truncation) {
  if (!g.is_nonincreasing()) throw_precondition("hardy_of expects a nonincreasing function");
  const double sigma = check_truncation(truncation);
  const double stop = std::min(sigma, g.u_max());

  std::vector<ProfileSegment> out;
  // On c u^e over (a, b]: Hg(t) = c t^e / (e + 1) + A / t.
  double a_coeff = 0.0;
  const auto segs = g.segments();
  for (std::size_t i = 0; i < segs.size() && segs[i].start < stop; ++i) {
    const auto& s = segs[i];
    if (i > 0) {
      const auto& prev = segs[i - 1];
      const double a = s.start;
      a_coeff += a * (prev(a) / (prev.exponent + 1.0) - s(a) / (s.exponent + 1.0));
    }
    ProfileSegment seg{s.start, std::min(s.end, stop), {}};
    push_term(seg.terms, s.coeff / (s.exponent + 1.0), s.exponent);
    push_term(seg.terms, a_coeff, -1.0);
    out.push_back(std::move(seg));
  }
  push_tail(out, stop, g.primitive(stop));
  return GeneralProfile(std::move(out));
}

// ------------------------------------------------------------------ functional

double functional(const GeneralProfile& profile, const FunctionalSpec& spec, const FunctionalOptions& opts) {
  spec.validate();
  const double r = spec.G.r;
  const double s = spec.weight_exponent;
  const double k = spec.upper;

  double total = 0.0;
  for (const auto& seg : profile.segments()) {
    if (seg.start >= k) break;
    const double a = seg.start;
    const double b = std::min(seg.end, k);
    if (spec.G.kind == OuterFunction::Kind::Power) {
      total += integrate_power_part(seg.terms, a, b, r, s, opts);
      continue;
    }
    const double level = spec.G.floor;
    const double cross = level_crossing(seg.terms, a, b, level);
    total += integrate_power_part(seg.terms, a, cross, r, s, opts);
    if (cross < b) total += std::pow(level, r) * detail::power_integral(cross, b, s);
  }
  return total;
}

double functional(const StepFunction& g, const FunctionalSpec& spec, std::optional<double> truncation,
                  const FunctionalOptions& opts) {
  return functional(hardy_of(g, truncation), spec, opts);
}

double functional(const PiecewisePower& g, const FunctionalSpec& spec, std::optional<double> truncation,
                  const FunctionalOptions& opts) {
  return functional(hardy_of(g, truncation), spec, opts);
}

double delta_functional(const StepFunction& g, double p, double q, const FunctionalOptions& opts) {
  return functional(hardy_of(g), FunctionalSpec::lorentz(p, q), opts);
}

double delta_functional(const PiecewisePower& g, double p, double q, const FunctionalOptions& opts) {
  return functional(hardy_of(g), FunctionalSpec::lorentz(p, q), opts);
}

}  // namespace bellmax
