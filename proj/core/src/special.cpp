#include "bellmax/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellmax/errors.hpp"
#include "power_math.hpp"
#include "special_internal.hpp"

namespace bellmax {

using detail::fmt_num;
using detail::throw_domain;
using detail::throw_numerical;
using detail::throw_precondition;

namespace {

constexpr double kMinQGap = 1e-9;  // q' overflows as q -> 1
constexpr double kDomainGuard = 1e-12;

void check_q(double q) {
  if (!(q > 1.0 + kMinQGap) || !std::isfinite(q)) {
    throw_precondition("exponent q must exceed 1 + 1e-9, got " + fmt_num(q));
  }
}

double hq_unchecked(double q, double z) { return std::pow(z, q - 1.0) * (q - (q - 1.0) * z); }

using Ext = long double;
constexpr Ext kExtEps = std::numeric_limits<Ext>::epsilon();

Ext hq_ext(Ext q, Ext z) { return std::pow(z, q - 1) * (q - (q - 1) * z); }
Ext hq_derivative_ext(Ext q, Ext z) { return q * (q - 1) * std::pow(z, q - 2) * (1 - z); }

}  // namespace

ConjugatePair ConjugatePair::of(double p) { return {p, conjugate(p)}; }

double conjugate(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw_precondition("exponent must exceed 1, got " + fmt_num(p));
  return p / (p - 1.0);
}

double hq(double q, double z) {
  check_q(q);
  const double qd = conjugate(q);
  if (!(z >= 1.0 && z <= qd)) {
    throw_precondition("H_q is defined on [1, q'] = [1, " + fmt_num(qd) + "], got z = " + fmt_num(z));
  }
  return hq_unchecked(q, z);
}

long double detail::omega_q_ext(long double q, long double y) {
  const Ext qd = q / (q - 1);
  if (y >= 1) return 1;
  if (y <= 0) return qd;

  // H_q decreases from 1 at z = 1 to 0 at z = q'. Near z = 1 it is flat
  // (H_q ~ 1 - q(q-1)(z-1)^2/2), so the extended type buys back half the
  // digits lost to that conditioning.
  Ext lo = 1;
  Ext hi = qd;
  Ext z = (lo + hi) / 2;
  bool newton = false;
  for (int it = 0; it < 200; ++it) {
    const Ext h = hq_ext(q, z) - y;
    if (h == 0) return z;
    if (h > 0) {
      lo = z;
    } else {
      hi = z;
    }
    if (hi - lo <= 2 * kExtEps * hi) return (lo + hi) / 2;

    newton = newton || hi - lo < Ext(1e-4);
    Ext next = (lo + hi) / 2;
    if (newton) {
      const Ext d = hq_derivative_ext(q, z);
      if (d != 0) {
        const Ext step = h / d;
        const Ext candidate = z - step;
        if (candidate > lo && candidate < hi) {
          if (std::abs(step) <= 2 * kExtEps * z) return candidate;
          next = candidate;
        }
      }
    }
    z = next;
  }
  throw_numerical("omega_q did not converge for q = " + fmt_num(static_cast<double>(q)) +
                  ", y = " + fmt_num(static_cast<double>(y)));
}

double omega_q(double q, double y) {
  check_q(q);
  if (!(y >= 0.0 && y <= 1.0)) throw_domain("omega_q is defined on [0, 1], got y = " + fmt_num(y));
  if (y == 1.0) return 1.0;
  if (y == 0.0) return conjugate(q);
  return static_cast<double>(detail::omega_q_ext(q, y));
}

double solve_sigma(const PiecewisePower& R, double f) {
  if (!(f > 0.0) || !std::isfinite(f)) throw_precondition("mass f must be positive, got " + fmt_num(f));
  const double total = R.total();
  if (f > total * (1.0 + 1e-13)) {
    throw_domain("infeasible constraint: f = " + fmt_num(f) + " exceeds the total mass " + fmt_num(total) +
                 " of the envelope");
  }
  if (f >= total) return R.u_max();

  for (const auto& s : R.segments()) {
    const double before = R.primitive(s.start);
    const double after = R.primitive(s.end);
    if (f > after) continue;
    // before + c (sigma^k - a^k) / k = f with k = e + 1.
    const double k = s.exponent + 1.0;
    const double base = std::pow(s.start, k) + (f - before) * k / s.coeff;
    const double sigma = std::pow(base, 1.0 / k);
    return std::clamp(sigma, s.start, s.end);
  }
  return R.u_max();
}

double alpha_weight(double p, double q, double alpha) {
  return p / q * std::pow(1.0 - alpha, q) / (1.0 - alpha * p);
}

AlphaSolution solve_alpha(double p, double q, double F, double f) {
  if (!(p > 1.0) || !std::isfinite(p)) throw_precondition("exponent p must exceed 1, got " + fmt_num(p));
  check_q(q);
  if (!(F > 0.0) || !std::isfinite(F)) throw_precondition("F must be positive, got " + fmt_num(F));
  if (!(f > 0.0) || !std::isfinite(f)) throw_precondition("f must be positive, got " + fmt_num(f));

  const Ext P = p;
  const Ext Q = q;
  const Ext delta = P * (Q - 1) / (Q * (P - 1));  // p'/q'
  const Ext target = static_cast<Ext>(F) / std::pow(static_cast<Ext>(f), Q);

  AlphaSolution sol;
  // Work in u = 1 - alpha p, which keeps full relative precision near the
  // pole. At the case (i) boundary w is flat, so the extended type matters.
  Ext u_hi = 1;
  if (p <= q) {
    sol.which = AlphaCase::PAtMostQ;
    // w attains its minimum delta^{1-q} at alpha_0.
    const Ext floor = std::pow(delta, 1 - Q);
    if (target < floor * (1 - kDomainGuard)) {
      throw_domain("case (i) p <= q requires f^q <= (p'/q')^{q-1} F; got f^q = " + fmt_num(std::pow(f, q)) +
                   " > " + fmt_num(static_cast<double>(F / floor)));
    }
    u_hi = (P - 1) / (Q - 1);  // 1 - alpha_0 p
  } else {
    sol.which = AlphaCase::QBelowP;
    if (target < P / Q * (1 - kDomainGuard)) {
      throw_domain("case (ii) q < p requires f^q <= (q/p) F; got f^q = " + fmt_num(std::pow(f, q)) + " > " +
                   fmt_num(q / p * F));
    }
  }

  auto log_w = [&](Ext u) { return std::log(P / Q) + Q * std::log((P - 1 + u) / P) - std::log(u); };
  const Ext log_target = std::log(target);

  Ext u = u_hi;
  if (log_w(u_hi) < log_target) {
    constexpr Ext kULow = 1e-15L;
    if (log_w(kULow) < log_target) {
      u = kULow;
      sol.saturated = true;
    } else {
      // log w decreases in log u: bisect on x = log u.
      Ext lo = std::log(kULow);
      Ext hi = std::log(u_hi);
      for (int it = 0; it < 400; ++it) {
        const Ext mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        if (log_w(std::exp(mid)) > log_target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const Ext ulo = std::exp(lo);
      const Ext uhi = std::exp(hi);
      u = std::abs(log_w(ulo) - log_target) <= std::abs(log_w(uhi) - log_target) ? ulo : uhi;
    }
  }

  sol.pole_gap = static_cast<double>(u);
  if (u == u_hi) {
    sol.alpha = p <= q ? (q - p) / (p * (q - 1.0)) : 0.0;
  } else {
    sol.alpha = static_cast<double>((1 - u) / P);
  }
  const Ext w = P / Q * std::pow((P - 1 + u) / P, Q) / u;
  sol.residual = static_cast<double>(std::abs(w - target));
  sol.z = static_cast<double>(P / (delta * (P - 1 + u)));
  if (sol.which == AlphaCase::QBelowP) {
    const double restricted = conjugate(q) / conjugate(p);
    sol.z_outside_restriction = sol.z < restricted * (1.0 - kDomainGuard);
  }
  return sol;
}

}  // namespace bellmax
