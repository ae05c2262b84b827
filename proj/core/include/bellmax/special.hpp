#pragma once

#include "bellmax/measure_fn.hpp"

namespace bellmax {

/// An exponent p > 1 with its dual p' = p/(p-1).
struct ConjugatePair {
  double p;
  double dual;

  static ConjugatePair of(double p);
};

/// p/(p-1). Throws PreconditionError unless p > 1.
double conjugate(double p);

/// H_q(z) = -(q-1) z^q + q z^{q-1} on [1, q'].
double hq(double q, double z);

/// Inverse of H_q: [0,1] -> [1, q']. Bisection on the bracket [1, q'],
/// finished by guarded Newton steps once the bracket is narrower than 1e-4.
double omega_q(double q, double y);

/// The sigma in (0,1] with integral of R over (0, sigma] equal to f, found by
/// inverting the closed antiderivative on the piece where the mass is
/// reached. Throws DomainError when f exceeds the total mass of R.
double solve_sigma(const PiecewisePower& R, double f);

/// Which half of the (p, q) plane the alpha equation is solved in.
enum class AlphaCase {
  PAtMostQ,  // p <= q: alpha in [alpha_0, 1/p), alpha_0 = (q-p)/(p(q-1))
  QBelowP,   // q < p: alpha in [0, 1/p)
};

struct AlphaSolution {
  double alpha = 0.0;
  AlphaCase which = AlphaCase::PAtMostQ;
  double residual = 0.0;   // |w(alpha) - F/f^q|
  double pole_gap = 1.0;   // 1 - alpha p, carried at full relative precision
  double z = 1.0;          // 1/(1-alpha) = delta z, delta = p'/q'
  bool saturated = false;  // F/f^q beyond the bracket: alpha pinned near 1/p
  bool z_outside_restriction = false;  // q < p and z < q'/p'
};

/// w(alpha) = (p/q) (1-alpha)^q / (1 - alpha p).
double alpha_weight(double p, double q, double alpha);

/// Solves w(alpha) = F/f^q on the case-appropriate interval. Throws
/// DomainError naming the violated inequality when (F, f) lies outside
/// f^q <= (p'/q')^{q-1} F (p <= q) or f^q <= (q/p) F (q < p).
AlphaSolution solve_alpha(double p, double q, double F, double f);

}  // namespace bellmax
