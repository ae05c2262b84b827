#pragma once

// The averaging operator Hg(t) = (1/t) * integral of g over (0, t], kept in
// symbolic form, and the weighted functionals
//     integral over (0, k] of G(Hg(t)) t^s dt
// for G(x) = x^r or G(x) = max(x, L)^r.

#include <optional>
#include <span>
#include <vector>

#include "bellmax/measure_fn.hpp"
#include "bellmax/quadrature.hpp"

namespace bellmax {

/// coeff * t^exponent
struct PowerTerm {
  double coeff;
  double exponent;
  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// A finite sum of power terms on (start, end]. An empty sum is zero.
struct ProfileSegment {
  double start;
  double end;
  std::vector<PowerTerm> terms;

  double operator()(double t) const;
  friend bool operator==(const ProfileSegment&, const ProfileSegment&) = default;
};

/// Piecewise sum-of-powers function on (0, 1].
class GeneralProfile {
 public:
  explicit GeneralProfile(std::vector<ProfileSegment> segments);

  std::span<const ProfileSegment> segments() const { return segments_; }
  double operator()(double t) const;

  friend bool operator==(const GeneralProfile&, const GeneralProfile&) = default;

 private:
  std::vector<ProfileSegment> segments_;
};

/// The outer function G: x^r, or max(x, floor)^r.
struct OuterFunction {
  enum class Kind { Power, MaxPower };

  Kind kind = Kind::Power;
  double r = 1.0;
  double floor = 0.0;

  static OuterFunction power(double r) { return {Kind::Power, r, 0.0}; }
  static OuterFunction max_power(double r, double floor) { return {Kind::MaxPower, r, floor}; }

  double operator()(double x) const;
};

/// (G, h, k) with h(t) = t^weight_exponent.
struct FunctionalSpec {
  OuterFunction G;
  double weight_exponent = 0.0;
  double upper = 1.0;

  /// G = x^q, h = t^{q/p - 1}, k = 1: the Lorentz quasinorm of Hg.
  static FunctionalSpec lorentz(double p, double q);

  /// Throws PreconditionError unless r > 0, floor >= 0, s > -1, 0 < k <= 1.
  void validate() const;
};

enum class QuadraturePolicy {
  ClosedFormWhenPossible,  // single-term pieces integrate exactly
  AdaptiveOnly,            // every piece goes through quadrature; used as an oracle
};

struct FunctionalOptions {
  QuadraturePolicy policy = QuadraturePolicy::ClosedFormWhenPossible;
  QuadratureOptions quadrature{};
};

/// Hg for nonincreasing g. With a truncation sigma the input is replaced by
/// g restricted to (0, sigma], so Hg(t) = (integral of g over (0, sigma]) / t
/// for t > sigma. A PiecewisePower that stops short of 1 is taken as zero
/// beyond its last segment.
GeneralProfile hardy_of(const StepFunction& g, std::optional<double> truncation = std::nullopt);
GeneralProfile hardy_of(const PiecewisePower& g, std::optional<double> truncation = std::nullopt);

/// integral over (0, k] of G(P(t)) t^s dt for a nonincreasing profile P.
/// Divergence raises DomainError naming the segment; quadrature that misses
/// its tolerance raises NumericalError.
double functional(const GeneralProfile& profile, const FunctionalSpec& spec, const FunctionalOptions& opts = {});

double functional(const StepFunction& g, const FunctionalSpec& spec, std::optional<double> truncation = std::nullopt,
                  const FunctionalOptions& opts = {});
double functional(const PiecewisePower& g, const FunctionalSpec& spec, std::optional<double> truncation = std::nullopt,
                  const FunctionalOptions& opts = {});

/// integral over (0,1] of (t^{1/p} Hg(t))^q dt/t.
double delta_functional(const StepFunction& g, double p, double q, const FunctionalOptions& opts = {});
double delta_functional(const PiecewisePower& g, double p, double q, const FunctionalOptions& opts = {});

}  // namespace bellmax
