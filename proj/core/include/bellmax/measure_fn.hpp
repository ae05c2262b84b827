#pragma once

// Exact step and piecewise-power functions on (0,1] with Lebesgue measure.
//
// Everything here is closed form: integrals use antiderivatives, never
// quadrature. Values are immutable after construction.

#include <cstddef>
#include <span>
#include <vector>

namespace bellmax {

/// A block of mass `measure` carrying the constant `value`; the input unit
/// of `rearrange`.
struct Piece {
  double measure;
  double value;
};

/// Nonnegative step function on (0,1]. Piece i is the constant values()[i]
/// on (breakpoints()[i], breakpoints()[i+1]].
///
/// Construction canonicalizes the representation: breakpoints closer than
/// 1e-15 collapse (their zero-length piece is dropped) and adjacent pieces
/// with equal values merge. Two step functions describing the same function
/// therefore compare equal with `==`.
class StepFunction {
 public:
  /// Throws PreconditionError unless breakpoints run 0 = t0 < ... < tn = 1
  /// with n = values.size() and every value is finite and >= 0.
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double c);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Value on the piece containing t; t <= 0 yields the first value.
  double operator()(double t) const;

  /// The integral over (0, t], clamped to t in [0, 1].
  double primitive(double t) const;

  /// Integral over (a, b]; throws PreconditionError unless 0 <= a <= b <= 1.
  double integral(double a, double b) const;

  double total() const { return prefix_.back(); }
  bool is_nonincreasing() const;
  std::vector<Piece> pieces() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::size_t piece_index(double t) const;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // prefix_[i] = integral over (0, t_i]
};

/// One arc coeff * u^exponent on (start, end].
struct PowerSegment {
  double start;
  double end;
  double coeff;
  double exponent;

  double operator()(double u) const;
  friend bool operator==(const PowerSegment&, const PowerSegment&) = default;
};

/// Positive function on (0, u_max] made of contiguous power arcs. Each
/// exponent exceeds -1, so the function is integrable at 0.
class PiecewisePower {
 public:
  explicit PiecewisePower(std::vector<PowerSegment> segments);

  /// coeff * u^exponent on (0, 1].
  static PiecewisePower single(double coeff, double exponent);

  std::span<const PowerSegment> segments() const { return segments_; }
  double u_max() const { return segments_.back().end; }

  /// Value at u in (0, u_max]; zero beyond u_max.
  double operator()(double u) const;

  /// Integral over (0, u]; u beyond u_max gives the total mass.
  double primitive(double u) const;

  /// Integral over (a, b]; throws PreconditionError unless
  /// 0 <= a <= b <= u_max.
  double integral(double a, double b) const;

  double total() const { return prefix_.back(); }
  bool is_nonincreasing() const;

 private:
  std::size_t segment_index(double u) const;

  std::vector<PowerSegment> segments_;
  std::vector<double> prefix_;  // prefix_[i] = integral over (0, start_i]
};

struct DistributionPoint {
  double level;
  double measure;
};

/// A weak-type constraint ||phi||_{p,inf}^p <= F, i.e. phi*(u) <= (F/u)^{1/p}.
struct WeakConstraint {
  double p;
  double F;
};

/// Decreasing rearrangement of a finite family of blocks. Measures must be
/// positive and sum to 1 within 1e-12; equal values merge into one piece.
StepFunction rearrange(std::span<const Piece> pieces);

/// Decreasing rearrangement of an arbitrary step function.
StepFunction rearrange(const StepFunction& g);

/// mu({g > level}).
double distribution(const StepFunction& g, double level);

/// The distribution function sampled at the given levels.
std::vector<DistributionPoint> distribution(const StepFunction& g,
                                            std::span<const double> levels);

double integrate_step(const StepFunction& g, double a, double b);
double integrate_pp(const PiecewisePower& R, double a, double b);

/// q-th power of the Lorentz quasinorm: the integral over (0,1] of
/// (t^{1/p} g(t))^q dt/t. `g` must be nonincreasing. Power arcs that make the
/// integral diverge at 0 raise DomainError.
double lorentz_qnorm(const StepFunction& g, double p, double q);
double lorentz_qnorm(const PiecewisePower& g, double p, double q);

/// sup_t t^{1/p} g(t) for nonincreasing g (not raised to the p-th power).
/// Returns +inf when the supremum is unbounded.
double weak_qnorm(const StepFunction& g, double p);
double weak_qnorm(const PiecewisePower& g, double p);

/// Pointwise minimum of u -> (F_j/u)^{1/p_j} over (0,1].
PiecewisePower lower_envelope(std::span<const WeakConstraint> curves);

}  // namespace bellmax
