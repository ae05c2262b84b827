#pragma once

// Maximal operators on the dyadic tree of ([0,1], Lebesgue) and the chain
// construction of near-extremal functions with a prescribed rearrangement.

#include <cstdint>
#include <span>
#include <vector>

#include "bellmax/hardy.hpp"
#include "bellmax/measure_fn.hpp"

namespace bellmax {

/// A function constant on the 2^depth dyadic leaves of (0,1]; value i lives
/// on (i 2^-depth, (i+1) 2^-depth].
class LeafVector {
 public:
  static constexpr int kMaxDepth = 24;

  /// Throws PreconditionError unless 1 <= depth <= 24, values.size() ==
  /// 2^depth and every value is finite and >= 0.
  LeafVector(int depth, std::vector<double> values);

  static LeafVector constant(int depth, double c);

  int depth() const { return depth_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// The same function as a StepFunction (adjacent equal leaves merge).
  StepFunction to_step() const;

  friend bool operator==(const LeafVector&, const LeafVector&) = default;

 private:
  int depth_;
  std::vector<double> values_;
};

/// M phi on the depth-D dyadic tree: each leaf takes the largest average
/// over its ancestors, itself and the root included. One bottom-up pass
/// computes the averages, one top-down pass carries the running maximum.
LeafVector dyadic_maximal(const LeafVector& phi);

/// Decreasing rearrangement of a leaf vector.
StepFunction leaf_rearranged(const LeafVector& phi);

/// (M phi)*.
StepFunction maximal_rearranged(const LeafVector& phi);

/// Parameters of the chain construction. The chain I_m = (0, rho^m] with
/// rho = 1 - alpha nests sets of measure rho^m; the annuli
/// (rho^{m+1}, rho^m] carry g unchanged, so psi* = g.
struct ExtremizerSpec {
  StepFunction g;
  double k = 1.0;
  int N = 1;
  /// Number of annuli kept before the tail; 0 picks N times the count
  /// needed for the base ratio to fall below kTailDepth.
  std::int64_t ranks = 0;

  static constexpr double kTailDepth = 1e-9;

  /// alpha_N = 1 - (1-k)^{1/N}; at k = 1 the base ratio 1/2 replaces 1 - k.
  double alpha() const;
  double ratio() const { return 1.0 - alpha(); }
  std::int64_t rank_count() const;
  void validate() const;
};

struct ExtremizerProfile {
  StepFunction psi;
  /// Certified lower bound for (M psi)*: on annulus m it is the average of g
  /// over (0, rho^m]; below the last annulus it is the average over
  /// (0, rho^M].
  StepFunction lower;
};

ExtremizerProfile extremizer_profile(const ExtremizerSpec& spec);

struct SymmetrizationReport {
  double lower_sum = 0.0;    // S_N: the functional of the lower profile
  double hardy_value = 0.0;  // T: the functional of Hg
  double gap = 0.0;          // T - S_N
  double alpha = 0.0;
  std::int64_t annuli = 0;
  bool bounded = false;      // S_N <= T + 1e-10
};

/// Squeezes the Hardy functional from below with the chain construction.
/// Throws PreconditionError unless fspec.upper == spec.k.
SymmetrizationReport verify_symmetrization(const ExtremizerSpec& spec, const FunctionalSpec& fspec,
                                           const FunctionalOptions& opts = {});

/// Chain realization with alpha = 1/2 on the dyadic tree: I_m is the
/// leftmost dyadic interval of measure 2^-m and its right child receives g
/// restricted to (2^-(m+1), 2^-m]. Leaves hold per-leaf averages of g.
LeafVector dyadic_extremizer(const StepFunction& g, int depth);

}  // namespace bellmax
