#include "bellmax/measure_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "bellmax/errors.hpp"
#include "power_math.hpp"

namespace bellmax {

using detail::fmt_num;
using detail::throw_domain;
using detail::throw_precondition;

namespace {

constexpr double kBreakpointTol = 1e-15;
constexpr double kMeasureSumTol = 1e-12;

void check_exponents(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p)) throw_precondition("Lorentz exponent p must exceed 1, got " + fmt_num(p));
  if (!(q > 0.0) || !std::isfinite(q)) throw_precondition("Lorentz exponent q must be positive, got " + fmt_num(q));
}

}  // namespace

// ---------------------------------------------------------------- StepFunction

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.empty()) throw_precondition("step function needs at least one piece");
  if (breakpoints.size() != values.size() + 1) {
    throw_precondition("step function needs one more breakpoint than values");
  }
  if (std::abs(breakpoints.front()) > kBreakpointTol) {
    throw_precondition("first breakpoint must be 0, got " + fmt_num(breakpoints.front()));
  }
  if (std::abs(breakpoints.back() - 1.0) > kBreakpointTol) {
    throw_precondition("last breakpoint must be 1, got " + fmt_num(breakpoints.back()));
  }
  breakpoints.front() = 0.0;
  breakpoints.back() = 1.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw_precondition("step values must be finite and >= 0, got " + fmt_num(v));
  }

  breakpoints_.reserve(breakpoints.size());
  values_.reserve(values.size());
  breakpoints_.push_back(0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lo = breakpoints[i];
    const double hi = breakpoints[i + 1];
    if (hi < lo - kBreakpointTol) {
      throw_precondition("breakpoints must be increasing: " + fmt_num(lo) + " > " + fmt_num(hi));
    }
    if (hi - breakpoints_.back() <= kBreakpointTol) {
      // Zero-length piece. The final breakpoint must stay exactly 1.
      if (i + 1 == values.size() && !values_.empty()) breakpoints_.back() = 1.0;
      continue;
    }
    if (!values_.empty() && values_.back() == values[i]) {
      breakpoints_.back() = hi;
      continue;
    }
    values_.push_back(values[i]);
    breakpoints_.push_back(hi);
  }
  if (values_.empty()) throw_precondition("step function has no piece of positive length");

  prefix_.resize(breakpoints_.size());
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  }
}

StepFunction StepFunction::constant(double c) { return StepFunction({0.0, 1.0}, {c}); }

std::size_t StepFunction::piece_index(double t) const {
  // First piece whose right end is >= t, i.e. t in (t_{i-1}, t_i].
  auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  if (it == breakpoints_.end()) return values_.size() - 1;
  return static_cast<std::size_t>(it - (breakpoints_.begin() + 1));
}

double StepFunction::operator()(double t) const { return values_[piece_index(t)]; }

double StepFunction::primitive(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return prefix_.back();
  const std::size_t i = piece_index(t);
  return prefix_[i] + values_[i] * (t - breakpoints_[i]);
}

double StepFunction::integral(double a, double b) const {
  if (!(a >= 0.0 && a <= b && b <= 1.0)) {
    throw_precondition("integration bounds must satisfy 0 <= a <= b <= 1, got (" + fmt_num(a) + ", " + fmt_num(b) + ")");
  }
  if (a == b) return 0.0;
  return primitive(b) - primitive(a);
}

bool StepFunction::is_nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

std::vector<Piece> StepFunction::pieces() const {
  std::vector<Piece> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.push_back({breakpoints_[i + 1] - breakpoints_[i], values_[i]});
  }
  return out;
}

// ---------------------------------------------------------------- PiecewisePower

double PowerSegment::operator()(double u) const { return coeff * std::pow(u, exponent); }

PiecewisePower::PiecewisePower(std::vector<PowerSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw_precondition("piecewise power function needs at least one segment");
  if (segments_.front().start != 0.0) throw_precondition("first power segment must start at 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.end > s.start)) throw_precondition("power segment (" + fmt_num(s.start) + ", " + fmt_num(s.end) + "] is empty");
    if (i > 0 && s.start != segments_[i - 1].end) throw_precondition("power segments must be contiguous");
    if (!(s.coeff > 0.0) || !std::isfinite(s.coeff)) throw_precondition("power coefficient must be positive, got " + fmt_num(s.coeff));
    if (!(s.exponent > -1.0) || !std::isfinite(s.exponent)) {
      throw_precondition("power exponent must exceed -1, got " + fmt_num(s.exponent));
    }
  }
  if (segments_.back().end > 1.0) throw_precondition("power segments must end at or before 1");

  prefix_.resize(segments_.size() + 1);
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    prefix_[i + 1] = prefix_[i] + s.coeff * detail::power_integral(s.start, s.end, s.exponent);
  }
}

PiecewisePower PiecewisePower::single(double coeff, double exponent) {
  return PiecewisePower({{0.0, 1.0, coeff, exponent}});
}

std::size_t PiecewisePower::segment_index(double u) const {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), u,
                             [](const PowerSegment& s, double x) { return s.end < x; });
  if (it == segments_.end()) return segments_.size() - 1;
  return static_cast<std::size_t>(it - segments_.begin());
}

double PiecewisePower::operator()(double u) const {
  if (u > u_max()) return 0.0;
  return segments_[segment_index(u)](u);
}

double PiecewisePower::primitive(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= u_max()) return prefix_.back();
  const std::size_t i = segment_index(u);
  const auto& s = segments_[i];
  return prefix_[i] + s.coeff * detail::power_integral(s.start, u, s.exponent);
}

double PiecewisePower::integral(double a, double b) const {
  if (!(a >= 0.0 && a <= b && b <= u_max())) {
    throw_precondition("integration bounds must satisfy 0 <= a <= b <= " + fmt_num(u_max()) + ", got (" + fmt_num(a) +
                       ", " + fmt_num(b) + ")");
  }
  if (a == b) return 0.0;
  return primitive(b) - primitive(a);
}

bool PiecewisePower::is_nonincreasing() const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (s.exponent > 0.0) return false;
    if (i > 0) {
      const auto& prev = segments_[i - 1];
      // Allow a relative rounding slack at the junction.
      const double left = prev(prev.end);
      const double right = s(s.start);
      if (right > left * (1.0 + 1e-12)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- operations

StepFunction rearrange(std::span<const Piece> pieces) {
  if (pieces.empty()) throw_precondition("rearrange needs at least one piece");
  double mass = 0.0;
  for (const auto& pc : pieces) {
    if (!(pc.measure > 0.0) || !std::isfinite(pc.measure)) {
      throw_precondition("piece measures must be positive, got " + fmt_num(pc.measure));
    }
    if (!(pc.value >= 0.0) || !std::isfinite(pc.value)) {
      throw_precondition("piece values must be finite and >= 0, got " + fmt_num(pc.value));
    }
    mass += pc.measure;
  }
  if (std::abs(mass - 1.0) > kMeasureSumTol) {
    throw_precondition("piece measures must sum to 1, got " + fmt_num(mass));
  }

  std::vector<Piece> sorted(pieces.begin(), pieces.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Piece& x, const Piece& y) { return x.value > y.value; });

  std::vector<double> breakpoints{0.0};
  std::vector<double> values;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double v = sorted[i].value;
    double m = 0.0;
    for (; i < sorted.size() && sorted[i].value == v; ++i) m += sorted[i].measure;
    cumulative += m;
    values.push_back(v);
    breakpoints.push_back(cumulative);
  }
  breakpoints.back() = 1.0;
  return StepFunction(std::move(breakpoints), std::move(values));
}

StepFunction rearrange(const StepFunction& g) {
  if (g.is_nonincreasing()) return g;
  const auto pcs = g.pieces();
  return rearrange(std::span<const Piece>(pcs));
}

double distribution(const StepFunction& g, double level) {
  double m = 0.0;
  const auto bp = g.breakpoints();
  const auto vals = g.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] > level) m += bp[i + 1] - bp[i];
  }
  return m;
}

std::vector<DistributionPoint> distribution(const StepFunction& g, std::span<const double> levels) {
  std::vector<DistributionPoint> out;
  out.reserve(levels.size());
  for (double level : levels) out.push_back({level, distribution(g, level)});
  return out;
}

double integrate_step(const StepFunction& g, double a, double b) { return g.integral(a, b); }

double integrate_pp(const PiecewisePower& R, double a, double b) { return R.integral(a, b); }

double lorentz_qnorm(const StepFunction& g, double p, double q) {
  check_exponents(p, q);
  if (!g.is_nonincreasing()) throw_precondition("lorentz_qnorm expects a nonincreasing function; rearrange it first");
  const double k = q / p;
  const auto bp = g.breakpoints();
  const auto vals = g.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] == 0.0) continue;
    sum += std::pow(vals[i], q) * detail::power_integral(bp[i], bp[i + 1], k - 1.0);
  }
  return sum;
}

double lorentz_qnorm(const PiecewisePower& g, double p, double q) {
  check_exponents(p, q);
  if (!g.is_nonincreasing()) throw_precondition("lorentz_qnorm expects a nonincreasing function");
  double sum = 0.0;
  for (const auto& s : g.segments()) {
    const double e = s.exponent * q + q / p - 1.0;
    const double piece = std::pow(s.coeff, q) * detail::power_integral(s.start, s.end, e);
    if (!std::isfinite(piece)) {
      throw_domain("Lorentz quasinorm diverges at 0: combined exponent " + fmt_num(e) + " <= -1 on (" + fmt_num(s.start) +
                   ", " + fmt_num(s.end) + "]");
    }
    sum += piece;
  }
  return sum;
}

double weak_qnorm(const StepFunction& g, double p) {
  if (!(p > 1.0)) throw_precondition("weak exponent p must exceed 1, got " + fmt_num(p));
  if (!g.is_nonincreasing()) throw_precondition("weak_qnorm expects a nonincreasing function");
  const auto bp = g.breakpoints();
  const auto vals = g.values();
  double best = 0.0;
  // t^{1/p} v increases on each constant piece: the sup sits at a right end.
  for (std::size_t i = 0; i < vals.size(); ++i) best = std::max(best, vals[i] * std::pow(bp[i + 1], 1.0 / p));
  return best;
}

double weak_qnorm(const PiecewisePower& g, double p) {
  if (!(p > 1.0)) throw_precondition("weak exponent p must exceed 1, got " + fmt_num(p));
  if (!g.is_nonincreasing()) throw_precondition("weak_qnorm expects a nonincreasing function");
  double best = 0.0;
  for (const auto& s : g.segments()) {
    const double d = s.exponent + 1.0 / p;
    double v = 0.0;
    if (d > 0.0) {
      v = s.coeff * std::pow(s.end, d);
    } else if (d < 0.0) {
      if (s.start == 0.0) return std::numeric_limits<double>::infinity();
      v = s.coeff * std::pow(s.start, d);
    } else {
      v = s.coeff;
    }
    best = std::max(best, v);
  }
  return best;
}

PiecewisePower lower_envelope(std::span<const WeakConstraint> curves) {
  if (curves.empty()) throw_precondition("lower_envelope needs at least one curve");
  constexpr double kParallelTol = 1e-14;

  const std::size_t m = curves.size();
  std::vector<double> log_coeff(m), slope(m);  // log curve_j(u) = log_coeff_j - slope_j log u
  for (std::size_t j = 0; j < m; ++j) {
    const auto& c = curves[j];
    if (!(c.p > 1.0) || !std::isfinite(c.p)) throw_precondition("weak exponent must exceed 1, got " + fmt_num(c.p));
    if (!(c.F > 0.0) || !std::isfinite(c.F)) throw_precondition("weak bound F must be positive, got " + fmt_num(c.F));
    slope[j] = 1.0 / c.p;
    log_coeff[j] = std::log(c.F) / c.p;
  }

  std::vector<double> cuts;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      const double ds = slope[j] - slope[k];
      if (std::abs(ds) < kParallelTol) continue;
      const double u = std::exp((log_coeff[j] - log_coeff[k]) / ds);
      if (u > 0.0 && u < 1.0) cuts.push_back(u);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(1.0);

  auto argmin_at = [&](double u) {
    const double lu = std::log(u);
    std::size_t best = 0;
    double best_val = log_coeff[0] - slope[0] * lu;
    for (std::size_t j = 1; j < m; ++j) {
      const double v = log_coeff[j] - slope[j] * lu;
      if (v < best_val) {
        best = j;
        best_val = v;
      }
    }
    return best;
  };

  std::vector<PowerSegment> segs;
  double lo = 0.0;
  std::size_t current = m;  // sentinel
  for (double hi : cuts) {
    const double probe = lo == 0.0 ? 0.5 * hi : std::sqrt(lo * hi);
    const std::size_t j = argmin_at(probe);
    if (j == current) {
      segs.back().end = hi;
    } else {
      segs.push_back({lo, hi, std::pow(curves[j].F, slope[j]), -slope[j]});
      current = j;
    }
    lo = hi;
  }
  return PiecewisePower(std::move(segs));
}

}  // namespace bellmax
