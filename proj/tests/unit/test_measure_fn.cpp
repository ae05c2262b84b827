#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellmax/errors.hpp"
#include "bellmax/measure_fn.hpp"
#include "support/oracles.hpp"

namespace bellmax {
namespace {

using testing::brute_distribution;

// ---------------------------------------------------------------- StepFunction

TEST(StepFunction, CanonicalizesRepresentation) {
  const StepFunction g({0.0, 0.25, 0.25 + 1e-16, 0.5, 1.0}, {3.0, 7.0, 3.0, 1.0});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g.breakpoints()[1], 0.5);
  EXPECT_EQ(g.values()[0], 3.0);
  EXPECT_EQ(g.values()[1], 1.0);
}

TEST(StepFunction, RejectsMalformedInput) {
  EXPECT_THROW(StepFunction({0.0, 0.5}, {1.0}), PreconditionError);
  EXPECT_THROW(StepFunction({0.1, 1.0}, {1.0}), PreconditionError);
  EXPECT_THROW(StepFunction({0.0, 0.7, 0.5, 1.0}, {1.0, 1.0, 1.0}), PreconditionError);
  EXPECT_THROW(StepFunction({0.0, 1.0}, {-1.0}), PreconditionError);
  EXPECT_THROW(StepFunction({0.0, 1.0}, {NAN}), PreconditionError);
  EXPECT_THROW(StepFunction({0.0, 0.5, 1.0}, {1.0}), PreconditionError);
}

TEST(StepFunction, EvaluatesOnHalfOpenPieces) {
  const StepFunction g({0.0, 0.5, 1.0}, {2.0, 1.0});
  EXPECT_EQ(g(0.25), 2.0);
  EXPECT_EQ(g(0.5), 2.0);  // (0, 0.5] includes its right end
  EXPECT_EQ(g(0.5000001), 1.0);
  EXPECT_EQ(g(1.0), 1.0);
}

// ---------------------------------------------------------------- rearrange

TEST(Rearrange, SortsTwoPieces) {
  const Piece pcs[] = {{0.5, 0.0}, {0.5, 2.0}};
  const auto g = rearrange(pcs);
  EXPECT_EQ(g, StepFunction({0.0, 0.5, 1.0}, {2.0, 0.0}));
}

TEST(Rearrange, IdempotentOnNonincreasingInput) {
  const StepFunction g({0.0, 0.125, 0.375, 1.0}, {5.0, 2.0, 0.5});
  const auto pcs = g.pieces();
  EXPECT_EQ(rearrange(std::span<const Piece>(pcs)), g);
  EXPECT_EQ(rearrange(g), g);
}

TEST(Rearrange, MergesEqualValuesAndPreservesDistribution) {
  const std::vector<Piece> pcs = {{0.25, 1.0}, {0.25, 3.0}, {0.5, 1.0}};
  const auto g = rearrange(pcs);
  EXPECT_EQ(g, StepFunction({0.0, 0.25, 1.0}, {3.0, 1.0}));
  // Brute-force distribution comparison at every distinct value and between.
  for (double level : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
    EXPECT_DOUBLE_EQ(distribution(g, level), brute_distribution(pcs, level)) << level;
  }
  EXPECT_DOUBLE_EQ(distribution(g, 2.0), 0.25);
}

TEST(Rearrange, RejectsBadMeasures) {
  const Piece short_mass[] = {{0.5, 1.0}, {0.4, 2.0}};
  EXPECT_THROW(rearrange(short_mass), PreconditionError);
  const Piece zero_piece[] = {{0.0, 1.0}, {1.0, 2.0}};
  EXPECT_THROW(rearrange(zero_piece), PreconditionError);
  const Piece within_tol[] = {{0.5, 1.0}, {0.5 + 5e-13, 2.0}};
  EXPECT_NO_THROW(rearrange(within_tol));
}

// Equimeasurability, L1 preservation and quasinorm invariance on random
// piece families.
TEST(Rearrange, PropertiesOnRandomFamilies) {
  std::mt19937_64 rng(20241019);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    std::vector<Piece> pcs;
    // Dyadic measures keep all partial sums exact.
    const int total_units = 64;
    int remaining = total_units;
    for (int i = 0; i < n && remaining > 0; ++i) {
      const int units = i + 1 == n ? remaining : 1 + static_cast<int>(rng() % remaining);
      remaining -= units;
      const double value = unit(rng) < 0.3 ? std::floor(4.0 * unit(rng)) : 5.0 * unit(rng);
      pcs.push_back({units / static_cast<double>(total_units), value});
    }
    if (remaining > 0) pcs.push_back({remaining / static_cast<double>(total_units), 0.0});

    const auto g = rearrange(pcs);
    ASSERT_TRUE(g.is_nonincreasing());

    std::vector<double> levels;
    for (const auto& pc : pcs) levels.push_back(pc.value);
    for (int i = 0; i <= 50; ++i) levels.push_back(0.1 * i);
    for (double level : levels) {
      ASSERT_EQ(distribution(g, level), brute_distribution(pcs, level)) << "trial " << trial << " level " << level;
    }

    double mass = 0.0;
    for (const auto& pc : pcs) mass += pc.measure * pc.value;
    EXPECT_NEAR(g.total(), mass, 1e-14 * std::max(1.0, mass));

    // Quasinorm of the rearranged function vs. the sorted piece list, summed
    // directly as v^q (p/q) (t_i^{q/p} - t_{i-1}^{q/p}).
    std::vector<Piece> sorted = pcs;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) { return a.value > b.value; });
    const double p = 2.5, q = 1.5;
    double direct = 0.0, t = 0.0;
    for (const auto& pc : sorted) {
      direct += std::pow(pc.value, q) * (p / q) * (std::pow(t + pc.measure, q / p) - std::pow(t, q / p));
      t += pc.measure;
    }
    EXPECT_NEAR(lorentz_qnorm(g, p, q), direct, 1e-12 * std::max(1.0, direct));
  }
}

// ---------------------------------------------------------------- integration

TEST(IntegrateStep, Examples) {
  EXPECT_EQ(integrate_step(StepFunction::constant(2.0), 0.0, 1.0), 2.0);
  const StepFunction g({0.0, 0.5, 1.0}, {2.0, 0.0});
  EXPECT_EQ(integrate_step(g, 0.5, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(integrate_step(g, 0.0, 0.75), 2.0 * 0.5 + 0.0 * 0.25);
  EXPECT_THROW(integrate_step(g, 0.6, 0.5), PreconditionError);
  EXPECT_THROW(integrate_step(g, -0.1, 0.5), PreconditionError);
  EXPECT_THROW(integrate_step(g, 0.0, 1.5), PreconditionError);
}

TEST(IntegratePP, Examples) {
  const auto R = PiecewisePower::single(1.0, -0.5);
  EXPECT_DOUBLE_EQ(integrate_pp(R, 0.0, 1.0), 2.0);
  EXPECT_EQ(integrate_pp(R, 0.0, 0.0), 0.0);
  const WeakConstraint curves[] = {{2.0, 1.0}, {3.0, 1.0}};
  EXPECT_NEAR(integrate_pp(lower_envelope(curves), 0.0, 1.0), 1.5, 1e-15);
  EXPECT_THROW(integrate_pp(R, 0.5, 0.25), PreconditionError);
}

TEST(IntegratePP, MatchesQuadratureOnEnvelope) {
  const WeakConstraint curves[] = {{1.5, 0.3}, {2.0, 1.0}, {4.0, 5.0}};
  const auto R = lower_envelope(curves);
  std::vector<double> cuts;
  for (const auto& s : R.segments()) cuts.push_back(s.end);
  for (double b : {0.01, 0.3, 0.77, 1.0}) {
    const double oracle = testing::tanh_sinh_split([&](double u) { return R(u); }, 0.0, b, cuts);
    EXPECT_NEAR(integrate_pp(R, 0.0, b), oracle, 1e-12 * oracle);
  }
}

// ---------------------------------------------------------------- quasinorms

TEST(LorentzQnorm, Examples) {
  for (double p : {1.5, 2.0, 4.0}) {
    for (double q : {1.0, 2.0, 3.5}) {
      const double c = 1.7;
      EXPECT_NEAR(lorentz_qnorm(StepFunction::constant(c), p, q), std::pow(c, q) * p / q,
                  1e-14 * std::pow(c, q) * p / q);
      const double alpha = 0.5 / p;
      EXPECT_NEAR(lorentz_qnorm(PiecewisePower::single(1.0, -alpha), p, q), 1.0 / (q / p - alpha * q), 1e-13);
    }
  }
  EXPECT_EQ(lorentz_qnorm(StepFunction::constant(0.0), 2.0, 2.0), 0.0);
}

TEST(LorentzQnorm, DivergenceAndPreconditions) {
  // t^{-1/2} with p = 2 makes the integrand t^{-1}.
  EXPECT_THROW(lorentz_qnorm(PiecewisePower::single(1.0, -0.5), 2.0, 2.0), DomainError);
  const StepFunction increasing({0.0, 0.5, 1.0}, {1.0, 2.0});
  EXPECT_THROW(lorentz_qnorm(increasing, 2.0, 2.0), PreconditionError);
  EXPECT_THROW(lorentz_qnorm(StepFunction::constant(1.0), 1.0, 2.0), PreconditionError);
}

TEST(LorentzQnorm, AgreesWithQuadratureOnPowerPieces) {
  const PiecewisePower g({{0.0, 0.2, 2.0, -0.3}, {0.2, 1.0, 2.0 * std::pow(0.2, -0.3 + 0.1), -0.1}});
  const double p = 2.0, q = 3.0;
  const double oracle = testing::tanh_sinh_split(
      [&](double t) { return std::pow(std::pow(t, 1.0 / p) * g(t), q) / t; }, 0.0, 1.0, {0.2});
  EXPECT_NEAR(lorentz_qnorm(g, p, q), oracle, 1e-12 * oracle);
}

TEST(WeakQnorm, Examples) {
  for (double p : {1.2, 2.0, 5.0}) {
    EXPECT_NEAR(weak_qnorm(PiecewisePower::single(1.0, -1.0 / p), p), 1.0, 1e-15);
    EXPECT_EQ(weak_qnorm(StepFunction::constant(3.0), p), 3.0);
  }
  const StepFunction g({0.0, 0.5, 1.0}, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(weak_qnorm(g, 2.0), std::sqrt(2.0));
  EXPECT_TRUE(std::isinf(weak_qnorm(PiecewisePower::single(1.0, -0.9), 2.0)));
}

TEST(WeakQnorm, MatchesDenseGridSupremum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_step(rng);
    const double p = 1.1 + 3.0 * (trial % 7) / 7.0;
    const auto bp = g.breakpoints();
    double grid_sup = 0.0;
    for (std::size_t i = 1; i < bp.size(); ++i) grid_sup = std::max(grid_sup, std::pow(bp[i], 1.0 / p) * g(bp[i]));
    for (int i = 1; i <= 2000; ++i) {
      const double t = i / 2000.0;
      grid_sup = std::max(grid_sup, std::pow(t, 1.0 / p) * g(t));
    }
    EXPECT_NEAR(weak_qnorm(g, p), grid_sup, 1e-14 * grid_sup);
  }
}

// ---------------------------------------------------------------- envelope

TEST(LowerEnvelope, Examples) {
  const WeakConstraint one[] = {{2.0, 1.0}};
  const auto single = lower_envelope(one);
  ASSERT_EQ(single.segments().size(), 1u);
  EXPECT_EQ(single.segments()[0], (PowerSegment{0.0, 1.0, 1.0, -0.5}));

  const WeakConstraint nested[] = {{2.0, 1.0}, {3.0, 1.0}};
  const auto env = lower_envelope(nested);
  ASSERT_EQ(env.segments().size(), 1u);
  EXPECT_DOUBLE_EQ(env.segments()[0].exponent, -1.0 / 3.0);

  const WeakConstraint same_exponent[] = {{2.0, 1.0}, {2.0, 4.0}};
  const auto par = lower_envelope(same_exponent);
  ASSERT_EQ(par.segments().size(), 1u);
  EXPECT_EQ(par.segments()[0].coeff, 1.0);
  EXPECT_EQ(par.segments()[0].exponent, -0.5);
}

TEST(LowerEnvelope, InteriorCrossingIsClosedForm) {
  // u^{-1/2} meets 0.5^{1/4}... (F=0.5, p=4): 0.5^{1/4} u^{-1/4}; crossing at
  // u^{-1/4} = 0.5^{1/4}, i.e. u = 2 > 1: no crossing. Use F=4, p=4 instead:
  // sqrt(2) u^{-1/4} = u^{-1/2} at u = 1/4.
  const WeakConstraint curves[] = {{2.0, 1.0}, {4.0, 4.0}};
  const auto env = lower_envelope(curves);
  ASSERT_EQ(env.segments().size(), 2u);
  EXPECT_NEAR(env.segments()[0].end, 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(env.segments()[0].exponent, -0.25);
  EXPECT_DOUBLE_EQ(env.segments()[1].exponent, -0.5);
}

TEST(LowerEnvelope, NeverExceedsAnyCurveAndTouchesOne) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<WeakConstraint> curves;
    const int m = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < m; ++j) curves.push_back({1.05 + 6.0 * unit(rng), std::exp(4.0 * unit(rng) - 2.0)});
    const auto env = lower_envelope(curves);
    ASSERT_TRUE(env.is_nonincreasing());
    EXPECT_EQ(env.u_max(), 1.0);
    for (int i = 1; i <= 1000; ++i) {
      const double u = i / 1000.0;
      const double e = env(u);
      double closest = INFINITY;
      for (const auto& c : curves) {
        const double v = std::pow(c.F / u, 1.0 / c.p);
        ASSERT_LE(e, v * (1.0 + 1e-12)) << "trial " << trial << " u " << u;
        closest = std::min(closest, std::abs(e - v) / v);
      }
      ASSERT_LE(closest, 1e-12) << "trial " << trial << " u " << u;
    }
  }
}

TEST(LowerEnvelope, NearlyParallelCurvesDecidedByCoefficient) {
  const WeakConstraint curves[] = {{2.0, 1.0}, {2.0 * (1.0 + 1e-15), 1.5}};
  const auto env = lower_envelope(curves);
  ASSERT_EQ(env.segments().size(), 1u);
  EXPECT_EQ(env.segments()[0].coeff, 1.0);
}

TEST(LowerEnvelope, RejectsBadCurves) {
  EXPECT_THROW(lower_envelope(std::span<const WeakConstraint>{}), PreconditionError);
  const WeakConstraint bad_p[] = {{1.0, 1.0}};
  EXPECT_THROW(lower_envelope(bad_p), PreconditionError);
  const WeakConstraint bad_F[] = {{2.0, 0.0}};
  EXPECT_THROW(lower_envelope(bad_F), PreconditionError);
}

}  // namespace
}  // namespace bellmax
