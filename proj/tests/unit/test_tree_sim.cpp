#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellmax/errors.hpp"
#include "bellmax/tree_sim.hpp"
#include "support/oracles.hpp"

namespace bellmax {
namespace {

// O(D 2^D) reference: walk every ancestor of every leaf.
std::vector<double> brute_maximal(const std::vector<double>& leaves, int depth) {
  const std::size_t n = leaves.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int level = 0; level <= depth; ++level) {
      const std::size_t width = std::size_t{1} << (depth - level);
      const std::size_t lo = (i / width) * width;
      double sum = 0.0;
      for (std::size_t j = lo; j < lo + width; ++j) sum += leaves[j];
      out[i] = std::max(out[i], sum / static_cast<double>(width));
    }
  }
  return out;
}

std::vector<double> random_leaves(std::mt19937_64& rng, int depth) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << depth);
  const int shape = static_cast<int>(rng() % 3);
  for (auto& x : v) {
    const double u = unit(rng);
    x = shape == 0 ? u : shape == 1 ? (u < 0.05 ? 100.0 * unit(rng) : 0.0) : std::exp(6.0 * u - 3.0);
  }
  return v;
}

TEST(LeafVector, Validation) {
  EXPECT_THROW(LeafVector(0, {1.0}), PreconditionError);
  EXPECT_THROW(LeafVector(25, {}), PreconditionError);
  EXPECT_THROW(LeafVector(2, {1.0, 2.0}), PreconditionError);
  EXPECT_THROW(LeafVector(1, {1.0, -1.0}), PreconditionError);
  EXPECT_THROW(LeafVector(1, {1.0, INFINITY}), PreconditionError);
  EXPECT_EQ(LeafVector::constant(3, 2.0).size(), 8u);
}

TEST(DyadicMaximal, Examples) {
  EXPECT_EQ(dyadic_maximal(LeafVector::constant(5, 1.5)), LeafVector::constant(5, 1.5));
  EXPECT_EQ(dyadic_maximal(LeafVector(1, {2.0, 0.0})).values()[1], 1.0);
  EXPECT_EQ(dyadic_maximal(LeafVector(1, {2.0, 0.0})), LeafVector(1, {2.0, 1.0}));
  EXPECT_EQ(dyadic_maximal(LeafVector(2, {4.0, 0.0, 0.0, 0.0})), LeafVector(2, {4.0, 2.0, 1.0, 1.0}));
}

TEST(DyadicMaximal, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int depth = 1; depth <= 10; ++depth) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto leaves = random_leaves(rng, depth);
      const auto got = dyadic_maximal(LeafVector(depth, leaves));
      const auto ref = brute_maximal(leaves, depth);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        ASSERT_NEAR(got[i], ref[i], 1e-13 * std::max(1.0, ref[i])) << "depth " << depth << " leaf " << i;
      }
    }
  }
}

// Depths above the block size take the three-pass path.
TEST(DyadicMaximal, BlockedPathMatchesBruteForceSpine) {
  std::mt19937_64 rng(6);
  const int depth = 15;
  const auto leaves = random_leaves(rng, depth);
  const auto got = dyadic_maximal(LeafVector(depth, leaves));
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{4095}, std::size_t{4096}, std::size_t{30000},
                        leaves.size() - 1}) {
    double best = 0.0;
    for (int level = 0; level <= depth; ++level) {
      const std::size_t width = std::size_t{1} << (depth - level);
      const std::size_t lo = (i / width) * width;
      double sum = 0.0;
      for (std::size_t j = lo; j < lo + width; ++j) sum += leaves[j];
      best = std::max(best, sum / static_cast<double>(width));
    }
    EXPECT_NEAR(got[i], best, 1e-12 * best) << i;
  }
}

TEST(DyadicMaximal, MonotoneHomogeneousAndDominating) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int depth = 1 + trial % 9;
    const auto a = random_leaves(rng, depth);
    auto b = a;
    for (auto& x : b) x += 0.25;
    const auto Ma = dyadic_maximal(LeafVector(depth, a));
    const auto Mb = dyadic_maximal(LeafVector(depth, b));
    std::vector<double> scaled(a);
    for (auto& x : scaled) x *= 4.0;
    const auto Ms = dyadic_maximal(LeafVector(depth, scaled));
    double root = 0.0;
    for (double x : a) root += x;
    root /= static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_LE(Ma[i], Mb[i]);
      EXPECT_EQ(Ms[i], 4.0 * Ma[i]);  // power-of-two scaling is exact
      EXPECT_GE(Ma[i], a[i]);
      EXPECT_GE(Ma[i], root * (1.0 - 1e-15));
    }
  }
}

TEST(MaximalRearranged, Examples) {
  EXPECT_EQ(maximal_rearranged(LeafVector::constant(4, 2.0)), StepFunction::constant(2.0));
  EXPECT_EQ(maximal_rearranged(LeafVector(1, {0.0, 2.0})), StepFunction({0.0, 0.5, 1.0}, {2.0, 1.0}));
}

TEST(MaximalRearranged, BoundedByHardyOfRearrangement) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int depth = 1 + trial % 10;
    const LeafVector phi(depth, random_leaves(rng, depth));
    const auto M = maximal_rearranged(phi);
    const auto star = leaf_rearranged(phi);
    for (double t : M.breakpoints().subspan(1)) {
      const double bound = star.primitive(t) / t;
      ASSERT_LE(M(t), bound + 1e-12 * std::max(1.0, bound)) << trial << " t " << t;
    }
  }
}

TEST(LeafRearranged, SortsAndMerges) {
  const auto s = leaf_rearranged(LeafVector(2, {1.0, 3.0, 1.0, 0.0}));
  EXPECT_EQ(s, StepFunction({0.0, 0.25, 0.75, 1.0}, {3.0, 1.0, 0.0}));
}

// ---------------------------------------------------------------- extremizer

TEST(ExtremizerSpec, Alpha) {
  ExtremizerSpec s{StepFunction::constant(1.0), 0.75, 2};
  EXPECT_NEAR(s.alpha(), 0.5, 1e-15);
  for (double k : {0.1, 0.5, 0.9}) {
    for (int N : {1, 4, 16, 256}) {
      ExtremizerSpec e{StepFunction::constant(1.0), k, N};
      EXPECT_GT(e.alpha(), 0.0);
      EXPECT_LT(e.alpha(), 1.0);
      EXPECT_NEAR(std::pow(e.ratio(), N), 1.0 - k, 1e-12);
    }
  }
  EXPECT_THROW((ExtremizerSpec{StepFunction::constant(1.0), 0.0, 2}.validate()), PreconditionError);
  EXPECT_THROW((ExtremizerSpec{StepFunction::constant(1.0), 0.5, 0}.validate()), PreconditionError);
  EXPECT_THROW((ExtremizerSpec{StepFunction({0.0, 0.5, 1.0}, {1.0, 2.0}), 0.5, 2}.validate()), PreconditionError);
}

TEST(ExtremizerProfile, ConstantG) {
  const auto prof = extremizer_profile({StepFunction::constant(2.5), 0.5, 4});
  EXPECT_EQ(prof.psi, StepFunction::constant(2.5));
  for (double v : prof.lower.values()) EXPECT_NEAR(v, 2.5, 1e-15);
}

TEST(ExtremizerProfile, AveragesAtAnnulusEnds) {
  const StepFunction g({0.0, 0.1, 0.4, 1.0}, {5.0, 2.0, 0.5});
  const ExtremizerSpec spec{g, 0.6, 8};
  const auto prof = extremizer_profile(spec);
  EXPECT_EQ(prof.psi, g);
  ASSERT_TRUE(prof.lower.is_nonincreasing());
  const auto bp = prof.lower.breakpoints();
  for (std::size_t i = 1; i < bp.size(); ++i) {
    const double t = bp[i];
    // Equality at the right end of each annulus, bounded by Hg to its left.
    EXPECT_NEAR(prof.lower(t), g.primitive(t) / t, 1e-13);
    const double left = 0.5 * (bp[i - 1] + t);
    EXPECT_LE(prof.lower(left), g.primitive(left) / left + 1e-13);
  }
}

TEST(ExtremizerProfile, RootShape) {
  // g = t^{-1/2}/2 sampled as a fine step: average over (0, s] is s^{-1/2}.
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  for (int i = 60; i >= 0; --i) bp.push_back(std::pow(0.5, i / 3.0));
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    vals.push_back((std::sqrt(bp[i + 1]) - std::sqrt(bp[i])) / (bp[i + 1] - bp[i]));
  }
  const StepFunction g(bp, vals);
  const auto prof = extremizer_profile({g, 0.75, 2});
  const double rho = 0.5;
  for (int m = 0; m < 10; ++m) {
    const double t = std::pow(rho, m);
    EXPECT_NEAR(prof.lower(t), std::pow(rho, -m / 2.0), 1e-12 * std::pow(rho, -m / 2.0)) << m;
  }
}

TEST(VerifySymmetrization, ConstantIsTight) {
  const double c = 1.7, r = 1.5, s = 0.3, k = 0.6;
  for (int N : {1, 4, 16}) {
    const auto rep = verify_symmetrization({StepFunction::constant(c), k, N}, {OuterFunction::power(r), s, k});
    const double expected = std::pow(c, r) * std::pow(k, s + 1.0) / (s + 1.0);
    EXPECT_NEAR(rep.hardy_value, expected, 1e-14);
    EXPECT_NEAR(rep.lower_sum, expected, 1e-13);
    EXPECT_TRUE(rep.bounded);
  }
}

TEST(VerifySymmetrization, GapShrinksWithN) {
  const StepFunction g({0.0, 0.3, 1.0}, {3.0, 1.0});
  const FunctionalSpec fs{OuterFunction::power(2.0), 0.0, 1.0};
  double prev_gap = INFINITY, prev_sum = 0.0;
  for (int N : {4, 16, 64}) {
    const auto rep = verify_symmetrization({g, 1.0, N}, fs);
    EXPECT_TRUE(rep.bounded);
    EXPECT_LT(rep.gap, prev_gap);
    EXPECT_GE(rep.lower_sum, prev_sum);
    prev_gap = rep.gap;
    prev_sum = rep.lower_sum;
  }
  EXPECT_LE(prev_gap, 0.05 * verify_symmetrization({g, 1.0, 64}, fs).hardy_value);
}

TEST(VerifySymmetrization, UpperMismatch) {
  EXPECT_THROW(verify_symmetrization({StepFunction::constant(1.0), 0.5, 4}, {OuterFunction::power(1.0), 0.0, 1.0}),
               PreconditionError);
}

TEST(DyadicExtremizer, Examples) {
  EXPECT_EQ(dyadic_extremizer(StepFunction::constant(3.0), 6), LeafVector::constant(6, 3.0));
  EXPECT_EQ(dyadic_extremizer(StepFunction({0.0, 0.5, 1.0}, {2.0, 0.0}), 1), LeafVector(1, {2.0, 0.0}));
  EXPECT_THROW(dyadic_extremizer(StepFunction::constant(1.0), 0), PreconditionError);
}

TEST(DyadicExtremizer, MaximalOnAnnuliMatchesChainAverages) {
  const StepFunction g({0.0, 0.2, 1.0}, {4.0, 1.0});
  const int depth = 14;
  const auto phi = dyadic_extremizer(g, depth);
  const auto M = dyadic_maximal(phi);
  const auto prof = extremizer_profile({g, 1.0, 1});  // ratio 1/2: the dyadic chain
  for (int m = 0; m < 10; ++m) {
    // Rightmost leaf of the annulus (2^-(m+1), 2^-m].
    const double t = std::ldexp(1.0, -m);
    const std::size_t leaf = static_cast<std::size_t>(t * std::ldexp(1.0, depth)) - 1;
    EXPECT_GE(M[leaf], prof.lower(t) - 1e-12) << m;
  }
  // Per-leaf averages preserve the integral.
  EXPECT_NEAR(phi.to_step().total(), g.total(), 1e-15);
}

}  // namespace
}  // namespace bellmax
