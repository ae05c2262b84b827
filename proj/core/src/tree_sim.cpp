#include "bellmax/tree_sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <utility>

#include "bellmax/errors.hpp"
#include "power_math.hpp"

namespace bellmax {

using detail::fmt_num;
using detail::throw_precondition;

namespace {

constexpr int kBlockDepth = 12;

// Heap layout: node 0 is the root, children of i are 2i+1 and 2i+2, the
// `width` leaves occupy [width-1, 2 width-1).
void build_averages(std::span<const double> leaves, std::vector<double>& heap) {
  const std::size_t width = leaves.size();
  heap.resize(2 * width - 1);
  std::copy(leaves.begin(), leaves.end(), heap.begin() + static_cast<std::ptrdiff_t>(width - 1));
  for (std::size_t i = width - 1; i-- > 0;) heap[i] = 0.5 * (heap[2 * i + 1] + heap[2 * i + 2]);
}

// Running maximum from the root down; `inherited` is the maximum over the
// ancestors above this heap's root.
void push_maxima(std::vector<double>& heap, double inherited) {
  heap[0] = std::max(heap[0], inherited);
  const std::size_t internal = heap.size() / 2;
  for (std::size_t i = 0; i < internal; ++i) {
    heap[2 * i + 1] = std::max(heap[2 * i + 1], heap[i]);
    heap[2 * i + 2] = std::max(heap[2 * i + 2], heap[i]);
  }
}

template <typename Fn>
void for_each_block(std::size_t blocks, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, blocks >= 16 ? blocks : 1);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < blocks; b += workers) fn(b);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

// ------------------------------------------------------------------ LeafVector

LeafVector::LeafVector(int depth, std::vector<double> values) : depth_(depth), values_(std::move(values)) {
  if (depth < 1 || depth > kMaxDepth) throw_precondition("leaf depth must lie in [1, 24], got " + std::to_string(depth));
  if (values_.size() != (std::size_t{1} << depth)) {
    throw_precondition("depth " + std::to_string(depth) + " needs " + std::to_string(std::size_t{1} << depth) +
                       " leaves, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw_precondition("leaf values must be finite and >= 0, got " + fmt_num(v));
  }
}

LeafVector LeafVector::constant(int depth, double c) {
  if (depth < 1 || depth > kMaxDepth) throw_precondition("leaf depth must lie in [1, 24], got " + std::to_string(depth));
  return LeafVector(depth, std::vector<double>(std::size_t{1} << depth, c));
}

StepFunction LeafVector::to_step() const {
  const double width = std::ldexp(1.0, -depth_);
  std::vector<double> bp(values_.size() + 1);
  for (std::size_t i = 0; i <= values_.size(); ++i) bp[i] = static_cast<double>(i) * width;
  return StepFunction(std::move(bp), values_);
}

// ------------------------------------------------------------------ maximal

LeafVector dyadic_maximal(const LeafVector& phi) {
  const int depth = phi.depth();
  const int block_depth = std::min(depth, kBlockDepth);
  const std::size_t block = std::size_t{1} << block_depth;
  const std::size_t blocks = std::size_t{1} << (depth - block_depth);
  const auto leaves = phi.values();

  // Pass 1: block root averages, with the same pairwise reduction as pass 3.
  std::vector<double> roots(blocks);
  for_each_block(blocks, [&](std::size_t b) {
    std::vector<double> scratch(leaves.begin() + static_cast<std::ptrdiff_t>(b * block),
                                leaves.begin() + static_cast<std::ptrdiff_t>((b + 1) * block));
    for (std::size_t len = block; len > 1; len /= 2) {
      for (std::size_t i = 0; i < len / 2; ++i) scratch[i] = 0.5 * (scratch[2 * i] + scratch[2 * i + 1]);
    }
    roots[b] = scratch[0];
  });

  // Pass 2: the tree above the blocks.
  std::vector<double> top;
  build_averages(roots, top);
  push_maxima(top, 0.0);

  // Pass 3: each block inherits the maximum along its top-tree path.
  std::vector<double> out(leaves.size());
  for_each_block(blocks, [&](std::size_t b) {
    std::vector<double> heap;
    build_averages(leaves.subspan(b * block, block), heap);
    push_maxima(heap, top[blocks - 1 + b]);
    std::copy(heap.begin() + static_cast<std::ptrdiff_t>(block - 1), heap.end(),
              out.begin() + static_cast<std::ptrdiff_t>(b * block));
  });
  return LeafVector(depth, std::move(out));
}

StepFunction leaf_rearranged(const LeafVector& phi) {
  std::vector<double> sorted(phi.values().begin(), phi.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double width = std::ldexp(1.0, -phi.depth());
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!vals.empty() && vals.back() == sorted[i]) {
      bp.back() = static_cast<double>(i + 1) * width;
    } else {
      vals.push_back(sorted[i]);
      bp.push_back(static_cast<double>(i + 1) * width);
    }
  }
  return StepFunction(std::move(bp), std::move(vals));
}

StepFunction maximal_rearranged(const LeafVector& phi) { return leaf_rearranged(dyadic_maximal(phi)); }

// ------------------------------------------------------------------ extremizer

double ExtremizerSpec::alpha() const {
  const double base = k < 1.0 ? 1.0 - k : 0.5;
  return -std::expm1(std::log(base) / N);
}

std::int64_t ExtremizerSpec::rank_count() const {
  if (ranks > 0) return ranks;
  const double base = k < 1.0 ? 1.0 - k : 0.5;
  const auto per_step = static_cast<std::int64_t>(std::ceil(std::log(kTailDepth) / std::log(base)));
  return static_cast<std::int64_t>(N) * std::max<std::int64_t>(per_step, 1);
}

void ExtremizerSpec::validate() const {
  if (!g.is_nonincreasing()) throw_precondition("extremizer construction needs a nonincreasing g");
  if (!(k > 0.0 && k <= 1.0)) throw_precondition("k must lie in (0, 1], got " + fmt_num(k));
  if (N < 1) throw_precondition("construction index N must be >= 1, got " + std::to_string(N));
  if (ranks < 0) throw_precondition("rank count must be >= 0");
  if (rank_count() > 20'000'000) throw_precondition("rank count " + std::to_string(rank_count()) + " is too large");
}

ExtremizerProfile extremizer_profile(const ExtremizerSpec& spec) {
  spec.validate();
  const double base = spec.k < 1.0 ? 1.0 - spec.k : 0.5;
  // log(base)/N is exact scaling for N a power of two, so grids for
  // N, 4N, 16N, ... nest bit-for-bit.
  const double log_ratio = std::log(base) / spec.N;
  const std::int64_t M = spec.rank_count();

  auto grid = [&](std::int64_t m) { return std::exp(static_cast<double>(m) * log_ratio); };
  auto average = [&](double t) { return spec.g.primitive(t) / t; };

  std::vector<double> bp;
  std::vector<double> vals;
  bp.reserve(static_cast<std::size_t>(M) + 2);
  vals.reserve(static_cast<std::size_t>(M) + 1);
  bp.push_back(0.0);
  const double tail = grid(M);
  bp.push_back(tail);
  vals.push_back(average(tail));
  for (std::int64_t m = M - 1; m >= 0; --m) {
    const double x = m == 0 ? 1.0 : grid(m);
    bp.push_back(x);
    // The exact averages are nonincreasing; the min drops rounding noise
    // and can only lower the bound.
    vals.push_back(std::min(vals.back(), average(x)));
  }
  return {spec.g, StepFunction(std::move(bp), std::move(vals))};
}

SymmetrizationReport verify_symmetrization(const ExtremizerSpec& spec, const FunctionalSpec& fspec,
                                           const FunctionalOptions& opts) {
  fspec.validate();
  if (fspec.upper != spec.k) {
    throw_precondition("functional upper limit " + fmt_num(fspec.upper) + " differs from extremizer k " + fmt_num(spec.k));
  }
  const auto profile = extremizer_profile(spec);

  SymmetrizationReport rep;
  rep.alpha = spec.alpha();
  rep.annuli = spec.rank_count();
  const auto bp = profile.lower.breakpoints();
  const auto vals = profile.lower.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < vals.size() && bp[i] < spec.k; ++i) {
    const double hi = std::min(bp[i + 1], spec.k);
    sum += fspec.G(vals[i]) * detail::power_integral(bp[i], hi, fspec.weight_exponent);
  }
  rep.lower_sum = sum;
  rep.hardy_value = functional(spec.g, fspec, std::nullopt, opts);
  rep.gap = rep.hardy_value - rep.lower_sum;
  rep.bounded = rep.lower_sum <= rep.hardy_value + 1e-10;
  return rep;
}

LeafVector dyadic_extremizer(const StepFunction& g, int depth) {
  if (!g.is_nonincreasing()) throw_precondition("dyadic extremizer needs a nonincreasing g");
  if (depth < 1 || depth > LeafVector::kMaxDepth) {
    throw_precondition("leaf depth must lie in [1, 24], got " + std::to_string(depth));
  }
  const std::size_t n = std::size_t{1} << depth;
  const double width = std::ldexp(1.0, -depth);
  const auto bp = g.breakpoints();
  const auto vals = g.values();

  // Merge walk over leaves and pieces; each leaf gets its exact average.
  std::vector<double> leaves(n, 0.0);
  std::size_t piece = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) * width;
    const double hi = static_cast<double>(i + 1) * width;
    while (bp[piece + 1] <= lo) ++piece;
    double acc = 0.0;
    for (std::size_t j = piece; j < vals.size() && bp[j] < hi; ++j) {
      acc += vals[j] * (std::min(hi, bp[j + 1]) - std::max(lo, bp[j]));
    }
    leaves[i] = acc / width;
  }
  return LeafVector(depth, std::move(leaves));
}

}  // namespace bellmax
