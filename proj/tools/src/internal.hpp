#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "bellmax/bellman.hpp"
#include "bellmax/tree_sim.hpp"
#include "json.hpp"

namespace bellmax::cli::detail {

/// Random nonincreasing step function on (0, 1] with up to max_pieces
/// pieces; cut points mix uniform and log-uniform draws.
StepFunction random_step(std::mt19937_64& rng, int max_pieces = 12);

/// Random nonnegative leaves; the shape cycles through uniform, sparse
/// spikes, log-uniform and few-level inputs.
LeafVector random_leaves(std::mt19937_64& rng, int depth, int shape);

/// The same quantity by another route, when one exists for the query kind:
/// quadrature of the extremal profile (thm2, thm3) or the functional of the
/// power-law extremizer (thm4, q > 1).
std::optional<double> oracle_value(const BellmanQuery& query, const BellmanResult& result);

struct SqueezeStats {
  int trials = 0;
  int violations = 0;
  double max_ratio = 0.0;  // largest delta_functional(g) / bellman_thm4
};

/// Random nonincreasing steps rescaled to average f, each compared with
/// bellman_thm4 at its own Lorentz mass; a violation exceeds the bound by
/// more than rel_tol relative.
SqueezeStats thm4_squeeze(double p, double q, double f, int trials, double rel_tol, std::mt19937_64& rng);

double relative_error(double value, double reference);

nlohmann::json versions();

}  // namespace bellmax::cli::detail
