#pragma once

#include <optional>

#include "varkit/criteria.hpp"

namespace varkit {

// Search budget for the definitional oracle. Grids must be positive and
// strictly decreasing; the seed drives the reproducible random point batch.
struct OracleBudget {
  std::vector<Rat> delta_grid;
  std::vector<Rat> radius_grid;
  int samples_per_pair = 6;
  unsigned long seed = 20240915;
};

OracleBudget default_budget();

struct Violation {
  RatVec x, x_prime;
  Rat delta, radius;
  RatVec witness_y;  // in S(x) n V but not in S(x') + (H+delta)(x - x')
};

struct OracleOutcome {
  std::optional<Violation> violation;
  bool found() const { return violation.has_value(); }
};

// Hunts for exact counterexamples to the Definition-1.2 inclusion
//   S(x) n V  subset  S(x') + (H + delta)(x - x')
// over sampled pairs near (xbar, ybar). Point selection is heuristic; every
// reported violation re-verifies exactly. "Not found" proves nothing.
// H need not be convex-valued.
OracleOutcome falsify_definition(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                                 const PHMap& h, NormPair norms, const OracleBudget& budget,
                                 const std::vector<RatVec>& hint_directions = {});

// Exact lower bound for lip S(xbar|ybar): the best sampled ratio
// dist(y, S(x')) / ||x - x'||. Never exceeds the true modulus.
ExtRat sample_lip_lower_bound(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                              const OracleBudget& budget, NormPair norms);

// Exact distance from a point to a polyhedral union under a polyhedral norm;
// +inf for the empty set.
ExtRat dist_to_union(const RatVec& y, const PolyUnion& u, NormKind k);

// Quarantined Euclidean variant: exact squared distances, floating sqrt.
double sample_lip_lower_bound_l2(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                                 const OracleBudget& budget);

}  // namespace varkit
