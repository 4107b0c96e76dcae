#pragma once

#include <vector>

#include "fixedsum/rng.hpp"
#include "fixedsum/simplex.hpp"

namespace fixedsum {

inline constexpr int kDrsDefaultMaxIters = 1000;

// Per-entry lower and upper bounds with a nonempty feasible region:
// 0 <= l <= u <= 1 componentwise and sum(l) <= 1 <= sum(u).
struct BoundsSpec {
  std::vector<double> lower;
  std::vector<double> upper;

  BoundsSpec(std::vector<double> lower, std::vector<double> upper);
  static BoundsSpec upper_only(std::vector<double> upper);

  size_t dimension() const { return upper.size(); }
  bool satisfied(const std::vector<double>& x) const;  // exact, no tolerance
};

struct DrsResult {
  SimplexVector x;
  int rescale_steps = 0;
};

// Simplified Dirichlet-rescale sampler: one flat Dirichlet draw, then
// repeated rescale steps out of the violated upper bounds until feasible.
// Lower bounds are eliminated up front by the affine substitution
// x = l + (1 - sum(l)) * y with transformed bounds u' = (u - l)/(1 - sum(l)).
// The returned vector satisfies its bounds exactly.
DrsResult drs_sample(const BoundsSpec& bounds, RngState& rng, int max_iters = kDrsDefaultMaxIters);

// Deterministic rescale trajectory used inside drs_sample: repeatedly maps
// `y` out of the sub-simplex induced by the currently violated upper bounds.
// Returns the number of steps; throws SamplingError beyond max_iters.
int rescale_until_feasible(std::vector<double>& y, const std::vector<double>& upper,
                           int max_iters);

}  // namespace fixedsum
