#pragma once

#include <cstdint>
#include <vector>

#include "fixedsum/constraints.hpp"
#include "fixedsum/rng.hpp"
#include "fixedsum/simplex.hpp"

namespace fixedsum {

inline constexpr long long kDrscDefaultMaxRestarts = 10'000'000;

// Non-overlapping regular simplices S_i = {x in S : x_i >= theta_i} induced
// by the linear constraints; S_i is unusable ("empty") when its scale
// 1 - theta_i falls below kEmptyDelta.
struct InducedSimplexFamily {
  static constexpr double kEmptyDelta = 1e-9;

  std::vector<double> thetas;
  std::vector<bool> empty_flags;

  size_t dimension() const { return thetas.size(); }
  bool nonempty(size_t i) const { return !empty_flags[i]; }

  // Weak membership x_i >= theta_i; callers resolve boundary ties by taking
  // the first match in ascending i.
  bool contains(size_t i, const std::vector<double>& x) const {
    return !empty_flags[i] && x[i] >= thetas[i];
  }

  RegularSubSimplex simplex(size_t i) const;
};

// Solve the per-dimension threshold LPs: theta_i is the largest x_i
// attainable by a point of the tolerance-expanded feasible region or of an
// earlier nonempty induced simplex. Dimensions are processed in `order`
// (every permutation is valid; default ascending 0..n-1).
InducedSimplexFamily compute_thetas(const ConstraintSet& cs, std::vector<int> order = {});

struct DrscStats {
  long long restarts = 0;
  long long rescales = 0;
  long long dirichlet_draws = 0;

  double acceptance_rate() const {
    return dirichlet_draws > 0 ? 1.0 / static_cast<double>(dirichlet_draws) : 0.0;
  }
};

struct DrscResult {
  SimplexVector x;
  DrscStats stats;
};

// One draw of the rescale-or-restart sampler: flat Dirichlet draw; accept
// when the whole constraint set holds; otherwise rescale out of the first
// induced simplex containing the point (checked before any nonlinear
// rejection), or restart on a fresh draw.
DrscResult drsc_sample(const ConstraintSet& cs, const InducedSimplexFamily& family, RngState& rng,
                       long long max_restarts = kDrscDefaultMaxRestarts);

// Plain accept-reject from the flat Dirichlet distribution; exactly uniform
// on the feasible region and the ground truth for uniformity comparisons.
SimplexVector rejection_sample(const ConstraintSet& cs, RngState& rng,
                               long long max_tries = kDrscDefaultMaxRestarts,
                               long long* tries_out = nullptr);

}  // namespace fixedsum
