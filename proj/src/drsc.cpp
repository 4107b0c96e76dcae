#include "fixedsum/drsc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fixedsum/error.hpp"
#include "fixedsum/lp.hpp"

namespace fixedsum {

RegularSubSimplex InducedSimplexFamily::simplex(size_t i) const {
  std::vector<double> offset(thetas.size(), 0.0);
  offset[i] = thetas[i];
  return RegularSubSimplex(std::move(offset));
}

namespace {

// Feasible-region subproblem: maximize x_i over the standard simplex
// intersected with the tolerance-expanded linear constraints.
lp::LinearProgram feasible_subproblem(const ConstraintSet& cs, size_t i) {
  const size_t n = cs.dimension();
  lp::LinearProgram prog = lp::LinearProgram::with_dimension(n);
  std::vector<double> c(n, 0.0);
  c[i] = 1.0;
  prog.maximize(std::move(c));
  prog.add_eq(std::vector<double>(n, 1.0), 1.0);
  for (const ExpandedInequality& e : cs.expand_linear()) prog.add_less_eq(e.a, e.b);
  return prog;
}

// Earlier-simplex subproblem: maximize x_i over the standard simplex with
// x_k >= theta_k.
lp::LinearProgram simplex_subproblem(size_t n, size_t i, size_t k, double theta_k) {
  lp::LinearProgram prog = lp::LinearProgram::with_dimension(n);
  std::vector<double> c(n, 0.0);
  c[i] = 1.0;
  prog.maximize(std::move(c));
  prog.add_eq(std::vector<double>(n, 1.0), 1.0);
  std::vector<double> a(n, 0.0);
  a[k] = -1.0;
  prog.add_less_eq(std::move(a), -theta_k);
  return prog;
}

}  // namespace

InducedSimplexFamily compute_thetas(const ConstraintSet& cs, std::vector<int> order) {
  const size_t n = cs.dimension();
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != n) throw InputError("compute_thetas: order must be a permutation of 0..n-1");
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n; ++i)
      if (sorted[i] != static_cast<int>(i))
        throw InputError("compute_thetas: order must be a permutation of 0..n-1");
  }

  InducedSimplexFamily family;
  family.thetas.assign(n, 1.0);
  family.empty_flags.assign(n, true);

  std::vector<int> fixed;  // dimensions processed so far, in order
  for (int dim : order) {
    const size_t i = static_cast<size_t>(dim);
    lp::Solution main = lp::solve(feasible_subproblem(cs, i));
    if (main.status == lp::Status::Infeasible) {
      std::ostringstream msg;
      msg << "constraint set is infeasible: the feasible-region LP for dimension " << i
          << " has no solution (phase-1 objective " << main.phase1_objective << ")";
      throw InputError(msg.str());
    }
    if (main.status != lp::Status::Optimal)
      throw NumericError("compute_thetas: unexpected LP status on the feasible subproblem");
    double theta = main.objective_value;

    for (int k : fixed) {
      if (family.empty_flags[k]) continue;
      lp::Solution s = lp::solve(simplex_subproblem(n, i, k, family.thetas[k]));
      if (s.status != lp::Status::Optimal)
        throw NumericError("compute_thetas: earlier-simplex subproblem failed");
      theta = std::max(theta, s.objective_value);
    }

    theta = std::clamp(theta, 0.0, 1.0);
    family.thetas[i] = theta;
    family.empty_flags[i] = (1.0 - theta) < InducedSimplexFamily::kEmptyDelta;
    fixed.push_back(dim);
  }

  // The construction forces non-overlap; a violation means the LP tolerances
  // broke down.
  for (size_t i = 0; i < n; ++i) {
    if (family.empty_flags[i]) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (family.empty_flags[j]) continue;
      if (family.thetas[i] + family.thetas[j] < 1.0 - 1e-9)
        throw NumericError("compute_thetas: induced simplices overlap");
    }
  }
  return family;
}

DrscResult drsc_sample(const ConstraintSet& cs, const InducedSimplexFamily& family, RngState& rng,
                       long long max_restarts) {
  const size_t n = cs.dimension();
  if (family.dimension() != n)
    throw InputError("drsc_sample: family dimension does not match constraint set");
  constexpr long long kRescaleCap = 100000;

  DrscStats stats;
  std::vector<double> y;
  for (;;) {
    if (stats.restarts > max_restarts) {
      std::ostringstream msg;
      msg << "drsc_sample: gave up after " << max_restarts
          << " restarts; estimated acceptance rate " << stats.acceptance_rate();
      throw SamplingError(msg.str());
    }
    flat_dirichlet_raw(n, rng, y);
    ++stats.dirichlet_draws;

    long long rescales_this_draw = 0;
    for (;;) {
      if (cs.satisfied(y)) return {SimplexVector(std::move(y)), stats};

      // Membership is checked before any nonlinear rejection; first
      // nonempty simplex in ascending dimension wins boundary ties.
      size_t hit = n;
      for (size_t i = 0; i < n; ++i) {
        if (family.contains(i, y)) {
          hit = i;
          break;
        }
      }
      if (hit == n) break;  // restart

      const double theta = family.thetas[hit];
      const double scale = 1.0 - theta;
      double sum = 0.0;
      for (size_t i = 0; i < n; ++i) {
        y[i] = (i == hit ? (y[i] - theta) : y[i]) / scale;
        sum += y[i];
      }
      for (size_t i = 0; i < n; ++i) y[i] /= sum;
      ++stats.rescales;
      if (++rescales_this_draw > kRescaleCap)
        throw SamplingError("drsc_sample: rescale loop exceeded its cap");
    }
    ++stats.restarts;
  }
}

SimplexVector rejection_sample(const ConstraintSet& cs, RngState& rng, long long max_tries,
                               long long* tries_out) {
  const size_t n = cs.dimension();
  std::vector<double> y;
  for (long long tries = 1; tries <= max_tries; ++tries) {
    flat_dirichlet_raw(n, rng, y);
    if (cs.satisfied(y)) {
      if (tries_out) *tries_out = tries;
      return SimplexVector(std::move(y));
    }
  }
  throw SamplingError("rejection_sample: no feasible draw within the try budget");
}

}  // namespace fixedsum
