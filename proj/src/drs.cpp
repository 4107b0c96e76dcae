#include "fixedsum/drs.hpp"

#include <cmath>
#include <sstream>

#include "fixedsum/error.hpp"

namespace fixedsum {

BoundsSpec::BoundsSpec(std::vector<double> lo, std::vector<double> up)
    : lower(std::move(lo)), upper(std::move(up)) {
  const size_t n = upper.size();
  if (n < 2) throw InputError("bounds need dimension >= 2");
  if (lower.size() != n) throw InputError("bound vectors have different lengths");
  double lo_sum = 0.0, up_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw InputError("bounds must be finite");
    if (lower[i] < 0.0 || upper[i] > 1.0 + 1e-12 || lower[i] > upper[i])
      throw InputError("bounds must satisfy 0 <= l <= u <= 1");
    lo_sum += lower[i];
    up_sum += upper[i];
  }
  if (lo_sum > 1.0 || up_sum < 1.0)
    throw InputError("empty feasible region: need sum(l) <= 1 <= sum(u)");
}

BoundsSpec BoundsSpec::upper_only(std::vector<double> up) {
  std::vector<double> lo(up.size(), 0.0);
  return BoundsSpec(std::move(lo), std::move(up));
}

bool BoundsSpec::satisfied(const std::vector<double>& x) const {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

int rescale_until_feasible(std::vector<double>& y, const std::vector<double>& upper,
                           int max_iters) {
  const size_t n = y.size();
  int steps = 0;
  for (;;) {
    double offset_sum = 0.0;
    bool violated = false;
    for (size_t i = 0; i < n; ++i) {
      if (y[i] > upper[i]) {
        violated = true;
        offset_sum += upper[i];
      }
    }
    if (!violated) return steps;
    if (steps >= max_iters) {
      std::ostringstream msg;
      msg << "rescale loop did not terminate in " << max_iters << " steps; last iterate [";
      for (size_t i = 0; i < n; ++i) msg << (i ? ", " : "") << y[i];
      msg << "]";
      throw SamplingError(msg.str());
    }
    // Violation is strict, so the violated bounds sum to less than 1 and the
    // induced sub-simplex is proper.
    const double scale = 1.0 - offset_sum;
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double t = y[i] > upper[i] ? upper[i] : 0.0;
      y[i] = (y[i] - t) / scale;
      sum += y[i];
    }
    for (size_t i = 0; i < n; ++i) y[i] /= sum;  // keep the unit sum exact
    ++steps;
  }
}

DrsResult drs_sample(const BoundsSpec& bounds, RngState& rng, int max_iters) {
  if (max_iters < 1) throw InputError("drs_sample: max_iters must be >= 1");
  const size_t n = bounds.dimension();
  double lo_sum = 0.0;
  bool has_lower = false;
  for (double l : bounds.lower) {
    lo_sum += l;
    if (l > 0.0) has_lower = true;
  }
  const double s0 = 1.0 - lo_sum;
  if (has_lower && s0 <= 1e-12)
    throw InputError("drs_sample: lower bounds leave no room, sum(l) too close to 1");

  std::vector<double> transformed_upper(n);
  for (size_t i = 0; i < n; ++i)
    transformed_upper[i] = has_lower ? (bounds.upper[i] - bounds.lower[i]) / s0 : bounds.upper[i];

  std::vector<double> y;
  flat_dirichlet_raw(n, rng, y);
  int steps = rescale_until_feasible(y, transformed_upper, max_iters);

  if (!has_lower) return {SimplexVector(std::move(y)), steps};

  std::vector<double> x(n);
  for (;;) {
    for (size_t i = 0; i < n; ++i) x[i] = bounds.lower[i] + s0 * y[i];
    // Substituting back can overshoot an upper bound by a rounding ulp; the
    // violated set is still a valid rescale target in y-space, so continue
    // the loop until the bounds hold exactly.
    bool violated = false;
    double offset_sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (x[i] > bounds.upper[i]) {
        violated = true;
        offset_sum += transformed_upper[i];
      }
    }
    if (!violated) break;
    steps += 1;
    if (steps > max_iters) throw SamplingError("drs_sample: bound polishing did not terminate");
    const double scale = 1.0 - offset_sum;
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double t = x[i] > bounds.upper[i] ? transformed_upper[i] : 0.0;
      y[i] = std::max((y[i] - t) / scale, 0.0);
      sum += y[i];
    }
    for (size_t i = 0; i < n; ++i) y[i] /= sum;
  }
  return {SimplexVector(std::move(x)), steps};
}

}  // namespace fixedsum
