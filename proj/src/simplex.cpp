#include "fixedsum/simplex.hpp"

#include <cmath>
#include <string>

#include "fixedsum/error.hpp"

namespace fixedsum {

SimplexVector::SimplexVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("simplex vector must not be empty");
  double sum = 0.0;
  for (double& v : entries_) {
    if (!std::isfinite(v)) throw InputError("simplex vector entry is not finite");
    if (v < 0.0) {
      if (v < -kDriftTol)
        throw InputError("simplex vector entry " + std::to_string(v) + " is negative");
      v = 0.0;
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kDriftTol)
    throw InputError("simplex vector sum " + std::to_string(sum) + " deviates from 1");
  if (std::fabs(sum - 1.0) > kSumTol) {
    for (double& v : entries_) v /= sum;
  }
}

RegularSubSimplex::RegularSubSimplex(std::vector<double> offset) : offset_(std::move(offset)) {
  if (offset_.size() < 2) throw InputError("sub-simplex needs dimension >= 2");
  double sum = 0.0;
  for (double t : offset_) {
    if (!std::isfinite(t) || t < 0.0) throw InputError("sub-simplex offsets must be nonnegative");
    sum += t;
  }
  scale_ = 1.0 - sum;
  if (scale_ <= 1e-12)
    throw NumericError("degenerate sub-simplex: scale " + std::to_string(scale_));
}

void flat_dirichlet_raw(size_t n, RngState& rng, std::vector<double>& out) {
  out.resize(n);
  for (;;) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      out[i] = rng.next_exponential();
      sum += out[i];
    }
    if (sum > 0.0) {
      for (size_t i = 0; i < n; ++i) out[i] /= sum;
      return;
    }
    // All draws were exactly zero; essentially impossible, redraw.
  }
}

SimplexVector sample_flat_dirichlet(size_t n, RngState& rng) {
  if (n < 2) throw InputError("flat Dirichlet needs dimension >= 2");
  std::vector<double> x;
  flat_dirichlet_raw(n, rng, x);
  return SimplexVector(std::move(x));
}

SimplexVector rescale_to_standard(const SimplexVector& x, const RegularSubSimplex& sub) {
  if (x.size() != sub.dimension())
    throw InputError("rescale: point and sub-simplex dimensions differ");
  const std::vector<double>& t = sub.offset();
  const double s = sub.scale();
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < t[i] - 1e-12)
      throw InputError("rescale: point lies outside the sub-simplex at coordinate " +
                       std::to_string(i));
    y[i] = (x[i] - t[i]) / s;
  }
  return SimplexVector(std::move(y));
}

SimplexVector rescale_inverse(const SimplexVector& y, const RegularSubSimplex& sub) {
  if (y.size() != sub.dimension())
    throw InputError("rescale_inverse: point and sub-simplex dimensions differ");
  const std::vector<double>& t = sub.offset();
  const double s = sub.scale();
  std::vector<double> x(y.size());
  for (size_t i = 0; i < y.size(); ++i) x[i] = s * y[i] + t[i];
  return SimplexVector(std::move(x));
}

geo::Vec2 project_linear(double x1, double x2, double x3) {
  (void)x1;  // the first corner maps to the origin
  return {x2 * kTriangleV2.x + x3 * kTriangleV3.x, x3 * kTriangleV3.y};
}

geo::Vec2 project_to_plane(const SimplexVector& x) {
  if (x.size() != 3) throw InputError("plane projection is defined for dimension 3 only");
  return project_linear(x[0], x[1], x[2]);
}

void plane_to_barycentric(geo::Vec2 p, double out[3]) {
  const double x3 = p.y / kTriangleV3.y;
  const double x2 = p.x - 0.5 * x3;
  out[0] = 1.0 - x2 - x3;
  out[1] = x2;
  out[2] = x3;
}

}  // namespace fixedsum
