#pragma once

#include <cstddef>
#include <vector>

#include "fixedsum/geometry.hpp"
#include "fixedsum/rng.hpp"

namespace fixedsum {

// Point on the standard simplex: nonnegative entries with unit sum.
//
// Construction renormalizes when the input sum drifts from 1 by less than
// 1e-9 and rejects anything worse, so silent drift cannot accumulate across
// chained transformations.
class SimplexVector {
 public:
  static constexpr double kSumTol = 1e-12;
  static constexpr double kDriftTol = 1e-9;

  explicit SimplexVector(std::vector<double> entries);

  size_t size() const { return entries_.size(); }
  double operator[](size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::vector<double> entries_;
};

// Regular sub-simplex {x in S : x_i >= t_i for active i}, where t is the
// offset vector and s = 1 - sum(t) the scale; vertex j sits at t + s*e_j.
class RegularSubSimplex {
 public:
  explicit RegularSubSimplex(std::vector<double> offset);

  const std::vector<double>& offset() const { return offset_; }
  double scale() const { return scale_; }
  size_t dimension() const { return offset_.size(); }

 private:
  std::vector<double> offset_;
  double scale_;
};

// Uniform draw from the standard (n-1)-simplex: n unit exponentials
// normalized by their sum, i.e. a flat Dirichlet draw.
SimplexVector sample_flat_dirichlet(size_t n, RngState& rng);

// Affine map sending the sub-simplex onto the standard simplex,
// y = (x - t) / s; vertex t + s*e_j goes to e_j.
SimplexVector rescale_to_standard(const SimplexVector& x, const RegularSubSimplex& sub);

// Inverse map x = s*y + t.
SimplexVector rescale_inverse(const SimplexVector& y, const RegularSubSimplex& sub);

// Plane images of the 3-simplex corners: an equilateral triangle.
inline constexpr geo::Vec2 kTriangleV1{0.0, 0.0};
inline constexpr geo::Vec2 kTriangleV2{1.0, 0.0};
inline constexpr geo::Vec2 kTriangleV3{0.5, 0.8660254037844386};

// Distance-preserving (up to a common scale) projection of the plane
// x1+x2+x3 = 1 onto 2-D; defined only for n = 3.
geo::Vec2 project_to_plane(const SimplexVector& x);

// Linear extension of the projection to all of R^3; the tiling maps use it
// on offset vectors that do not lie on the simplex.
geo::Vec2 project_linear(double x1, double x2, double x3);

// Barycentric coordinates of a plane point under the projection above.
void plane_to_barycentric(geo::Vec2 p, double out[3]);

// Internal building blocks for the samplers; raw vectors, no validation.
void flat_dirichlet_raw(size_t n, RngState& rng, std::vector<double>& out);

}  // namespace fixedsum
