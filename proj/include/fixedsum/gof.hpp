#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fixedsum/constraints.hpp"
#include "fixedsum/drs.hpp"
#include "fixedsum/simplex.hpp"

namespace fixedsum::gof {

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise. Absolute error below 1e-10.
double incomplete_gamma_q(double a, double x);

// Upper tail of the chi-squared distribution with dof degrees of freedom.
double chi2_tail(double chi2, int64_t dof);

// Half-space description A q <= b of the feasible region after dropping the
// last coordinate (the projection is bijective on the simplex).
struct Polytope {
  size_t dim = 0;  // n - 1
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  bool contains(const std::vector<double>& q, double tol) const;
};

Polytope projected_polytope(const ConstraintSet& cs);
Polytope projected_polytope(const BoundsSpec& bounds);

// Axis-aligned grid over [0,1]^dim with n_b bins per dimension; `kept` marks
// bins whose every corner lies in the (closed) feasible region.
struct BinGrid {
  int n_b = 0;
  size_t dim = 0;
  std::vector<uint8_t> kept;  // size n_b^dim
  int64_t kept_count = 0;

  size_t lattice_size() const { return kept.size(); }
};

// A bin survives iff all 2^dim corners satisfy every polytope inequality
// within 1e-12 and, for constraint sets, every nonlinear constraint at the
// lifted corner (x_n = 1 - sum q). Throws InputError when no bin survives.
BinGrid build_grid(const ConstraintSet& cs, int n_b);
BinGrid build_grid(const BoundsSpec& bounds, int n_b);

// Streamed bin occupancy over the full lattice; the kept-bin filter is
// applied at evaluation time, so one count pass serves both the one-sample
// and the two-sample statistics.
struct LatticeCounts {
  int n_b = 0;
  size_t dim = 0;
  std::vector<int64_t> counts;
  int64_t total = 0;

  void add(const std::vector<double>& x);  // x has dimension dim + 1
  void merge(const LatticeCounts& other);
};

LatticeCounts make_lattice(int n_b, size_t dim);

struct GofReport {
  int64_t bins = 0;  // |B|
  double expected = 0.0;
  double chi2 = 0.0;
  int64_t dof = 0;
  double p_value = 1.0;
  std::vector<std::string> warnings;

  std::string to_json() const;
};

// Pearson chi-squared uniformity statistic over the kept bins.
GofReport chi2_test(const BinGrid& grid, const LatticeCounts& counts);
GofReport chi2_test(const BinGrid& grid, const std::vector<SimplexVector>& sample);

// Two-sample homogeneity chi-squared over the shared lattice; bins whose
// combined count falls below min_combined are dropped (both samples see the
// same bins, so the comparison stays fair near the region boundary).
struct TwoSampleReport {
  int64_t bins = 0;
  double chi2 = 0.0;
  int64_t dof = 0;
  double p_value = 1.0;
};

TwoSampleReport two_sample_chi2(const LatticeCounts& a, const LatticeCounts& b,
                                int64_t min_combined = 10);

// Default bin count: aims at an expected count of at least ~20 per bin for
// the planned sample size, clamped to [2, 50].
int default_bins(size_t dim, size_t planned_samples);

}  // namespace fixedsum::gof
