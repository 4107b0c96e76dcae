#include "fixedsum/gof.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fixedsum/error.hpp"

namespace fixedsum::gof {

namespace {

constexpr double kCornerTol = 1e-12;

double gamma_q_series(double a, double x) {
  // Q = 1 - P with P from the standard power series.
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  return 1.0 - p;
}

double gamma_q_contfrac(double a, double x) {
  // Modified Lentz evaluation of the continued fraction for Q.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 10000; ++k) {
    const double an = -static_cast<double>(k) * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

size_t checked_lattice_size(int n_b, size_t dim) {
  if (n_b < 2) throw InputError("bin grid needs at least 2 bins per dimension");
  if (dim < 1) throw InputError("bin grid needs projected dimension >= 1");
  double size = 1.0;
  for (size_t d = 0; d < dim; ++d) size *= n_b;
  if (size > 2e8) throw InputError("bin grid too large: reduce bins or dimension");
  return static_cast<size_t>(size);
}

BinGrid build_grid_impl(const Polytope& poly, int n_b,
                        const std::vector<PolynomialConstraint>* nonlinear) {
  BinGrid grid;
  grid.n_b = n_b;
  grid.dim = poly.dim;
  const size_t lattice = checked_lattice_size(n_b, poly.dim);
  grid.kept.assign(lattice, 0);

  const double width = 1.0 / n_b;
  std::vector<size_t> idx(poly.dim, 0);
  std::vector<double> corner(poly.dim, 0.0);
  std::vector<double> lifted(poly.dim + 1, 0.0);

  for (size_t flat = 0; flat < lattice; ++flat) {
    size_t rest = flat;
    for (size_t d = poly.dim; d-- > 0;) {
      idx[d] = rest % n_b;
      rest /= n_b;
    }
    bool ok = true;
    const size_t corners = size_t{1} << poly.dim;
    for (size_t mask = 0; mask < corners && ok; ++mask) {
      double qsum = 0.0;
      for (size_t d = 0; d < poly.dim; ++d) {
        corner[d] = (idx[d] + ((mask >> d) & 1u)) * width;
        qsum += corner[d];
      }
      for (size_t r = 0; r < poly.rows.size() && ok; ++r) {
        double lhs = 0.0;
        for (size_t d = 0; d < poly.dim; ++d) lhs += poly.rows[r][d] * corner[d];
        ok = lhs <= poly.rhs[r] + kCornerTol;
      }
      if (ok && nonlinear && !nonlinear->empty()) {
        for (size_t d = 0; d < poly.dim; ++d) lifted[d] = corner[d];
        lifted[poly.dim] = 1.0 - qsum;
        for (const PolynomialConstraint& c : *nonlinear) {
          if (c.evaluate(lifted) > c.bound + kCornerTol) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      grid.kept[flat] = 1;
      ++grid.kept_count;
    }
  }
  if (grid.kept_count == 0)
    throw InputError("degenerate region: no bin is fully contained in the feasible polytope");
  return grid;
}

}  // namespace

double incomplete_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw InputError("incomplete_gamma_q: a must be positive");
  if (x < 0.0) throw InputError("incomplete_gamma_q: x must be nonnegative");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? gamma_q_series(a, x) : gamma_q_contfrac(a, x);
}

double chi2_tail(double chi2, int64_t dof) {
  if (dof <= 0) return 1.0;
  return incomplete_gamma_q(0.5 * static_cast<double>(dof), 0.5 * chi2);
}

bool Polytope::contains(const std::vector<double>& q, double tol) const {
  for (size_t r = 0; r < rows.size(); ++r) {
    double lhs = 0.0;
    for (size_t d = 0; d < dim; ++d) lhs += rows[r][d] * q[d];
    if (lhs > rhs[r] + tol) return false;
  }
  return true;
}

Polytope projected_polytope(const ConstraintSet& cs) {
  const size_t n = cs.dimension();
  Polytope poly;
  poly.dim = n - 1;
  auto add = [&](std::vector<double> a, double b) {
    poly.rows.push_back(std::move(a));
    poly.rhs.push_back(b);
  };
  // Simplex facets: q_d >= 0 and x_n = 1 - sum(q) >= 0.
  for (size_t d = 0; d < poly.dim; ++d) {
    std::vector<double> a(poly.dim, 0.0);
    a[d] = -1.0;
    add(std::move(a), 0.0);
  }
  add(std::vector<double>(poly.dim, 1.0), 1.0);
  // Expanded linear constraints with x_n substituted out.
  for (const ExpandedInequality& e : cs.expand_linear()) {
    std::vector<double> a(poly.dim);
    for (size_t d = 0; d < poly.dim; ++d) a[d] = e.a[d] - e.a[n - 1];
    add(std::move(a), e.b - e.a[n - 1]);
  }
  return poly;
}

Polytope projected_polytope(const BoundsSpec& bounds) {
  const size_t n = bounds.dimension();
  Polytope poly;
  poly.dim = n - 1;
  auto add = [&](std::vector<double> a, double b) {
    poly.rows.push_back(std::move(a));
    poly.rhs.push_back(b);
  };
  for (size_t d = 0; d < poly.dim; ++d) {
    std::vector<double> low(poly.dim, 0.0), high(poly.dim, 0.0);
    low[d] = -1.0;
    high[d] = 1.0;
    add(std::move(low), -bounds.lower[d]);
    add(std::move(high), bounds.upper[d]);
  }
  // l_n <= 1 - sum(q) <= u_n
  add(std::vector<double>(poly.dim, 1.0), 1.0 - bounds.lower[n - 1]);
  std::vector<double> neg(poly.dim, -1.0);
  add(std::move(neg), bounds.upper[n - 1] - 1.0);
  return poly;
}

BinGrid build_grid(const ConstraintSet& cs, int n_b) {
  const Polytope poly = projected_polytope(cs);
  return build_grid_impl(poly, n_b, &cs.nonlinear());
}

BinGrid build_grid(const BoundsSpec& bounds, int n_b) {
  const Polytope poly = projected_polytope(bounds);
  return build_grid_impl(poly, n_b, nullptr);
}

LatticeCounts make_lattice(int n_b, size_t dim) {
  LatticeCounts lc;
  lc.n_b = n_b;
  lc.dim = dim;
  lc.counts.assign(checked_lattice_size(n_b, dim), 0);
  return lc;
}

void LatticeCounts::add(const std::vector<double>& x) {
  size_t flat = 0;
  for (size_t d = 0; d < dim; ++d) {
    int i = static_cast<int>(x[d] * n_b);
    if (i >= n_b) i = n_b - 1;  // x_d == 1 lands in the last bin
    flat = flat * n_b + static_cast<size_t>(i);
  }
  ++counts[flat];
  ++total;
}

void LatticeCounts::merge(const LatticeCounts& other) {
  if (other.counts.size() != counts.size() || other.n_b != n_b)
    throw InputError("lattice merge: incompatible grids");
  for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
}

GofReport chi2_test(const BinGrid& grid, const LatticeCounts& counts) {
  if (counts.n_b != grid.n_b || counts.dim != grid.dim)
    throw InputError("chi2_test: counts were taken on a different grid");
  int64_t in_bins = 0;
  for (size_t i = 0; i < grid.kept.size(); ++i) {
    if (grid.kept[i]) in_bins += counts.counts[i];
  }
  if (in_bins == 0) throw InputError("chi2_test: empty sample");

  GofReport report;
  report.bins = grid.kept_count;
  report.expected = static_cast<double>(in_bins) / static_cast<double>(grid.kept_count);
  for (size_t i = 0; i < grid.kept.size(); ++i) {
    if (!grid.kept[i]) continue;
    const double diff = static_cast<double>(counts.counts[i]) - report.expected;
    report.chi2 += diff * diff / report.expected;
  }
  report.dof = grid.kept_count - 1;
  report.p_value = chi2_tail(report.chi2, report.dof);
  if (report.expected < 5.0)
    report.warnings.push_back("expected count per bin below 5; the chi-squared "
                              "approximation is unreliable");
  return report;
}

GofReport chi2_test(const BinGrid& grid, const std::vector<SimplexVector>& sample) {
  LatticeCounts lc = make_lattice(grid.n_b, grid.dim);
  for (const SimplexVector& x : sample) lc.add(x.entries());
  return chi2_test(grid, lc);
}

TwoSampleReport two_sample_chi2(const LatticeCounts& a, const LatticeCounts& b,
                                int64_t min_combined) {
  if (a.counts.size() != b.counts.size() || a.n_b != b.n_b)
    throw InputError("two_sample_chi2: incompatible lattices");
  if (a.total == 0 || b.total == 0) throw InputError("two_sample_chi2: empty sample");

  const double na = static_cast<double>(a.total);
  const double nb = static_cast<double>(b.total);
  TwoSampleReport report;
  for (size_t i = 0; i < a.counts.size(); ++i) {
    const int64_t combined = a.counts[i] + b.counts[i];
    if (combined < min_combined) continue;
    ++report.bins;
    const double ea = na * static_cast<double>(combined) / (na + nb);
    const double eb = nb * static_cast<double>(combined) / (na + nb);
    const double da = static_cast<double>(a.counts[i]) - ea;
    const double db = static_cast<double>(b.counts[i]) - eb;
    report.chi2 += da * da / ea + db * db / eb;
  }
  if (report.bins < 2) throw InputError("two_sample_chi2: fewer than 2 populated bins");
  report.dof = report.bins - 1;
  report.p_value = chi2_tail(report.chi2, report.dof);
  return report;
}

int default_bins(size_t dim, size_t planned_samples) {
  const double per_dim = std::pow(static_cast<double>(planned_samples) / 20.0,
                                  1.0 / static_cast<double>(dim));
  return std::clamp(static_cast<int>(per_dim), 2, 50);
}

std::string GofReport::to_json() const {
  nlohmann::json doc;
  doc["bins"] = bins;
  doc["E"] = expected;
  doc["chi2"] = chi2;
  doc["dof"] = dof;
  doc["p"] = p_value;
  doc["warnings"] = warnings;
  return doc.dump(2);
}

}  // namespace fixedsum::gof
