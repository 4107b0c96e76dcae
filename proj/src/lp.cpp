#include "fixedsum/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fixedsum/error.hpp"

namespace fixedsum::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPivotLimit = 100000;

void validate(const LinearProgram& lp) {
  const size_t n = lp.objective.size();
  if (n == 0) throw InputError("lp: empty objective");
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw InputError("lp: bounds length does not match variable count");
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(lp.lower[i])) throw InputError("lp: lower bounds must be finite");
    if (std::isnan(lp.upper[i]) || lp.upper[i] < lp.lower[i] - kFeasTol)
      throw InputError("lp: bound ordering violated at variable " + std::to_string(i));
    if (!std::isfinite(lp.objective[i])) throw InputError("lp: objective must be finite");
  }
  for (const Row& r : lp.rows) {
    if (r.a.size() != n) throw InputError("lp: row length does not match variable count");
    if (!std::isfinite(r.b)) throw InputError("lp: row rhs must be finite");
    for (double v : r.a)
      if (!std::isfinite(v)) throw InputError("lp: row coefficients must be finite");
  }
}

// Full-tableau simplex over rows of `T` with objective row `obj` (convention:
// obj[j] = z_j - c_j, optimal when all >= -kFeasTol). Bland's rule: entering
// column is the lowest eligible index, leaving row breaks ratio ties by the
// lowest basic variable index. `allowed` masks columns that may enter.
struct Tableau {
  int m = 0, width = 0;  // rows, columns excluding rhs
  std::vector<std::vector<double>> T;
  std::vector<int> basis;
  std::vector<bool> active;
  int pivots = 0;

  double& rhs(int r) { return T[r][width]; }

  void pivot(std::vector<double>& obj, int r, int s) {
    const double inv = 1.0 / T[r][s];
    for (int j = 0; j <= width; ++j) T[r][j] *= inv;
    T[r][s] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = T[i][s];
      if (f == 0.0) continue;
      for (int j = 0; j <= width; ++j) T[i][j] -= f * T[r][j];
      T[i][s] = 0.0;
    }
    const double f = obj[s];
    if (f != 0.0) {
      for (int j = 0; j <= width; ++j) obj[j] -= f * T[r][j];
      obj[s] = 0.0;
    }
    basis[r] = s;
    ++pivots;
  }

  // Returns false when unbounded in the improving direction.
  bool iterate(std::vector<double>& obj, const std::vector<bool>& allowed) {
    for (;;) {
      if (pivots > kPivotLimit) throw NumericError("lp: pivot limit exceeded");
      int s = -1;
      for (int j = 0; j < width; ++j) {
        if (allowed[j] && obj[j] < -kFeasTol) {
          s = j;
          break;
        }
      }
      if (s < 0) return true;
      int r = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m; ++i) {
        if (!active[i] || T[i][s] <= kPivotTol) continue;
        const double ratio = rhs(i) / T[i][s];
        if (ratio < best_ratio - kFeasTol ||
            (ratio < best_ratio + kFeasTol && (r < 0 || basis[i] < basis[r]))) {
          best_ratio = std::min(ratio, best_ratio);
          r = i;
        }
      }
      if (r < 0) return false;
      pivot(obj, r, s);
    }
  }
};

}  // namespace

LinearProgram LinearProgram::with_dimension(size_t n) {
  LinearProgram lp;
  lp.objective.assign(n, 0.0);
  lp.lower.assign(n, 0.0);
  lp.upper.assign(n, 1.0);
  return lp;
}

LinearProgram& LinearProgram::maximize(std::vector<double> c) {
  objective = std::move(c);
  return *this;
}

LinearProgram& LinearProgram::add_less_eq(std::vector<double> a, double b) {
  rows.push_back({std::move(a), b, Relation::LessEq});
  return *this;
}

LinearProgram& LinearProgram::add_eq(std::vector<double> a, double b) {
  rows.push_back({std::move(a), b, Relation::Eq});
  return *this;
}

Solution solve(const LinearProgram& lp) {
  validate(lp);
  const int n = static_cast<int>(lp.objective.size());

  // Shift to x = lower + x', x' >= 0; finite upper bounds become rows.
  struct ShiftedRow {
    std::vector<double> a;
    double b;
    bool eq;
  };
  std::vector<ShiftedRow> rows;
  rows.reserve(lp.rows.size() + n);
  for (const Row& r : lp.rows) {
    double shift = 0.0;
    for (int i = 0; i < n; ++i) shift += r.a[i] * lp.lower[i];
    rows.push_back({r.a, r.b - shift, r.rel == Relation::Eq});
  }
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(lp.upper[i])) {
      std::vector<double> a(n, 0.0);
      a[i] = 1.0;
      rows.push_back({std::move(a), lp.upper[i] - lp.lower[i], false});
    }
  }

  const int m = static_cast<int>(rows.size());
  int n_slack = 0;
  for (const ShiftedRow& r : rows)
    if (!r.eq) ++n_slack;

  Solution sol;
  if (m == 0) {
    // Only bounds at +infinity: optimum is at the bound pattern, or unbounded.
    sol.point.assign(n, 0.0);
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      if (lp.objective[i] > kFeasTol) {
        sol.status = Status::Unbounded;
        return sol;
      }
      sol.point[i] = lp.lower[i];
      value += lp.objective[i] * lp.lower[i];
    }
    sol.status = Status::Optimal;
    sol.objective_value = value;
    return sol;
  }

  // Column layout: [structural | slacks | artificials].
  Tableau tab;
  tab.m = m;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  int col = n;
  for (int i = 0; i < m; ++i)
    if (!rows[i].eq) slack_col[i] = col++;
  const int first_artificial = col;
  // Artificial needed when the rhs is negative (slack alone cannot be basic)
  // or the row is an equality.
  for (int i = 0; i < m; ++i)
    if (rows[i].eq || rows[i].b < 0.0) art_col[i] = col++;
  tab.width = col;

  tab.T.assign(m, std::vector<double>(tab.width + 1, 0.0));
  tab.basis.assign(m, -1);
  tab.active.assign(m, true);
  for (int i = 0; i < m; ++i) {
    const double sign = rows[i].b < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.T[i][j] = sign * rows[i].a[j];
    if (slack_col[i] >= 0) tab.T[i][slack_col[i]] = sign;
    tab.rhs(i) = sign * rows[i].b;
    if (art_col[i] >= 0) {
      tab.T[i][art_col[i]] = 1.0;
      tab.basis[i] = art_col[i];
    } else {
      tab.basis[i] = slack_col[i];
    }
  }

  std::vector<bool> allow_no_art(tab.width, true);
  for (int j = first_artificial; j < tab.width; ++j) allow_no_art[j] = false;

  // Phase 1: minimize the sum of artificials. Objective row starts as the
  // negated sum of artificial-basic rows so that basic columns read zero.
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) need_phase1 = true;

  if (need_phase1) {
    std::vector<double> w(tab.width + 1, 0.0);
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0) continue;
      for (int j = 0; j <= tab.width; ++j) w[j] -= tab.T[i][j];
    }
    for (int j = first_artificial; j < tab.width; ++j) w[j] = 0.0;
    tab.iterate(w, allow_no_art);  // bounded below by 0; artificials never re-enter
    sol.phase1_objective = -w[tab.width];
    sol.pivots = tab.pivots;
    if (sol.phase1_objective > kFeasTol) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive leftover artificials out of the basis; rows that cannot pivot on
    // any structural/slack column are redundant and get deactivated.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < first_artificial) continue;
      int s = -1;
      for (int j = 0; j < first_artificial; ++j) {
        if (std::fabs(tab.T[i][j]) > kPivotTol) {
          s = j;
          break;
        }
      }
      if (s >= 0) {
        std::vector<double> dummy(tab.width + 1, 0.0);
        tab.pivot(dummy, i, s);
      } else {
        tab.active[i] = false;
      }
    }
  }

  // Phase 2 objective row: z_j - c_j for the current basis.
  std::vector<double> z(tab.width + 1, 0.0);
  for (int j = 0; j < n; ++j) z[j] = -lp.objective[j];
  for (int i = 0; i < m; ++i) {
    if (!tab.active[i]) continue;
    const int bj = tab.basis[i];
    const double cb = bj < n ? lp.objective[bj] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= tab.width; ++j) z[j] += cb * tab.T[i][j];
  }
  for (int i = 0; i < m; ++i)
    if (tab.active[i] && tab.basis[i] >= 0) z[tab.basis[i]] = 0.0;

  const bool bounded = tab.iterate(z, allow_no_art);
  sol.pivots = tab.pivots;
  if (!bounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.point.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (tab.active[i] && tab.basis[i] < n) sol.point[tab.basis[i]] = tab.rhs(i);
  }
  for (int i = 0; i < n; ++i) sol.point[i] += lp.lower[i];

  double value = 0.0;
  for (int i = 0; i < n; ++i) value += lp.objective[i] * sol.point[i];
  sol.objective_value = value;

  double max_red = 0.0;
  for (int j = 0; j < first_artificial; ++j) max_red = std::max(max_red, -z[j]);
  sol.max_reduced_cost = max_red;

  // Certify primal feasibility of the reported point.
  for (size_t r = 0; r < lp.rows.size(); ++r) {
    const Row& row = lp.rows[r];
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) lhs += row.a[i] * sol.point[i];
    const double slack = row.b - lhs;
    const bool ok = row.rel == Relation::Eq ? std::fabs(slack) <= 1e-8 : slack >= -1e-8;
    if (!ok)
      throw NumericError("lp: optimal point violates row " + std::to_string(r) + " by " +
                         std::to_string(std::fabs(slack)));
  }
  for (int i = 0; i < n; ++i) {
    if (sol.point[i] < lp.lower[i] - 1e-8 || sol.point[i] > lp.upper[i] + 1e-8)
      throw NumericError("lp: optimal point violates bounds at variable " + std::to_string(i));
  }

  sol.status = Status::Optimal;
  return sol;
}

}  // namespace fixedsum::lp
