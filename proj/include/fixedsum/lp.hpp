#pragma once

#include <vector>

namespace fixedsum::lp {

enum class Relation { LessEq, Eq };

struct Row {
  std::vector<double> a;
  double b = 0.0;
  Relation rel = Relation::LessEq;
};

// Dense LP: maximize objective . x subject to rows and per-variable bounds.
// Lower bounds must be finite; an upper bound may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  static LinearProgram with_dimension(size_t n);
  LinearProgram& maximize(std::vector<double> c);
  LinearProgram& add_less_eq(std::vector<double> a, double b);
  LinearProgram& add_eq(std::vector<double> a, double b);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> point;       // original variable space
  double objective_value = 0.0;
  double phase1_objective = 0.0;   // > kFeasTol iff infeasible
  int pivots = 0;
  double max_reduced_cost = 0.0;   // optimality certificate: <= kFeasTol when optimal
};

// Feasibility and reduced-cost tolerance.
inline constexpr double kFeasTol = 1e-9;
// Tableau entries below this are unusable as pivots.
inline constexpr double kPivotTol = 1e-11;

// Two-phase dense simplex with Bland's rule; deterministic pivot order.
Solution solve(const LinearProgram& lp);

}  // namespace fixedsum::lp
