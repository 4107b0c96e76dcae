#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fixedsum/lp.hpp"
#include "fixedsum/simplex.hpp"

namespace fixedsum {

// Default feasibility tolerances for linear constraints.
inline constexpr double kDefaultEpsIneq = 1e-3;
inline constexpr double kDefaultEpsEq = 1e-2;

struct LinearConstraint {
  std::vector<double> a;
  double b = 0.0;
  lp::Relation rel = lp::Relation::LessEq;
};

struct PolynomialTerm {
  double coef = 0.0;
  std::vector<int> exponents;  // one exponent per coordinate
};

// sum of terms coef * prod_i x_i^exp_i  <=  bound
struct PolynomialConstraint {
  std::vector<PolynomialTerm> terms;
  double bound = 0.0;

  double evaluate(const std::vector<double>& x) const;
};

// Programmatic nonlinear constraint g(x) <= 0, for callers that need more
// than polynomials; not representable in the constraint file.
using PredicateConstraint = std::function<double(const std::vector<double>&)>;

// One inequality of the tolerance-expanded linear system a . x <= b.
struct ExpandedInequality {
  std::vector<double> a;
  double b = 0.0;
  int source = 0;  // index of the originating LinearConstraint
};

struct ViolationReport {
  bool satisfied = false;
  std::vector<int> violated_linear;     // ascending
  std::vector<int> violated_nonlinear;  // ascending; predicates follow polynomials
};

// Immutable constraint set J = J_lin + J_non over n-dimensional simplex
// vectors, with the tolerance reformulation applied to the linear part.
class ConstraintSet {
 public:
  ConstraintSet(size_t n, std::vector<LinearConstraint> linear,
                std::vector<PolynomialConstraint> nonlinear = {},
                double eps_ineq = kDefaultEpsIneq, double eps_eq = kDefaultEpsEq);

  size_t dimension() const { return n_; }
  const std::vector<LinearConstraint>& linear() const { return linear_; }
  const std::vector<PolynomialConstraint>& nonlinear() const { return nonlinear_; }
  double eps_ineq() const { return eps_ineq_; }
  double eps_eq() const { return eps_eq_; }

  // Inequalities become a.x <= b + eps_ineq; equalities expand in place into
  // the pair a.x <= b + eps_eq, -a.x <= -b + eps_eq.
  const std::vector<ExpandedInequality>& expand_linear() const { return expanded_; }

  // Nonlinear constraints are evaluated without any tolerance.
  ViolationReport check(const std::vector<double>& x) const;
  ViolationReport check(const SimplexVector& x) const;
  bool satisfied(const std::vector<double>& x) const;

  ConstraintSet& add_predicate(PredicateConstraint g);
  const std::vector<PredicateConstraint>& predicates() const { return predicates_; }

 private:
  size_t n_;
  std::vector<LinearConstraint> linear_;
  std::vector<PolynomialConstraint> nonlinear_;
  std::vector<PredicateConstraint> predicates_;
  double eps_ineq_;
  double eps_eq_;
  std::vector<ExpandedInequality> expanded_;
};

// Constraint-file parsing (JSON); ">=" rows are normalized to "<=" by
// negation, omitted tolerances default to the values above.
ConstraintSet parse_constraints(const std::string& json_text);
ConstraintSet load_constraints(const std::string& path);
std::string constraints_to_json(const ConstraintSet& cs);

// Bound vectors as a constraint set: x_i <= u_i for u_i < 1 and
// x_i >= l_i for l_i > 0.
ConstraintSet bounds_as_constraints(const std::vector<double>& lower,
                                    const std::vector<double>& upper,
                                    double eps_ineq = kDefaultEpsIneq,
                                    double eps_eq = kDefaultEpsEq);

}  // namespace fixedsum
