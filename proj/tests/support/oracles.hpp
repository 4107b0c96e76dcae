#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fixedsum/constraints.hpp"
#include "fixedsum/lp.hpp"
#include "fixedsum/rng.hpp"

// Test-only oracles, all independent of the production code paths they check.
namespace oracles {

// Brute-force LP oracle: enumerate every square subsystem of active
// constraints, keep the feasible vertices, return the best objective.
// Requires finite bounds (the feasible set is then a polytope).
struct EnumerationResult {
  bool feasible = false;
  double best = 0.0;
  std::vector<double> argbest;
};
EnumerationResult enumerate_lp(const fixedsum::lp::LinearProgram& lp, double feas_tol = 1e-7);

// Threshold recursion re-implemented on top of the enumeration oracle.
std::vector<double> thetas_by_enumeration(const fixedsum::ConstraintSet& cs);

// Affine rescale oracle: solve the 3x3 vertex-correspondence system mapping
// t + s*e_j to e_j and apply the resulting matrix to x.
std::vector<double> rescale_by_linear_solve(const std::vector<double>& x,
                                            const std::vector<double>& offset);

// One-sample Kolmogorov-Smirnov statistic against an analytic CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
// Asymptotic Kolmogorov critical value at significance alpha.
double ks_critical(double alpha, size_t n);

// Beta(1, b) CDF: 1 - (1-x)^b, the marginal of a flat Dirichlet coordinate.
double beta1b_cdf(double x, double b);

// Chi-squared upper tail by adaptive Simpson quadrature of the density;
// independent of the incomplete-gamma implementation.
double chi2_tail_by_quadrature(double x, int dof);

// Random LP instances for the solver-vs-oracle property tests. Variables are
// box-bounded in [0,1]; roughly 30% of the instances are unanchored and may
// be infeasible.
fixedsum::lp::LinearProgram random_lp(fixedsum::RngState& rng);

// Random bound/inequality constraint sets (n <= 5) for the theta tests.
fixedsum::ConstraintSet random_constraint_set(fixedsum::RngState& rng);

// Runs the CLI binary named by $FIXEDSUM_CLI; returns its exit code.
// Skips (returns nullopt) when the variable is missing.
std::optional<int> run_cli(const std::string& args, std::string* stdout_text = nullptr);
std::string data_dir();  // $FIXEDSUM_DATA

}  // namespace oracles
