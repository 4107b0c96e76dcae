#include <cmath>
#include <limits>

#include <doctest.h>

#include "fixedsum/error.hpp"
#include "fixedsum/lp.hpp"
#include "support/oracles.hpp"

using namespace fixedsum;
using lp::LinearProgram;
using lp::Relation;
using lp::Status;

TEST_CASE("lp: tight bound example") {
  LinearProgram prog = LinearProgram::with_dimension(2);
  prog.maximize({1, 0}).add_eq({1, 1}, 1.0).add_less_eq({1, 0}, 0.3);
  lp::Solution sol = lp::solve(prog);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective_value == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(sol.point[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(sol.point[1] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(sol.max_reduced_cost <= lp::kFeasTol);
}

TEST_CASE("lp: forced by the unit sum") {
  LinearProgram prog = LinearProgram::with_dimension(3);
  prog.maximize({0, 1, 0}).add_eq({1, 1, 1}, 1.0).add_less_eq({-1, 0, 0}, -0.3);
  lp::Solution sol = lp::solve(prog);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective_value == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("lp: infeasible and unbounded detection") {
  LinearProgram infeasible = LinearProgram::with_dimension(2);
  infeasible.add_eq({1, 1}, 1.0).add_less_eq({1, 0}, 0.2).add_less_eq({-1, 0}, -0.7);
  lp::Solution sol = lp::solve(infeasible);
  CHECK(sol.status == Status::Infeasible);
  CHECK(sol.phase1_objective > lp::kFeasTol);

  LinearProgram unbounded = LinearProgram::with_dimension(2);
  unbounded.upper = {std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  unbounded.maximize({1, 0}).add_less_eq({0, 1}, 5.0);
  CHECK(lp::solve(unbounded).status == Status::Unbounded);
}

TEST_CASE("lp: input validation") {
  LinearProgram bad = LinearProgram::with_dimension(2);
  bad.add_less_eq({1, 0, 0}, 1.0);  // wrong row length
  CHECK_THROWS_AS(lp::solve(bad), InputError);

  LinearProgram flipped = LinearProgram::with_dimension(2);
  flipped.lower = {0.5, 0.0};
  flipped.upper = {0.2, 1.0};
  CHECK_THROWS_AS(lp::solve(flipped), InputError);
}

TEST_CASE("lp: determinism") {
  RngState rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    LinearProgram prog = oracles::random_lp(rng);
    lp::Solution a = lp::solve(prog);
    lp::Solution b = lp::solve(prog);
    CHECK(a.status == b.status);
    CHECK(a.pivots == b.pivots);
    if (a.status == Status::Optimal) {
      for (size_t i = 0; i < a.point.size(); ++i) CHECK(a.point[i] == b.point[i]);
    }
  }
}

TEST_CASE("lp: 200 random instances agree with vertex enumeration") {
  RngState rng(31);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram prog = oracles::random_lp(rng);
    lp::Solution sol = lp::solve(prog);
    oracles::EnumerationResult oracle = oracles::enumerate_lp(prog);
    if (oracle.feasible) {
      REQUIRE(sol.status == Status::Optimal);
      CHECK(sol.objective_value == doctest::Approx(oracle.best).epsilon(1e-8));
      CHECK(sol.max_reduced_cost <= lp::kFeasTol);
      CHECK(sol.phase1_objective <= lp::kFeasTol);
      ++optimal_seen;
    } else {
      REQUIRE(sol.status == Status::Infeasible);
      CHECK(sol.phase1_objective > lp::kFeasTol);
      ++infeasible_seen;
    }
  }
  // The generator must exercise both certificate paths.
  CHECK(optimal_seen >= 50);
  CHECK(infeasible_seen >= 10);
}
