#include <cmath>
#include <string>

#include <doctest.h>

#include "fixedsum/constraints.hpp"
#include "fixedsum/drsc.hpp"
#include "fixedsum/error.hpp"
#include "fixedsum/gof.hpp"
#include "fixedsum/lp.hpp"
#include "fixedsum/runner.hpp"
#include "support/oracles.hpp"

using namespace fixedsum;
using lp::Relation;

namespace {

// Constraint-shape instances with the default tolerances.
ConstraintSet instance_sum_geq() {  // x1 + x2 >= 0.6
  return ConstraintSet(3, {{{-1, -1, 0}, -0.6, Relation::LessEq}});
}
ConstraintSet instance_sum_eq() {  // x1 + x2 == 0.6
  return ConstraintSet(3, {{{1, 1, 0}, 0.6, Relation::Eq}});
}
ConstraintSet instance_general() {  // x1 + 0.5 x2 <= 0.6
  return ConstraintSet(3, {{{1, 0.5, 0}, 0.6, Relation::LessEq}});
}
ConstraintSet instance_bilinear() {  // x1 * x2 - 0.1 <= 0
  return ConstraintSet(3, {}, {{{{1.0, {1, 1, 0}}}, 0.1}});
}

}  // namespace

TEST_CASE("thetas for the three-bound instance") {
  ConstraintSet cs(3,
                   {{{1, 0, 0}, 0.3, Relation::LessEq},
                    {{0, 1, 0}, 0.5, Relation::LessEq},
                    {{0, 0, 1}, 0.6, Relation::LessEq}},
                   {}, 0.0, 0.0);
  InducedSimplexFamily fam = compute_thetas(cs);
  REQUIRE(fam.dimension() == 3);
  CHECK(fam.thetas[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fam.thetas[1] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(fam.thetas[2] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(fam.nonempty(0));
  CHECK(fam.nonempty(1));
  CHECK(fam.nonempty(2));

  // The restart band: infeasible but inside no induced simplex.
  std::vector<double> band = {0.2, 0.15, 0.65};
  CHECK(!cs.satisfied(band));
  for (size_t i = 0; i < 3; ++i) CHECK(!fam.contains(i, band));

  // Oracle agreement.
  std::vector<double> oracle = oracles::thetas_by_enumeration(cs);
  for (size_t i = 0; i < 3; ++i)
    CHECK(fam.thetas[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
}

TEST_CASE("single bound: only the first simplex survives") {
  ConstraintSet cs(3, {{{1, 0, 0}, 0.3, Relation::LessEq}}, {}, 0.0, 0.0);
  InducedSimplexFamily fam = compute_thetas(cs);
  CHECK(fam.thetas[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fam.thetas[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fam.thetas[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fam.nonempty(0));
  CHECK(!fam.nonempty(1));
  CHECK(!fam.nonempty(2));

  // The sub-simplex accessor anchors at theta_i along dimension i.
  RegularSubSimplex sub = fam.simplex(0);
  CHECK(sub.offset() == std::vector<double>{0.3, 0.0, 0.0});
  CHECK(sub.scale() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("earlier-simplex subproblem has the closed form 1 - theta_k") {
  RngState rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 3 + static_cast<size_t>(rng.next_unit() * 3.0);
    const double theta_k = 0.2 + 0.6 * rng.next_unit();
    const size_t k = static_cast<size_t>(rng.next_unit() * n);
    size_t i = static_cast<size_t>(rng.next_unit() * n);
    if (i == k) i = (k + 1) % n;

    lp::LinearProgram prog = lp::LinearProgram::with_dimension(n);
    std::vector<double> c(n, 0.0);
    c[i] = 1.0;
    prog.maximize(c).add_eq(std::vector<double>(n, 1.0), 1.0);
    std::vector<double> a(n, 0.0);
    a[k] = -1.0;
    prog.add_less_eq(a, -theta_k);
    lp::Solution sol = lp::solve(prog);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective_value == doctest::Approx(1.0 - theta_k).epsilon(1e-9));
  }
}

TEST_CASE("random instances: thetas match the enumeration oracle") {
  RngState rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    ConstraintSet cs = oracles::random_constraint_set(rng);
    InducedSimplexFamily fam = compute_thetas(cs);
    std::vector<double> oracle = oracles::thetas_by_enumeration(cs);
    for (size_t i = 0; i < cs.dimension(); ++i)
      CHECK(fam.thetas[i] == doctest::Approx(oracle[i]).epsilon(1e-8));

    // Non-overlap and infeasibility coverage.
    for (size_t i = 0; i < cs.dimension(); ++i) {
      if (!fam.nonempty(i)) continue;
      for (size_t j = i + 1; j < cs.dimension(); ++j) {
        if (fam.nonempty(j)) CHECK(fam.thetas[i] + fam.thetas[j] >= 1.0 - 1e-9);
      }
      // Probe margin 1e-7: strictly above the solver's 1e-9 feasibility
      // tolerance, or the boundary point itself passes phase 1.
      lp::LinearProgram probe = lp::LinearProgram::with_dimension(cs.dimension());
      probe.add_eq(std::vector<double>(cs.dimension(), 1.0), 1.0);
      for (const ExpandedInequality& e : cs.expand_linear()) probe.add_less_eq(e.a, e.b);
      std::vector<double> a(cs.dimension(), 0.0);
      a[i] = -1.0;
      probe.add_less_eq(a, -(fam.thetas[i] + 1e-7));
      CHECK(lp::solve(probe).status == lp::Status::Infeasible);
    }
  }
}

TEST_CASE("infeasible constraint set is reported with the failing LP") {
  ConstraintSet cs(3,
                   {{{1, 0, 0}, 0.2, Relation::LessEq}, {{-1, 0, 0}, -0.7, Relation::LessEq}},
                   {}, 0.0, 0.0);
  CHECK_THROWS_WITH_AS(compute_thetas(cs), doctest::Contains("infeasible"), InputError);
}

TEST_CASE("theta order option") {
  ConstraintSet cs(3,
                   {{{1, 0, 0}, 0.3, Relation::LessEq},
                    {{0, 1, 0}, 0.5, Relation::LessEq},
                    {{0, 0, 1}, 0.6, Relation::LessEq}},
                   {}, 0.0, 0.0);
  InducedSimplexFamily desc = compute_thetas(cs, {2, 1, 0});
  // Processing x3 first: theta_3 = 0.6, then theta_2 = max(0.5, 1-0.6) = 0.5,
  // then theta_1 = max(0.3, 0.4, 0.5) = 0.5.
  CHECK(desc.thetas[2] == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(desc.thetas[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(desc.thetas[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(compute_thetas(cs, {0, 0, 1}), InputError);
}

TEST_CASE("drsc outputs satisfy their constraint sets") {
  RngState rng(8);
  for (const ConstraintSet& cs :
       {instance_sum_geq(), instance_sum_eq(), instance_general(), instance_bilinear()}) {
    InducedSimplexFamily fam = compute_thetas(cs);
    for (int k = 0; k < 1000; ++k) {
      DrscResult r = drsc_sample(cs, fam, rng);
      REQUIRE(cs.check(r.x).satisfied);
    }
  }
}

TEST_CASE("no constraints: first draw accepted, zero restarts") {
  ConstraintSet cs(3, {});
  InducedSimplexFamily fam = compute_thetas(cs);
  RngState rng(9);
  for (int k = 0; k < 100; ++k) {
    DrscResult r = drsc_sample(cs, fam, rng);
    CHECK(r.stats.restarts == 0);
    CHECK(r.stats.rescales == 0);
    CHECK(r.stats.dirichlet_draws == 1);
  }
}

TEST_CASE("induced simplices do not overlap empirically") {
  ConstraintSet cs = bounds_as_constraints({0, 0, 0}, {0.5, 0.25, 1.0});
  InducedSimplexFamily fam = compute_thetas(cs);
  RngState rng(10);
  std::vector<double> y;
  long long doubles = 0;
  for (int k = 0; k < 1000000; ++k) {
    flat_dirichlet_raw(3, rng, y);
    int members = 0;
    for (size_t i = 0; i < 3; ++i) {
      if (fam.nonempty(i) && y[i] >= fam.thetas[i] + 1e-9) ++members;
    }
    if (members > 1) ++doubles;
  }
  CHECK(doubles == 0);
}

TEST_CASE("drsc matches the rejection oracle on a two-sample test") {
  ConstraintSet cs = bounds_as_constraints({0, 0, 0}, {0.5, 0.25, 1.0});
  SamplerSpec drsc = SamplerSpec::drsc(cs);
  SamplerSpec reject = SamplerSpec::reject(cs);

  gof::LatticeCounts a = gof::make_lattice(15, 2), b = gof::make_lattice(15, 2);
  generate_stream(drsc, 100000, 51, 1,
                  [&](int, const std::vector<double>& x) { a.add(x); });
  generate_stream(reject, 100000, 52, 1,
                  [&](int, const std::vector<double>& x) { b.add(x); });
  gof::TwoSampleReport rep = gof::two_sample_chi2(a, b);
  CHECK(rep.p_value > 0.001);

  // Sanity: the same machinery distinguishes DRS output easily.
  SamplerSpec drs = SamplerSpec::drs(BoundsSpec::upper_only({0.5, 0.25, 1.0}));
  gof::LatticeCounts c = gof::make_lattice(15, 2);
  generate_stream(drs, 100000, 53, 1,
                  [&](int, const std::vector<double>& x) { c.add(x); });
  CHECK(gof::two_sample_chi2(b, c).p_value < 1e-6);
}

TEST_CASE("rejection sampler: try accounting and budget errors") {
  ConstraintSet tiny(3, {{{1, 0, 0}, 0.01, Relation::LessEq},
                         {{-1, 0, 0}, -0.005, Relation::LessEq}},
                     {}, 0.0, 0.0);
  RngState rng(14);
  CHECK_THROWS_AS(rejection_sample(tiny, rng, 5), SamplingError);

  ConstraintSet half(3, {{{1, 0, 0}, 0.5, Relation::LessEq}}, {}, 0.0, 0.0);
  long long tries = 0;
  SimplexVector x = rejection_sample(half, rng, 1000000, &tries);
  CHECK(tries >= 1);
  CHECK(half.check(x).satisfied);
}

TEST_CASE("drsc restart budget error carries the acceptance estimate") {
  ConstraintSet tiny(3, {{{1, 0, 0}, 0.001, Relation::LessEq},
                         {{0, 1, 0}, 0.001, Relation::LessEq}},
                     {}, 0.0, 0.0);
  InducedSimplexFamily fam = compute_thetas(tiny);
  RngState rng(15);
  CHECK_THROWS_WITH_AS(drsc_sample(tiny, fam, rng, 3), doctest::Contains("acceptance"),
                       SamplingError);
}
