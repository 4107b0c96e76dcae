#include "fixedsum/constraints.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixedsum/error.hpp"

namespace fixedsum {

namespace {

double power(double base, int exp) {
  double r = 1.0;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace

double PolynomialConstraint::evaluate(const std::vector<double>& x) const {
  double value = 0.0;
  for (const PolynomialTerm& t : terms) {
    double prod = t.coef;
    for (size_t i = 0; i < x.size(); ++i) {
      const int e = t.exponents[i];
      if (e != 0) prod *= power(x[i], e);
    }
    value += prod;
  }
  return value;
}

ConstraintSet::ConstraintSet(size_t n, std::vector<LinearConstraint> linear,
                             std::vector<PolynomialConstraint> nonlinear, double eps_ineq,
                             double eps_eq)
    : n_(n),
      linear_(std::move(linear)),
      nonlinear_(std::move(nonlinear)),
      eps_ineq_(eps_ineq),
      eps_eq_(eps_eq) {
  if (n_ < 2) throw InputError("constraint set needs dimension >= 2");
  if (eps_ineq_ < 0.0 || eps_eq_ < 0.0) throw InputError("tolerances must be nonnegative");
  for (const LinearConstraint& c : linear_) {
    if (c.a.size() != n_) throw InputError("linear constraint length does not match dimension");
    bool all_zero = true;
    for (double v : c.a) {
      if (!std::isfinite(v)) throw InputError("linear constraint coefficient is not finite");
      if (v != 0.0) all_zero = false;
    }
    if (all_zero) throw InputError("linear constraint has a zero coefficient vector");
    if (!std::isfinite(c.b)) throw InputError("linear constraint rhs is not finite");
  }
  for (const PolynomialConstraint& c : nonlinear_) {
    for (const PolynomialTerm& t : c.terms) {
      if (t.exponents.size() != n_)
        throw InputError("polynomial exponent vector length does not match dimension");
      for (int e : t.exponents)
        if (e < 0) throw InputError("polynomial exponents must be nonnegative");
    }
  }

  for (size_t j = 0; j < linear_.size(); ++j) {
    const LinearConstraint& c = linear_[j];
    if (c.rel == lp::Relation::LessEq) {
      expanded_.push_back({c.a, c.b + eps_ineq_, static_cast<int>(j)});
    } else {
      expanded_.push_back({c.a, c.b + eps_eq_, static_cast<int>(j)});
      std::vector<double> neg(c.a.size());
      for (size_t i = 0; i < c.a.size(); ++i) neg[i] = -c.a[i];
      expanded_.push_back({std::move(neg), -c.b + eps_eq_, static_cast<int>(j)});
    }
  }
}

ViolationReport ConstraintSet::check(const std::vector<double>& x) const {
  if (x.size() != n_) throw InputError("check: point dimension does not match constraint set");
  ViolationReport report;
  int last = -1;
  for (const ExpandedInequality& e : expanded_) {
    double lhs = 0.0;
    for (size_t i = 0; i < n_; ++i) lhs += e.a[i] * x[i];
    if (lhs > e.b && e.source != last) {
      report.violated_linear.push_back(e.source);
      last = e.source;  // expansion is in source order, so dedup is local
    }
  }
  for (size_t j = 0; j < nonlinear_.size(); ++j) {
    if (nonlinear_[j].evaluate(x) > nonlinear_[j].bound)
      report.violated_nonlinear.push_back(static_cast<int>(j));
  }
  for (size_t j = 0; j < predicates_.size(); ++j) {
    if (predicates_[j](x) > 0.0)
      report.violated_nonlinear.push_back(static_cast<int>(nonlinear_.size() + j));
  }
  report.satisfied = report.violated_linear.empty() && report.violated_nonlinear.empty();
  return report;
}

ViolationReport ConstraintSet::check(const SimplexVector& x) const { return check(x.entries()); }

bool ConstraintSet::satisfied(const std::vector<double>& x) const { return check(x).satisfied; }

ConstraintSet& ConstraintSet::add_predicate(PredicateConstraint g) {
  predicates_.push_back(std::move(g));
  return *this;
}

namespace {

using nlohmann::json;

lp::Relation parse_relation(const std::string& rel, bool& negate) {
  negate = false;
  if (rel == "<=") return lp::Relation::LessEq;
  if (rel == "==" || rel == "=") return lp::Relation::Eq;
  if (rel == ">=") {
    negate = true;
    return lp::Relation::LessEq;
  }
  throw InputError("constraint file: unknown relation '" + rel + "'");
}

}  // namespace

ConstraintSet parse_constraints(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("constraint file: ") + e.what());
  }
  if (!doc.contains("n")) throw InputError("constraint file: missing field 'n'");
  const size_t n = doc.at("n").get<size_t>();

  std::vector<LinearConstraint> linear;
  for (const json& row : doc.value("linear", json::array())) {
    LinearConstraint c;
    c.a = row.at("a").get<std::vector<double>>();
    c.b = row.at("b").get<double>();
    bool negate = false;
    c.rel = parse_relation(row.value("rel", "<="), negate);
    if (negate) {
      for (double& v : c.a) v = -v;
      c.b = -c.b;
    }
    linear.push_back(std::move(c));
  }

  std::vector<PolynomialConstraint> nonlinear;
  for (const json& row : doc.value("nonlinear", json::array())) {
    PolynomialConstraint c;
    for (const json& term : row.at("terms")) {
      PolynomialTerm t;
      t.coef = term.at("coef").get<double>();
      t.exponents = term.at("exp").get<std::vector<int>>();
      c.terms.push_back(std::move(t));
    }
    c.bound = row.at("b").get<double>();
    nonlinear.push_back(std::move(c));
  }

  const double eps_ineq = doc.value("eps_ineq", kDefaultEpsIneq);
  const double eps_eq = doc.value("eps_eq", kDefaultEpsEq);
  return ConstraintSet(n, std::move(linear), std::move(nonlinear), eps_ineq, eps_eq);
}

ConstraintSet load_constraints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open constraint file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_constraints(buf.str());
}

std::string constraints_to_json(const ConstraintSet& cs) {
  json doc;
  doc["n"] = cs.dimension();
  doc["eps_ineq"] = cs.eps_ineq();
  doc["eps_eq"] = cs.eps_eq();
  doc["linear"] = json::array();
  for (const LinearConstraint& c : cs.linear()) {
    doc["linear"].push_back(
        {{"a", c.a}, {"b", c.b}, {"rel", c.rel == lp::Relation::Eq ? "==" : "<="}});
  }
  doc["nonlinear"] = json::array();
  for (const PolynomialConstraint& c : cs.nonlinear()) {
    json terms = json::array();
    for (const PolynomialTerm& t : c.terms)
      terms.push_back({{"coef", t.coef}, {"exp", t.exponents}});
    doc["nonlinear"].push_back({{"terms", terms}, {"b", c.bound}});
  }
  return doc.dump(2);
}

ConstraintSet bounds_as_constraints(const std::vector<double>& lower,
                                    const std::vector<double>& upper, double eps_ineq,
                                    double eps_eq) {
  const size_t n = upper.size();
  if (!lower.empty() && lower.size() != n)
    throw InputError("bounds_as_constraints: bound lengths differ");
  std::vector<LinearConstraint> linear;
  for (size_t i = 0; i < n; ++i) {
    if (upper[i] < 1.0) {
      std::vector<double> a(n, 0.0);
      a[i] = 1.0;
      linear.push_back({std::move(a), upper[i], lp::Relation::LessEq});
    }
    if (!lower.empty() && lower[i] > 0.0) {
      std::vector<double> a(n, 0.0);
      a[i] = -1.0;
      linear.push_back({std::move(a), -lower[i], lp::Relation::LessEq});
    }
  }
  return ConstraintSet(n, std::move(linear), {}, eps_ineq, eps_eq);
}

}  // namespace fixedsum
