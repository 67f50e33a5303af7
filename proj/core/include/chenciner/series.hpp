#pragma once

#include <chenciner/rational.hpp>

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chenciner {

// One monomial c * x1^i * x2^j of a truncated series.
struct SeriesTerm {
  int i = 0;
  int j = 0;
  Rational coeff;
};

// Truncated bivariate power series with exact rational coefficients.
//
// Invariants:
//   - every stored exponent pair satisfies i, j >= 0 and i + j <= order()
//   - absent pairs are exactly zero; zero coefficients are never stored
//   - values are immutable after construction; all operations below are pure
//     and safe to share across threads
//
// Arithmetic carries min(order of operands): truncation never widens
// silently. Use truncated() to change the order explicitly.
class BivariateSeries {
 public:
  using TermMap = std::map<std::pair<int, int>, Rational>;

  // The zero series at the given truncation order.
  explicit BivariateSeries(int order = 0);

  static BivariateSeries constant(const Rational& c, int order);
  // which = 1 or 2; the bare variable x1 or x2 (order must be >= 1).
  static BivariateSeries variable(int which, int order);
  static BivariateSeries from_terms(int order, std::initializer_list<SeriesTerm> terms);
  static BivariateSeries from_terms(int order, const std::vector<SeriesTerm>& terms);

  // Parses a literal like "1 + a1 + 2*a2 - 3/4*a1^2 + 0.5*a1*a2". Accepted
  // variable spellings default to {a1, alpha1} and {a2, alpha2}; pass others
  // to read series in different letters. Throws ConfigError on bad syntax or
  // on a term whose degree exceeds the order.
  static BivariateSeries parse(std::string_view text, int order,
                               const std::vector<std::string>& var1 = {"a1", "alpha1"},
                               const std::vector<std::string>& var2 = {"a2", "alpha2"});

  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  // Zero when the pair is absent.
  Rational coeff(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }

  // Explicit re-truncation; new_order may be larger (no terms appear, the
  // series is then complete only to the old order) or smaller (terms drop).
  BivariateSeries truncated(int new_order) const;

  BivariateSeries operator-() const;
  friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
  friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b);
  // Cauchy product; terms of total degree > min(order) are discarded.
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
  friend BivariateSeries operator*(const Rational& c, const BivariateSeries& a);

  // Equal orders and identical coefficient maps.
  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b);

  // Substitutes sub1 for x1 and sub2 for x2; both must have zero constant
  // term (substitution at a shifted point is not supported). Result order is
  // min(order of the three operands). Powers are built by repeated
  // multiplication with per-step truncation.
  BivariateSeries compose(const BivariateSeries& sub1, const BivariateSeries& sub2) const;

  // Multiplicative inverse as a truncated geometric series; the constant term
  // must be nonzero.
  BivariateSeries reciprocal() const;

  // Partial derivative with respect to x1 (var = 1) or x2 (var = 2). Complete
  // only to order() - 1; the result carries max(order() - 1, 0).
  BivariateSeries derivative(int var) const;

  // Numeric evaluation by direct monomial summation in map order (the one
  // documented evaluation scheme, used everywhere).
  double eval(double x1, double x2) const;
  // Same sum carried out in exact arithmetic.
  Rational eval_exact(const Rational& x1, const Rational& x2) const;

  // Human-readable form, e.g. "1 - 1/4*mu1 + 5*mu2^2".
  std::string str(std::string_view name1 = "a1", std::string_view name2 = "a2") const;

 private:
  int order_;
  TermMap terms_;

  void set(int i, int j, Rational c);  // drops exact zeros, checks degree
};

}  // namespace chenciner
