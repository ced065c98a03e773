#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duality/rational.hpp"

namespace duality {

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Graded order: lower total degree first, then larger exponent on earlier variables first.
struct GradedLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients. No zero terms are stored.
class SparsePoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLess>;

  explicit SparsePoly(int nvars = 0) : nvars_(nvars) {}
  static SparsePoly constant(int nvars, const Rational& c);
  static SparsePoly variable(int nvars, int index, const Rational& c = 1);
  static SparsePoly monomial(const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  Rational coeff(const Exponents& e) const;
  Rational constant_term() const;

  void add_term(const Exponents& e, const Rational& c);

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return a.mul_truncated(b, -1); }
  bool operator==(const SparsePoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // Product keeping only monomials of total degree <= max_degree (no truncation when negative).
  SparsePoly mul_truncated(const SparsePoly& o, int max_degree) const;
  SparsePoly truncated(int max_degree) const;

  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;
  SparsePoly derivative(int var) const;
  // Substitutes Y_i -> t * Y_i and returns the coefficient of t^d for each d.
  std::vector<Rational> graded_values(const std::vector<Rational>& point) const;
  // Divides every exponent by two; throws HalfIntegerExponent if any exponent is odd.
  SparsePoly halve_exponents() const;

  // Canonical text, e.g. "1 + Y1*Y2 - 2*Y1^2". Variables are named by `names` or Y<i+1>.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_;
  TermMap terms_;
};

// Polynomial truncated at total degree D; optional per-variable caps restrict the support further.
struct TruncatedSeries {
  SparsePoly poly;
  int degree = 0;
  std::vector<int> caps;  // empty means no cap

  Rational coeff(const Exponents& e) const { return poly.coeff(e); }
  bool admits(const Exponents& e) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
};

// S with S * p^2 = 1 + O(deg > D). Requires constant term 1.
TruncatedSeries series_inverse_square(const SparsePoly& p, int D, const std::vector<int>& caps = {});

// Univariate helpers on dense rational coefficient vectors (index = power).
using UniPoly = std::vector<Rational>;
UniPoly uni_mul(const UniPoly& a, const UniPoly& b, int max_degree = -1);
UniPoly uni_inverse_square(const UniPoly& p, int D);
void uni_trim(UniPoly& p);

}  // namespace duality
