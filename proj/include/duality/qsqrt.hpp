#pragma once

#include <map>
#include <optional>
#include <string>

#include "duality/rational.hpp"

namespace duality {

// Prime -> exponent; negative exponents allowed.
using PrimePowers = std::map<unsigned long, long>;

void add_factorial_powers(PrimePowers& pp, unsigned n, long multiplicity);
void add_integer_powers(PrimePowers& pp, unsigned long n, long multiplicity);

// value = q * sqrt(r) with r a squarefree positive integer; q == 0 forces r == 1.
class QSqrt {
 public:
  QSqrt() : q_(0), r_(1) {}
  QSqrt(const Rational& q) : q_(q), r_(1) {}  // NOLINT(google-explicit-constructor)
  // q * sqrt(radicand) for any nonnegative rational radicand.
  static QSqrt sqrt_of(const Rational& radicand, const Rational& q = 1);
  // q * sqrt(prod p^e) from a factored radicand.
  static QSqrt from_powers(const Rational& q, const PrimePowers& radicand);

  const Rational& rational_part() const { return q_; }
  const Integer& radicand() const { return r_; }
  bool is_zero() const { return q_ == 0; }
  bool is_rational() const { return r_ == 1; }
  double to_double() const;
  std::string to_string() const;

  QSqrt operator-() const { return QSqrt(-q_, r_); }
  friend QSqrt operator*(const QSqrt& a, const QSqrt& b);
  // throws IncompatibleRadicands unless radicands agree or one side is zero
  friend QSqrt operator+(const QSqrt& a, const QSqrt& b);
  friend QSqrt operator-(const QSqrt& a, const QSqrt& b) { return a + (-b); }
  bool operator==(const QSqrt& o) const { return q_ == o.q_ && r_ == o.r_; }
  bool operator!=(const QSqrt& o) const { return !(*this == o); }

 private:
  friend class RadicalSum;
  QSqrt(const Rational& q, const Integer& r) : q_(q), r_(q == 0 ? Integer(1) : r) {}
  Rational q_;
  Integer r_;
};

// Exact sum of rational multiples of square roots of distinct squarefree integers.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const QSqrt& x) { *this += x; }  // NOLINT(google-explicit-constructor)
  RadicalSum& operator+=(const QSqrt& x);
  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator*=(const Rational& c);
  RadicalSum operator*(const QSqrt& x) const;
  bool is_zero() const { return terms_.empty(); }
  // single radical class (or zero) collapses to a QSqrt
  std::optional<QSqrt> single() const;
  double to_double() const;
  std::string to_string() const;
  bool operator==(const RadicalSum& o) const { return terms_ == o.terms_; }
  bool operator!=(const RadicalSum& o) const { return !(*this == o); }
  const std::map<Integer, Rational>& terms() const { return terms_; }

 private:
  std::map<Integer, Rational> terms_;
};

}  // namespace duality
