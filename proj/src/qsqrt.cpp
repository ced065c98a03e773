#include "duality/qsqrt.hpp"

#include <cmath>

#include "duality/errors.hpp"

namespace duality {

namespace {

constexpr unsigned long kTrialLimit = 100000;

// Splits n into square part s^2 and squarefree part f (n = s^2 f).
void split_square(const Integer& n, Integer& s, Integer& f) {
  s = 1;
  f = 1;
  Integer rest = n;
  for (unsigned long p = 2; p <= kTrialLimit && rest > 1; ++p) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(e / 2));
    s *= pk;
    if (e % 2) f *= p;
  }
  if (rest == 1) return;
  if (mpz_perfect_square_p(rest.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
    s *= r;
    return;
  }
  // All primes below the trial limit are gone, so a cofactor below limit^3 is p, p*q or p^2.
  Integer cube_bound = Integer(kTrialLimit) * kTrialLimit * kTrialLimit;
  if (rest >= cube_bound) throw Error(ErrorKind::SizeLimit, "radicand too large to normalize");
  f *= rest;
}

}  // namespace

void add_integer_powers(PrimePowers& pp, unsigned long n, long multiplicity) {
  for (unsigned long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      pp[p] += multiplicity;
      n /= p;
    }
  if (n > 1) pp[n] += multiplicity;
}

void add_factorial_powers(PrimePowers& pp, unsigned n, long multiplicity) {
  for (unsigned long p = 2; p <= n; ++p) {
    bool prime = true;
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    long e = 0;
    for (unsigned long pk = p; pk <= n; pk *= p) e += n / pk;
    pp[p] += e * multiplicity;
  }
}

QSqrt QSqrt::sqrt_of(const Rational& radicand, const Rational& q) {
  if (radicand < 0) throw Error(ErrorKind::Domain, "square root of a negative rational");
  if (radicand == 0 || q == 0) return QSqrt();
  // sqrt(a/b) = sqrt(a b) / b
  Integer ab = radicand.get_num() * radicand.get_den();
  Integer s, f;
  split_square(ab, s, f);
  Rational coef = q * Rational(s, radicand.get_den());
  coef.canonicalize();
  return QSqrt(coef, f);
}

QSqrt QSqrt::from_powers(const Rational& q, const PrimePowers& radicand) {
  if (q == 0) return QSqrt();
  Rational coef = q;
  Integer r = 1;
  for (const auto& [p, e] : radicand) {
    if (e == 0) continue;
    long half = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e / 2)
    if (e % 2 != 0) r *= p;
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(half >= 0 ? half : -half));
    if (half >= 0)
      coef *= pk;
    else
      coef /= pk;
  }
  return QSqrt(coef, r);
}

double QSqrt::to_double() const { return q_.get_d() * std::sqrt(r_.get_d()); }

std::string QSqrt::to_string() const {
  if (r_ == 1) return q_.get_str();
  return q_.get_str() + "*sqrt(" + r_.get_str() + ")";
}

QSqrt operator*(const QSqrt& a, const QSqrt& b) {
  if (a.is_zero() || b.is_zero()) return QSqrt();
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.r_.get_mpz_t(), b.r_.get_mpz_t());
  Integer r = (a.r_ / g) * (b.r_ / g);
  return QSqrt(a.q_ * b.q_ * g, r);
}

QSqrt operator+(const QSqrt& a, const QSqrt& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.r_ != b.r_)
    throw Error(ErrorKind::IncompatibleRadicands,
                "sqrt(" + a.r_.get_str() + ") + sqrt(" + b.r_.get_str() + ")");
  return QSqrt(a.q_ + b.q_, a.r_);
}

RadicalSum& RadicalSum::operator+=(const QSqrt& x) {
  if (x.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(x.radicand(), x.rational_part());
  if (!inserted) {
    it->second += x.rational_part();
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const auto& [r, q] : o.terms_) *this += QSqrt(q, r);
  return *this;
}

RadicalSum& RadicalSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [r, q] : terms_) q *= c;
  return *this;
}

RadicalSum RadicalSum::operator*(const QSqrt& x) const {
  RadicalSum out;
  for (const auto& [r, q] : terms_) out += QSqrt(q, r) * x;
  return out;
}

std::optional<QSqrt> RadicalSum::single() const {
  if (terms_.empty()) return QSqrt();
  if (terms_.size() > 1) return std::nullopt;
  return QSqrt(terms_.begin()->second, terms_.begin()->first);
}

double RadicalSum::to_double() const {
  double s = 0;
  for (const auto& [r, q] : terms_) s += q.get_d() * std::sqrt(r.get_d());
  return s;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [r, q] : terms_) {
    if (!s.empty()) s += " + ";
    s += QSqrt(q, r).to_string();
  }
  return s;
}

}  // namespace duality
