#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace duality {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q"; the result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational pow(const Rational& base, long exponent);
const Integer& factorial(unsigned n);
bool is_integer(const Rational& q);
double to_double(const Rational& q);

// Deterministic pseudo-random rational p/q with |p/q| <= bound, q in [1, max_den].
class RationalSampler {
 public:
  explicit RationalSampler(unsigned long seed) : rng_(seed) {}
  Rational next(const Rational& bound, unsigned max_den = 97);
  Rational next_positive(const Rational& bound, unsigned max_den = 97);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace duality
