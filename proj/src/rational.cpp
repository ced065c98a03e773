#include "duality/rational.hpp"

#include <mutex>

#include "duality/errors.hpp"

namespace duality {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Topology: return "TopologyError";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::IncompatibleRadicands: return "IncompatibleRadicands";
    case ErrorKind::OddVertexCount: return "OddVertexCount";
    case ErrorKind::NotQuadratic: return "NotQuadratic";
    case ErrorKind::IncompleteOrder: return "IncompleteOrder";
    case ErrorKind::InadmissibleColoring: return "InadmissibleColoring";
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::SingularCoupling: return "SingularCoupling";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::ZeroCouplingDivision: return "ZeroCouplingDivision";
    case ErrorKind::PathNotSimple: return "PathNotSimple";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::HalfIntegerExponent: return "HalfIntegerExponent";
    case ErrorKind::UndefinedSign: return "UndefinedSign";
  }
  return "Error";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorKind::Parse, "not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorKind::Domain, "zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

const Integer& factorial(unsigned n) {
  static std::vector<Integer> table{Integer(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

double to_double(const Rational& q) { return q.get_d(); }

Rational RationalSampler::next(const Rational& bound, unsigned max_den) {
  std::uniform_int_distribution<unsigned> den_dist(1, max_den);
  unsigned den = den_dist(rng_);
  Rational lim = bound * den;
  Integer top = lim.get_num() / lim.get_den();
  long t = top.get_si();
  std::uniform_int_distribution<long> num_dist(-t, t);
  Rational q(num_dist(rng_), den);
  q.canonicalize();
  return q;
}

Rational RationalSampler::next_positive(const Rational& bound, unsigned max_den) {
  for (;;) {
    Rational q = next(bound, max_den);
    if (q > 0) return q;
    if (q < 0) return -q;
  }
}

}  // namespace duality
