#include "duality/poly.hpp"

#include <numeric>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

SparsePoly SparsePoly::constant(int nvars, const Rational& c) {
  SparsePoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(int nvars, int index, const Rational& c) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(e, c);
}

SparsePoly SparsePoly::monomial(const Exponents& e, const Rational& c) {
  SparsePoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int SparsePoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, duality::total_degree(e));
  return d;
}

Rational SparsePoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational SparsePoly::constant_term() const { return coeff(Exponents(nvars_, 0)); }

void SparsePoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

SparsePoly SparsePoly::mul_truncated(const SparsePoly& o, int max_degree) const {
  int n = std::max(nvars_, o.nvars_);
  SparsePoly r(n);
  if (is_zero() || o.is_zero()) return r;
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  Exponents e(n);
  for (const auto& [ea, ca] : terms_) {
    int da = duality::total_degree(ea);
    for (const auto& [eb, cb] : o.terms_) {
      if (max_degree >= 0 && da + duality::total_degree(eb) > max_degree) continue;
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly SparsePoly::truncated(int max_degree) const {
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (duality::total_degree(e) <= max_degree) r.terms_.emplace(e, c);
  return r;
}

Rational SparsePoly::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point has wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) m *= pow(point[i], e[i]);
    sum += m;
  }
  return sum;
}

double SparsePoly::evaluate(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point has wrong dimension");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    sum += m;
  }
  return sum;
}

SparsePoly SparsePoly::derivative(int var) const {
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

std::vector<Rational> SparsePoly::graded_values(const std::vector<Rational>& point) const {
  std::vector<Rational> out(total_degree() + 1);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) m *= pow(point[i], e[i]);
    out[duality::total_degree(e)] += m;
  }
  return out;
}

SparsePoly SparsePoly::halve_exponents() const {
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents h = e;
    for (auto& x : h) {
      if (x % 2 != 0)
        throw Error(ErrorKind::HalfIntegerExponent, "monomial with a half-integer exponent survived");
      x /= 2;
    }
    r.terms_.emplace(std::move(h), c);
  }
  return r;
}

std::string SparsePoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    bool constant = duality::total_degree(e) == 0;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (constant || mag != 1) {
      out << mag.get_str();
      need_star = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (need_star) out << "*";
      out << (i < static_cast<int>(names.size()) ? names[i] : "Y" + std::to_string(i + 1));
      if (e[i] > 1) out << "^" << e[i];
      need_star = true;
    }
  }
  return out.str();
}

bool TruncatedSeries::admits(const Exponents& e) const {
  if (duality::total_degree(e) > degree) return false;
  for (size_t i = 0; i < caps.size(); ++i)
    if (e[i] > caps[i]) return false;
  return true;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  TruncatedSeries r;
  r.degree = std::min(degree, o.degree);
  r.caps = caps.empty() ? o.caps : caps;
  r.poly = SparsePoly(poly.nvars());
  SparsePoly prod = poly.mul_truncated(o.poly, r.degree);
  for (const auto& [e, c] : prod.terms())
    if (r.admits(e)) r.poly.add_term(e, c);
  return r;
}

TruncatedSeries series_inverse_square(const SparsePoly& p, int D, const std::vector<int>& caps) {
  if (p.constant_term() != 1) throw Error(ErrorKind::NonUnitConstantTerm, "constant term must be 1");
  const int n = p.nvars();
  TruncatedSeries out;
  out.degree = D;
  out.caps = caps;
  out.poly = SparsePoly(n);

  // r' = p^2 - 1, grouped by degree
  SparsePoly r = p.mul_truncated(p, D);
  std::vector<std::vector<std::pair<Exponents, Rational>>> rb(D + 1);
  for (const auto& [e, c] : r.terms()) {
    int d = total_degree(e);
    if (d == 0 || !out.admits(e)) continue;
    rb[d].emplace_back(e, c);
  }

  // S_d = - sum_k r'_k S_{d-k}
  std::vector<std::vector<std::pair<Exponents, Rational>>> sb(D + 1);
  sb[0].emplace_back(Exponents(n, 0), Rational(1));
  Exponents e(n);
  for (int d = 1; d <= D; ++d) {
    std::map<Exponents, Rational> acc;
    for (int k = 1; k <= d; ++k) {
      for (const auto& [er, cr] : rb[k]) {
        for (const auto& [es, cs] : sb[d - k]) {
          bool ok = true;
          for (int i = 0; i < n; ++i) {
            e[i] = er[i] + es[i];
            if (!caps.empty() && e[i] > caps[i]) ok = false;
          }
          if (!ok) continue;
          acc[e] -= cr * cs;
        }
      }
    }
    for (auto& [ee, c] : acc)
      if (c != 0) sb[d].emplace_back(ee, std::move(c));
  }
  for (const auto& bucket : sb)
    for (const auto& [ee, c] : bucket) out.poly.add_term(ee, c);
  return out;
}

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b, int max_degree) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size() + b.size() - 1;
  if (max_degree >= 0) n = std::min(n, static_cast<size_t>(max_degree + 1));
  UniPoly r(n);
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

UniPoly uni_inverse_square(const UniPoly& p, int D) {
  if (p.empty() || p[0] != 1) throw Error(ErrorKind::NonUnitConstantTerm, "constant term must be 1");
  UniPoly r = uni_mul(p, p, D);
  r.resize(D + 1);
  UniPoly s(D + 1);
  s[0] = 1;
  for (int d = 1; d <= D; ++d) {
    Rational acc = 0;
    for (int k = 1; k <= d; ++k)
      if (r[k] != 0) acc -= r[k] * s[d - k];
    s[d] = acc;
  }
  return s;
}

}  // namespace duality
