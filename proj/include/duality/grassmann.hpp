#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "duality/errors.hpp"
#include "duality/graph.hpp"
#include "duality/poly.hpp"

namespace duality {

using GenMask = uint64_t;

// Sign of (monomial a) * (monomial b) once reordered to increasing generator order:
// each generator j of b passes the generators of a above j.
inline int reorder_sign(GenMask a, GenMask b) {
  int parity = 0;
  for (GenMask r = b; r; r &= r - 1) {
    int j = __builtin_ctzll(r);
    parity ^= __builtin_popcountll(j >= 63 ? 0 : (a >> (j + 1))) & 1;
  }
  return parity ? -1 : 1;
}

// Sign of the permutation that sorts `order` increasingly (inversion parity).
int permutation_sign(const std::vector<int>& order);

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const SparsePoly& c) { return c.is_zero(); }

// Element of the exterior algebra on up to 64 generators, keyed by generator bitmask.
template <typename C>
class GrassmannElement {
 public:
  explicit GrassmannElement(int ngen, C zero) : ngen_(ngen), zero_(std::move(zero)) {}
  static GrassmannElement scalar(int ngen, const C& c, const C& zero) {
    GrassmannElement g(ngen, zero);
    g.add(0, c);
    return g;
  }
  // c * g_a g_b (in that order)
  static GrassmannElement quadratic(int ngen, int a, int b, const C& c, const C& zero) {
    GrassmannElement g(ngen, zero);
    if (a == b) return g;
    GenMask ma = GenMask(1) << a, mb = GenMask(1) << b;
    g.add(ma | mb, reorder_sign(ma, mb) > 0 ? c : -c);
    return g;
  }

  int ngen() const { return ngen_; }
  const std::map<GenMask, C>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  const C& zero() const { return zero_; }

  void add(GenMask m, const C& c) {
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  GrassmannElement operator+(const GrassmannElement& o) const {
    GrassmannElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
  }

  GrassmannElement operator*(const GrassmannElement& o) const {
    GrassmannElement r(ngen_, zero_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        C prod = ca * cb;
        r.add(ma | mb, reorder_sign(ma, mb) > 0 ? prod : -prod);
      }
    return r;
  }

  bool is_homogeneous_quadratic() const {
    for (const auto& [m, c] : terms_)
      if (__builtin_popcountll(m) != 2) return false;
    return true;
  }

  C top_coefficient() const {
    GenMask full = ngen_ == 64 ? ~GenMask(0) : ((GenMask(1) << ngen_) - 1);
    auto it = terms_.find(full);
    return it == terms_.end() ? zero_ : it->second;
  }

 private:
  int ngen_;
  C zero_;
  std::map<GenMask, C> terms_;
};

// exp(q) for q homogeneous of degree 2: the monomials commute and square to zero, so
// exp(q) = prod_k (1 + c_k m_k).
template <typename C>
GrassmannElement<C> exp_quadratic(const GrassmannElement<C>& q, const C& one) {
  if (!q.is_homogeneous_quadratic()) throw Error(ErrorKind::NotQuadratic, "exponent must be homogeneous of degree 2");
  GrassmannElement<C> r = GrassmannElement<C>::scalar(q.ngen(), one, q.zero());
  for (const auto& [m, c] : q.terms()) {
    GrassmannElement<C> f = GrassmannElement<C>::scalar(q.ngen(), one, q.zero());
    f.add(m, c);
    r = r * f;
  }
  return r;
}

// Top-form coefficient with the measure order: the monomial g_{order[0]} ... g_{order[n-1]}
// integrates to 1.
template <typename C>
C berezin(const GrassmannElement<C>& el, const std::vector<int>& order) {
  std::vector<char> seen(el.ngen(), 0);
  if (static_cast<int>(order.size()) != el.ngen())
    throw Error(ErrorKind::IncompleteOrder, "measure must list every generator once");
  for (int g : order) {
    if (g < 0 || g >= el.ngen() || seen[g]) throw Error(ErrorKind::IncompleteOrder, "measure must list every generator once");
    seen[g] = 1;
  }
  C top = el.top_coefficient();
  return permutation_sign(order) > 0 ? top : -top;
}

// One quadratic piece c * g_a g_b of an action.
template <typename C>
struct QuadTerm {
  int a, b;
  C coeff;
};

// Top coefficient of exp(sum of terms), staged factor by factor. Monomials that can no longer
// reach the full mask are dropped. `parallel` selects the OpenMP kernel; the serial path is
// the reference implementation.
Rational staged_top(int ngen, const std::vector<QuadTerm<Rational>>& terms, bool parallel);
SparsePoly staged_top(int ngen, const std::vector<QuadTerm<SparsePoly>>& terms, const SparsePoly& one, bool parallel);

struct StagedStats {
  size_t peak_terms = 0;
};
StagedStats last_staged_stats();

// Fermionic representations of the loop polynomial. X_alpha = sqrt(Y_s Y_t) is carried as a
// monomial with doubled exponents; the result is halved at the end.
struct GrassmannOptions {
  bool parallel = true;
  int max_generators = 24;
};

// Real form: generators psi_h, one per half-edge; measure per edge (psi_s, psi_t); corner
// monomial psi_t psi_s (see grassmann.cpp).
SparsePoly z_f(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt = {});
// Complex form: psi_h and psibar_h; measure per edge (psi_s, psibar_s, psi_t, psibar_t).
SparsePoly z_f_complex(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt = {});
// Doubled form: psi, eta, psibar, etabar per half-edge, measure (psi, eta, psibar, etabar).
SparsePoly z_f_squared(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt = {});

// Generator counts for the three forms.
inline int z_f_generators(const PlanarGraph& g) { return 2 * g.num_edges(); }
inline int z_f_complex_generators(const PlanarGraph& g) { return 4 * g.num_edges(); }
inline int z_f_squared_generators(const PlanarGraph& g) { return 8 * g.num_edges(); }

}  // namespace duality
