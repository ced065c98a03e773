#include "duality/wigner.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace duality {

bool triangle_ok(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  return c <= a + b && a <= b + c && b <= a + c;
}

namespace {

bool m_ok(int tj, int tm) { return tm >= -tj && tm <= tj && (tj - tm) % 2 == 0; }

// Racah triangle coefficient as prime powers: (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
void add_triangle(PrimePowers& pp, int ta, int tb, int tc) {
  add_factorial_powers(pp, (ta + tb - tc) / 2, 1);
  add_factorial_powers(pp, (ta - tb + tc) / 2, 1);
  add_factorial_powers(pp, (-ta + tb + tc) / 2, 1);
  add_factorial_powers(pp, (ta + tb + tc) / 2 + 1, -1);
}

Rational inv_fact_product(std::initializer_list<int> args) {
  Integer den = 1;
  for (int a : args) den *= factorial(static_cast<unsigned>(a));
  return Rational(Integer(1), den);
}

}  // namespace

QSqrt three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (!triangle_ok(tj1, tj2, tj3)) return QSqrt();
  if (!m_ok(tj1, tm1) || !m_ok(tj2, tm2) || !m_ok(tj3, tm3)) return QSqrt();
  if (tm1 + tm2 + tm3 != 0) return QSqrt();
  // integer arguments of the Racah sum
  const int j1pm1 = (tj1 + tm1) / 2, j1mm1 = (tj1 - tm1) / 2;
  const int j2pm2 = (tj2 + tm2) / 2, j2mm2 = (tj2 - tm2) / 2;
  const int j3pm3 = (tj3 + tm3) / 2, j3mm3 = (tj3 - tm3) / 2;
  const int a = (tj3 - tj2 + tm1) / 2, b = (tj3 - tj1 - tm2) / 2, c = (tj1 + tj2 - tj3) / 2;
  Rational sum = 0;
  for (int k = std::max({0, -a, -b}); k <= std::min({c, j1mm1, j2pm2}); ++k) {
    Rational term = inv_fact_product({k, a + k, b + k, c - k, j1mm1 - k, j2pm2 - k});
    sum += (k % 2 == 0) ? term : Rational(-term);
  }
  if (sum == 0) return QSqrt();
  PrimePowers pp;
  add_triangle(pp, tj1, tj2, tj3);
  for (int f : {j1pm1, j1mm1, j2pm2, j2mm2, j3pm3, j3mm3}) add_factorial_powers(pp, f, 1);
  const int sgn = phase(tj1 - tj2 - tm3);
  return QSqrt::from_powers(sgn > 0 ? sum : Rational(-sum), pp);
}

QSqrt six_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  const int t1 = tj1 + tj2 + tj3, t2 = tj1 + tj5 + tj6, t3 = tj4 + tj2 + tj6, t4 = tj4 + tj5 + tj3;
  if (!triangle_ok(tj1, tj2, tj3) || !triangle_ok(tj1, tj5, tj6) || !triangle_ok(tj4, tj2, tj6) ||
      !triangle_ok(tj4, tj5, tj3))
    return QSqrt();
  const int u1 = tj1 + tj2 + tj4 + tj5, u2 = tj2 + tj3 + tj5 + tj6, u3 = tj3 + tj1 + tj6 + tj4;
  Rational sum = 0;
  for (int t = std::max({t1, t2, t3, t4}) / 2; t <= std::min({u1, u2, u3}) / 2; ++t) {
    Rational term = inv_fact_product({t - t1 / 2, t - t2 / 2, t - t3 / 2, t - t4 / 2, u1 / 2 - t, u2 / 2 - t, u3 / 2 - t});
    term *= factorial(static_cast<unsigned>(t + 1));
    sum += (t % 2 == 0) ? term : Rational(-term);
  }
  if (sum == 0) return QSqrt();
  PrimePowers pp;
  add_triangle(pp, tj1, tj2, tj3);
  add_triangle(pp, tj1, tj5, tj6);
  add_triangle(pp, tj4, tj2, tj6);
  add_triangle(pp, tj4, tj5, tj3);
  return QSqrt::from_powers(sum, pp);
}

RadicalSum six_j_contraction(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  RadicalSum total;
  const int js[6] = {tj1, tj2, tj3, tj4, tj5, tj6};
  // m1, m2 fix m3; m5 fixes m6 and m4
  for (int m1 = -tj1; m1 <= tj1; m1 += 2)
    for (int m2 = -tj2; m2 <= tj2; m2 += 2) {
      const int m3 = -m1 - m2;
      if (!m_ok(tj3, m3)) continue;
      QSqrt a = three_j(tj1, tj2, tj3, m1, m2, m3);
      if (a.is_zero()) continue;
      for (int m5 = -tj5; m5 <= tj5; m5 += 2) {
        const int m6 = m1 + m5, m4 = m5 - m3;
        if (!m_ok(tj6, m6) || !m_ok(tj4, m4)) continue;
        QSqrt b = three_j(tj1, tj5, tj6, -m1, -m5, m6);
        QSqrt c = three_j(tj3, tj4, tj5, -m3, -m4, m5);
        QSqrt d = three_j(tj2, tj6, tj4, -m2, -m6, m4);
        if (b.is_zero() || c.is_zero() || d.is_zero()) continue;
        const int ms[6] = {m1, m2, m3, m4, m5, m6};
        int ph = 0;
        for (int i = 0; i < 6; ++i) ph += js[i] - ms[i];
        QSqrt prod = a * b * c * d;
        total += phase(ph) > 0 ? prod : -prod;
      }
    }
  return total;
}

Integer theta_delta(int tj1, int tj2, int tj3) {
  if (!triangle_ok(tj1, tj2, tj3)) return 0;
  Integer num = factorial((tj1 + tj2 + tj3) / 2 + 1);
  Integer den = factorial((tj1 + tj2 - tj3) / 2) * factorial((tj1 + tj3 - tj2) / 2) * factorial((tj2 + tj3 - tj1) / 2);
  return num / den;
}

namespace {

template <typename Key>
class DoubleCache {
 public:
  template <typename F>
  double get(const Key& k, F&& compute) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(k);
      if (it != map_.end()) return it->second;
    }
    double v = compute();
    std::unique_lock lock(mu_);
    map_.emplace(k, v);
    return v;
  }

 private:
  std::shared_mutex mu_;
  std::map<Key, double> map_;
};

}  // namespace

double three_j_double(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  static DoubleCache<std::tuple<int, int, int, int, int, int>> cache;
  return cache.get({tj1, tj2, tj3, tm1, tm2, tm3}, [&] { return three_j(tj1, tj2, tj3, tm1, tm2, tm3).to_double(); });
}

double six_j_double(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  static DoubleCache<std::tuple<int, int, int, int, int, int>> cache;
  return cache.get({tj1, tj2, tj3, tj4, tj5, tj6}, [&] { return six_j(tj1, tj2, tj3, tj4, tj5, tj6).to_double(); });
}

namespace {

std::string spins(std::initializer_list<int> tjs) {
  std::string s;
  for (int t : tjs) {
    if (!s.empty()) s += ' ';
    s += (t % 2 == 0) ? std::to_string(t / 2) : std::to_string(t) + "/2";
  }
  return s;
}

void fail(RecouplingReport& r, const std::string& what) {
  if (r.ok) r.detail = what;
  r.ok = false;
}

}  // namespace

RecouplingReport check_orthogonality(int max_tj) {
  RecouplingReport rep;
  for (int a = 0; a <= max_tj; ++a)
    for (int b = 0; b <= max_tj; ++b) {
      // sum over m1, m2 of products for (a b j; m) and (a b j'; m')
      for (int j = std::abs(a - b); j <= a + b && j <= max_tj; j += 2)
        for (int jp = std::abs(a - b); jp <= a + b && jp <= max_tj; jp += 2)
          for (int m = -j; m <= j; m += 2)
            for (int mp = -jp; mp <= jp; mp += 2) {
              RadicalSum plain, signed_sum;
              for (int m1 = -a; m1 <= a; m1 += 2)
                for (int m2 = -b; m2 <= b; m2 += 2) {
                  QSqrt x = three_j(a, b, j, m1, m2, m) * three_j(a, b, jp, m1, m2, mp);
                  plain += x;
                  // signed relation: (b a j; -m2 -m1 -m) against (a b j'; m1 m2 m')
                  QSqrt y = three_j(b, a, j, -m2, -m1, -m) * three_j(a, b, jp, m1, m2, mp);
                  int ph = (a - m1) + (b - m2) + (j - m) + (a + b + jp);
                  signed_sum += phase(ph) > 0 ? y : -y;
                }
              RadicalSum expect;
              if (j == jp && m == mp) expect += QSqrt(Rational(1, j + 1));
              ++rep.cases;
              if (plain != expect) fail(rep, "orthogonality (" + spins({a, b, j}) + ") vs (" + spins({a, b, jp}) + ")");
              if (signed_sum != expect) fail(rep, "signed orthogonality (" + spins({a, b, j, jp}) + ")");
            }
      // completeness
      for (int m1 = -a; m1 <= a; m1 += 2)
        for (int m2 = -b; m2 <= b; m2 += 2)
          for (int m1p = -a; m1p <= a; m1p += 2)
            for (int m2p = -b; m2p <= b; m2p += 2) {
              RadicalSum s;
              for (int j = std::abs(a - b); j <= a + b; j += 2)
                for (int m = -j; m <= j; m += 2) {
                  QSqrt x = three_j(a, b, j, m1, m2, m) * three_j(a, b, j, m1p, m2p, m);
                  RadicalSum t(x);
                  t *= Rational(j + 1);
                  s += t;
                }
              RadicalSum expect;
              if (m1 == m1p && m2 == m2p) expect += QSqrt(Rational(1));
              ++rep.cases;
              if (s != expect) fail(rep, "completeness (" + spins({a, b}) + ")");
            }
    }
  return rep;
}

RecouplingReport check_whitehead(int tj1, int tj2, int tj3, int tj, int tj12, bool with_sign) {
  RecouplingReport rep;
  const int ph_global = (with_sign ? 2 * tj1 : 0) + (tj1 + tj2 + tj3 + tj);
  if ((tj1 + tj2 + tj3 + tj) % 2 != 0) return rep;
  for (int m1 = -tj1; m1 <= tj1; m1 += 2)
    for (int m2 = -tj2; m2 <= tj2; m2 += 2)
      for (int m3 = -tj3; m3 <= tj3; m3 += 2)
        for (int m = -tj; m <= tj; m += 2) {
          RadicalSum lhs;
          for (int m12 = -tj12; m12 <= tj12; m12 += 2) {
            QSqrt x = three_j(tj1, tj12, tj2, m1, m12, m2) * three_j(tj12, tj, tj3, -m12, m, m3);
            lhs += phase(tj12 - m12) > 0 ? x : -x;
          }
          RadicalSum rhs;
          for (int tj23 = 0; tj23 <= tj1 + tj + tj2 + tj3; ++tj23) {
            QSqrt w = six_j(tj1, tj2, tj12, tj3, tj, tj23);
            if (w.is_zero()) continue;
            RadicalSum inner;
            for (int m23 = -tj23; m23 <= tj23; m23 += 2) {
              QSqrt x = three_j(tj1, tj, tj23, m1, m, -m23) * three_j(tj2, tj23, tj3, m2, m23, m3);
              inner += phase(tj23 - m23) > 0 ? x : -x;
            }
            if (inner.is_zero()) continue;
            RadicalSum term = inner * w;
            term *= Rational(tj23 + 1);
            rhs += term;
          }
          if (phase(ph_global) < 0) rhs *= Rational(-1);
          ++rep.cases;
          if (lhs != rhs)
            fail(rep, "j1 j2 j3 j j12 = " + spins({tj1, tj2, tj3, tj, tj12}) + ", m = " + spins({m1, m2, m3, m}));
        }
  return rep;
}

RecouplingReport check_whitehead_all(int max_tj, bool with_sign) {
  RecouplingReport rep;
  for (int a = 0; a <= max_tj; ++a)
    for (int b = 0; b <= max_tj; ++b)
      for (int c = 0; c <= max_tj; ++c)
        for (int d = 0; d <= max_tj; ++d)
          for (int e = 0; e <= max_tj; ++e) {
            auto r = check_whitehead(a, b, c, d, e, with_sign);
            rep.cases += r.cases;
            if (!r.ok) fail(rep, r.detail);
          }
  return rep;
}

}  // namespace duality
