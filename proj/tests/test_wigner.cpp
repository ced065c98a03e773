#include <gtest/gtest.h>

#include <cmath>

#include "duality/wigner.hpp"

using namespace duality;

namespace {

// Independent 3j oracle: Clebsch-Gordan coefficients by the lowering-operator recursion,
// in double precision. <j1 m1 j2 m2 | J M> built from the highest-weight state.
double cg_oracle(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  // explicit Wigner (Van der Waerden) form via lgamma-free factorials in long double
  auto f = [](int n) { return std::tgamma(static_cast<long double>(n) + 1); };
  if (tm1 + tm2 != tM) return 0;
  long double pre = std::sqrt((tJ + 1) * f((tJ + tj1 - tj2) / 2) * f((tJ - tj1 + tj2) / 2) * f((tj1 + tj2 - tJ) / 2) /
                              f((tj1 + tj2 + tJ) / 2 + 1));
  pre *= std::sqrt(f((tJ + tM) / 2) * f((tJ - tM) / 2) * f((tj1 - tm1) / 2) * f((tj1 + tm1) / 2) *
                   f((tj2 - tm2) / 2) * f((tj2 + tm2) / 2));
  long double s = 0;
  for (int k = 0; k <= 100; ++k) {
    int d[5] = {(tj1 + tj2 - tJ) / 2 - k, (tj1 - tm1) / 2 - k, (tj2 + tm2) / 2 - k, (tJ - tj2 + tm1) / 2 + k,
                (tJ - tj1 - tm2) / 2 + k};
    bool ok = true;
    for (int x : d) ok &= x >= 0;
    if (!ok) continue;
    long double den = f(k);
    for (int x : d) den *= f(x);
    s += ((k % 2) ? -1.0L : 1.0L) / den;
  }
  return static_cast<double>(pre * s);
}

double three_j_oracle(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (!triangle_ok(tj1, tj2, tj3) || tm1 + tm2 + tm3 != 0) return 0;
  double cg = cg_oracle(tj1, tm1, tj2, tm2, tj3, -tm3);
  int ph = (tj1 - tj2 - tm3) / 2;
  return ((ph % 2 == 0) ? 1.0 : -1.0) * cg / std::sqrt(tj3 + 1.0);
}

}  // namespace

TEST(ThreeJ, HalfHalfZero) {
  EXPECT_EQ(three_j(1, 1, 0, 1, -1, 0), QSqrt::sqrt_of(Rational(1, 2)));
  EXPECT_EQ(three_j(1, 1, 0, -1, 1, 0), -QSqrt::sqrt_of(Rational(1, 2)));
}

TEST(ThreeJ, SpinZeroCoupling) {
  for (int tj = 0; tj <= 6; ++tj)
    for (int tm = -tj; tm <= tj; tm += 2) {
      QSqrt expect = QSqrt::sqrt_of(Rational(1, tj + 1), phase(tj - tm));
      EXPECT_EQ(three_j(tj, tj, 0, tm, -tm, 0), expect) << tj << " " << tm;
    }
}

TEST(ThreeJ, Selection) {
  EXPECT_TRUE(three_j(2, 2, 2, 2, 0, 0).is_zero());
  EXPECT_TRUE(three_j(2, 2, 6, 0, 0, 0).is_zero());
  EXPECT_TRUE(three_j(2, 2, 2, 0, 0, 0).is_zero());  // odd J with all m = 0
}

TEST(ThreeJ, MatchesFloatingOracle) {
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      for (int c = std::abs(a - b); c <= a + b; c += 2)
        for (int m1 = -a; m1 <= a; m1 += 2)
          for (int m2 = -b; m2 <= b; m2 += 2) {
            int m3 = -m1 - m2;
            if (std::abs(m3) > c) continue;
            EXPECT_NEAR(three_j(a, b, c, m1, m2, m3).to_double(), three_j_oracle(a, b, c, m1, m2, m3), 1e-12);
          }
}

TEST(ThreeJ, Symmetries) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c) {
        if (!triangle_ok(a, b, c)) continue;
        for (int m1 = -a; m1 <= a; m1 += 2)
          for (int m2 = -b; m2 <= b; m2 += 2) {
            int m3 = -m1 - m2;
            if (std::abs(m3) > c) continue;
            QSqrt x = three_j(a, b, c, m1, m2, m3);
            int s = phase(a + b + c);
            EXPECT_EQ(three_j(b, c, a, m2, m3, m1), x);
            EXPECT_EQ(three_j(a, c, b, m1, m3, m2), s > 0 ? x : -x);
            EXPECT_EQ(three_j(a, b, c, -m1, -m2, -m3), s > 0 ? x : -x);
          }
      }
}

TEST(SixJ, Examples) {
  EXPECT_EQ(six_j(2, 2, 2, 2, 2, 2), QSqrt(Rational(1, 6)));
  EXPECT_TRUE(six_j(2, 2, 6, 2, 2, 2).is_zero());
  EXPECT_EQ(RadicalSum(six_j(1, 1, 0, 1, 1, 0)), six_j_contraction(1, 1, 0, 1, 1, 0));
}

TEST(SixJ, ContractionEqualsRacah) {
  int checked = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (int e = 0; e <= 3; ++e)
            for (int f = 0; f <= 3; ++f) {
              QSqrt r = six_j(a, b, c, d, e, f);
              if (r.is_zero()) continue;
              ++checked;
              EXPECT_EQ(six_j_contraction(a, b, c, d, e, f), RadicalSum(r));
            }
  EXPECT_GT(checked, 50);
}

TEST(SixJ, TetrahedralSymmetry) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (int e = 0; e <= 3; ++e)
            for (int f = 0; f <= 3; ++f) {
              QSqrt x = six_j(a, b, c, d, e, f);
              EXPECT_EQ(six_j(b, c, a, e, f, d), x);
              EXPECT_EQ(six_j(d, e, c, a, b, f), x);
            }
}

TEST(SixJ, DoubleCacheAgrees) {
  EXPECT_NEAR(six_j_double(2, 2, 2, 2, 2, 2), 1.0 / 6, 1e-15);
  EXPECT_NEAR(three_j_double(1, 1, 0, 1, -1, 0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(six_j_double(2, 2, 2, 2, 2, 2), 1.0 / 6, 1e-15);
}

TEST(ThetaDelta, Values) {
  EXPECT_EQ(theta_delta(1, 1, 0), 2);
  EXPECT_EQ(theta_delta(2, 2, 2), 24);
  EXPECT_EQ(theta_delta(2, 2, 6), 0);
  // (a b c; 0 0 0)^2-free check: theta evaluation = sum of squared 3j times dimensions
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c) {
        if (!triangle_ok(a, b, c)) continue;
        Integer d = theta_delta(a, b, c);
        Integer direct = factorial((a + b + c) / 2 + 1) /
                         (factorial((a + b - c) / 2) * factorial((a + c - b) / 2) * factorial((b + c - a) / 2));
        EXPECT_EQ(d, direct);
      }
}

TEST(Orthogonality, AllRelationsUpToTwo) {
  auto r = check_orthogonality(4);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GT(r.cases, 100);
}

TEST(Orthogonality, HalfHalfPattern) {
  for (int j = 0; j <= 2; j += 2)
    for (int m = -j; m <= j; m += 2) {
      RadicalSum s;
      for (int m1 = -1; m1 <= 1; m1 += 2)
        for (int m2 = -1; m2 <= 1; m2 += 2) {
          QSqrt x = three_j(1, 1, j, m1, m2, m);
          s += x * x;
        }
      EXPECT_EQ(s, RadicalSum(QSqrt(Rational(1, j + 1))));
    }
}

TEST(Orthogonality, EmptyRange) {
  auto r = check_orthogonality(-1);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.cases, 0);
}

TEST(Whitehead, AllHalf) {
  auto r = check_whitehead(1, 1, 1, 1, 0);
  EXPECT_TRUE(r.ok) << r.detail;
  r = check_whitehead(1, 1, 1, 1, 2);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Whitehead, SignFactorNeeded) {
  auto with = check_whitehead(1, 1, 2, 2, 2, true);
  auto without = check_whitehead(1, 1, 2, 2, 2, false);
  EXPECT_TRUE(with.ok) << with.detail;
  EXPECT_FALSE(without.ok);
}

TEST(Whitehead, EmptyRangeBothZero) {
  // j1 = j = 0 and j2 != j3 leave no admissible j23
  auto r = check_whitehead(0, 2, 0, 0, 2);
  EXPECT_TRUE(r.ok);
}

TEST(Whitehead, AllSpinsUpToThreeHalves) {
  auto r = check_whitehead_all(3);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GT(r.cases, 1000);
}
