#include <gtest/gtest.h>

#include "duality/grassmann.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/pfaffian.hpp"

using namespace duality;

namespace {

// Loop polynomial straight from the even-subgraph list.
SparsePoly loop_oracle(const PlanarGraph& g) {
  SparsePoly p(g.num_edges());
  for (EdgeMask m : enumerate_even_subgraphs(g)) {
    Exponents e(g.num_edges(), 0);
    for (int i = 0; i < g.num_edges(); ++i) e[i] = (m >> i) & 1;
    p = p + SparsePoly::monomial(e, 1);
  }
  return p;
}

using RElem = GrassmannElement<Rational>;

}  // namespace

TEST(GrassmannElement, AnticommutesAndSquaresToZero) {
  RElem a = RElem::quadratic(2, 0, 1, 1, 0);
  RElem b = RElem::quadratic(2, 1, 0, 1, 0);
  EXPECT_EQ((a + b).size(), 0u);
  RElem p1(3, 0), p2(3, 0);
  p1.add(1, 1);
  p2.add(2, 1);
  EXPECT_EQ((p1 * p1).size(), 0u);
  auto ab = p1 * p2, ba = p2 * p1;
  EXPECT_EQ(ab.terms().at(3), 1);
  EXPECT_EQ(ba.terms().at(3), -1);
}

TEST(ExpQuadratic, Nilpotent) {
  auto e = exp_quadratic(RElem::quadratic(2, 0, 1, 1, 0), Rational(1));
  EXPECT_EQ(e.size(), 2u);
  EXPECT_EQ(e.terms().at(0), 1);
  EXPECT_EQ(e.terms().at(3), 1);
}

TEST(ExpQuadratic, TwoBlocks) {
  Rational a(2, 3), b(-5, 7);
  auto q = RElem::quadratic(4, 0, 1, a, 0) + RElem::quadratic(4, 2, 3, b, 0);
  EXPECT_EQ(exp_quadratic(q, Rational(1)).top_coefficient(), a * b);
}

TEST(ExpQuadratic, RejectsNonQuadratic) {
  RElem q(2, 0);
  q.add(1, 1);
  EXPECT_THROW(exp_quadratic(q, Rational(1)), Error);
}

TEST(Berezin, Examples) {
  // generators s = 0, t = 1; measure order (t, s)
  RElem ts = RElem::quadratic(2, 1, 0, 1, 0);
  RElem st = RElem::quadratic(2, 0, 1, 1, 0);
  EXPECT_EQ(berezin(ts, {1, 0}), 1);
  EXPECT_EQ(berezin(st, {1, 0}), -1);
  EXPECT_EQ(berezin(RElem::scalar(2, 1, 0), {1, 0}), 0);
  EXPECT_THROW(berezin(ts, {1}), Error);
  EXPECT_THROW(berezin(ts, {1, 1}), Error);
}

TEST(Berezin, GaussianIsPfaffian) {
  RationalSampler rng(7);
  for (int n = 2; n <= 10; n += 2) {
    for (int trial = 0; trial < 3; ++trial) {
      SkewMatrix<Rational> m(n, Rational(0));
      RElem q(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Rational v = rng.next(5);
          m.set(i, j, v);
          q = q + RElem::quadratic(n, i, j, v, 0);  // half of psi^T M psi
        }
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      EXPECT_EQ(berezin(exp_quadratic(q, Rational(1)), order), pfaffian(m)) << n;
    }
  }
}

TEST(StagedTop, MatchesFullExpansion) {
  RationalSampler rng(11);
  for (int n = 2; n <= 12; n += 2) {
    std::vector<QuadTerm<Rational>> terms;
    RElem q(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng.engine()() % 3 == 0) {
          Rational v = rng.next(4);
          terms.push_back({i, j, v});
          q = q + RElem::quadratic(n, i, j, v, 0);
        }
    Rational full = exp_quadratic(q, Rational(1)).top_coefficient();
    EXPECT_EQ(staged_top(n, terms, false), full);
    EXPECT_EQ(staged_top(n, terms, true), full);
  }
}

TEST(ZF, ThetaExample) {
  auto g = generate("theta");
  auto z = z_f(g, make_kasteleyn(g));
  EXPECT_EQ(z.to_string(g.variable_names()), "1 + Y1*Y2 + Y1*Y3 + Y2*Y3");
}

TEST(ZF, EqualsLoopPolynomial) {
  for (const char* name : {"theta", "k4", "prism3", "cube"}) {
    auto g = generate(name);
    for (int outer = 0; outer < g.num_faces(); ++outer)
      EXPECT_EQ(z_f(g, make_kasteleyn(g, outer)), loop_oracle(g)) << name << " outer " << outer;
  }
}

TEST(ZF, K4Uniform) {
  auto g = generate("k4");
  SparsePoly z = z_f(g, make_kasteleyn(g));
  std::vector<Rational> pt(6, Rational(1, 3));
  Rational y(1, 3);
  EXPECT_EQ(z.evaluate(pt), 1 + 4 * y * y * y + 3 * y * y * y * y);
}

TEST(ZF, NonKasteleynGivesNegativeLoop) {
  auto g = generate("theta");
  auto o = make_kasteleyn(g);
  o[0] ^= 1;
  auto z = z_f(g, o);
  bool negative = false;
  for (const auto& [e, c] : z.terms()) negative |= c == -1;
  EXPECT_TRUE(negative);
  EXPECT_NE(z, loop_oracle(g));
}

TEST(ZF, ClassInvariantUnderVertexFlips) {
  auto g = generate("prism3");
  auto o = make_kasteleyn(g);
  auto ref = z_f(g, o);
  for (int v = 0; v < g.num_vertices(); ++v) EXPECT_EQ(z_f(g, vertex_flip(g, o, v)), ref);
}

TEST(ZF, SizeLimit) {
  auto g = generate("dodecahedron");
  EXPECT_THROW(z_f(g, make_kasteleyn(g)), Error);
}

TEST(ZFComplex, MatchesRealForm) {
  for (const char* name : {"theta", "k4"}) {
    auto g = generate(name);
    auto o = make_kasteleyn(g);
    EXPECT_EQ(z_f_complex(g, o), z_f(g, o)) << name;
  }
}

TEST(ZFSquared, ThetaIsSquare) {
  auto g = generate("theta");
  auto o = make_kasteleyn(g);
  auto z = z_f(g, o);
  EXPECT_EQ(z_f_squared(g, o), z * z);
}

TEST(ZFSquared, SizeLimit) {
  auto g = generate("k4");
  EXPECT_THROW(z_f_squared(g, make_kasteleyn(g)), Error);
}

TEST(StagedTop, ParallelMatchesSerialOnGraphs) {
  auto g = generate("cube");
  auto o = make_kasteleyn(g);
  GrassmannOptions serial{false, 24}, par{true, 24};
  EXPECT_EQ(z_f(g, o, serial), z_f(g, o, par));
  EXPECT_GT(last_staged_stats().peak_terms, 0u);
}
