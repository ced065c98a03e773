#include <gtest/gtest.h>

#include <cmath>

#include "duality/errors.hpp"
#include "duality/ising.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/spinnet.hpp"
#include "duality/wigner.hpp"

using namespace duality;

namespace {

// theta whose third edge carries a bubble: u -j- x =(j1, j2)= y -j'- v
const char* kBubble = R"(vertex 1 2 1 0
vertex 2 3 4 5
vertex 3 7 6 8
vertex 4 9 10 11
edge 1 0 3
edge 2 2 5
edge 3 1 6
edge 4 7 10
edge 5 8 11
edge 6 9 4
)";
const char* kTheta = R"(vertex 1 2 1 0
vertex 2 3 4 5
edge 1 0 3
edge 2 2 5
edge 3 1 4
)";

std::vector<Coloring> colorings(const PlanarGraph& g, int max_color) {
  std::vector<Coloring> out;
  Coloring c(g.num_edges(), 0);
  while (true) {
    if (is_admissible(g, c)) out.push_back(c);
    size_t i = 0;
    while (i < c.size() && ++c[i] > max_color) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

// Oracle: loop count of a curve colouring (edges with colour 1).
int curve_loops(const PlanarGraph& g, const Coloring& c) {
  EdgeMask m = 0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (c[e] == 1) m |= EdgeMask(1) << e;
  return component_count(g, m);
}

}  // namespace

TEST(Coloring, Admissibility) {
  auto g = generate("theta");
  EXPECT_TRUE(is_admissible(g, {1, 1, 0}));
  EXPECT_FALSE(is_admissible(g, {1, 1, 1}));
  EXPECT_FALSE(is_admissible(g, {4, 1, 1}));
  EXPECT_THROW(evaluate_tensor(g, make_kasteleyn(g), {1, 1, 1}), Error);
}

TEST(Tensor, ThetaHalfHalfZero) {
  auto g = generate("theta");
  auto o = make_kasteleyn(g);
  auto s = evaluate_tensor(g, o, {1, 1, 0});
  EXPECT_NEAR(s.value, -1.0, 1e-14);
  EXPECT_EQ(evaluate_tensor_exact(g, o, {1, 1, 0}), RadicalSum(QSqrt(Rational(-1))));
  EXPECT_NEAR(to_integral(s, g, {1, 1, 0}).value, -2.0, 1e-13);
}

TEST(Tensor, AllZeroIsOne) {
  for (const char* name : {"theta", "k4", "cube"}) {
    auto g = generate(name);
    EXPECT_NEAR(evaluate_tensor(g, make_kasteleyn(g), Coloring(g.num_edges(), 0)).value, 1.0, 1e-14);
  }
}

TEST(Tensor, FloatMatchesExact) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  for (const auto& c : colorings(g, 2)) {
    auto f = evaluate_tensor(g, o, c);
    double exact = evaluate_tensor_exact(g, o, c).to_double();
    EXPECT_NEAR(f.value, exact, f.error + 1e-15);
    EXPECT_LT(f.error, 1e-9);
  }
}

TEST(Tensor, EdgeFlipSign) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  for (const auto& c : colorings(g, 2))
    for (int e = 0; e < g.num_edges(); ++e) {
      auto f = o;
      f[e] ^= 1;
      double expect = (c[e] % 2 ? -1 : 1) * evaluate_tensor(g, o, c).value;
      EXPECT_NEAR(evaluate_tensor(g, f, c).value, expect, 1e-12);
    }
}

TEST(Tensor, ClassInvariance) {
  for (const char* name : {"theta", "k4"}) {
    auto g = generate(name);
    auto o = make_kasteleyn(g);
    for (const auto& c : colorings(g, 2))
      for (int v = 0; v < g.num_vertices(); ++v)
        EXPECT_NEAR(evaluate_tensor(g, vertex_flip(g, o, v), c).value, evaluate_tensor(g, o, c).value, 1e-12);
  }
}

TEST(Normalization, ThetaIntegralAndUnitary) {
  auto g = generate("theta");
  auto o = make_kasteleyn(g);
  for (const auto& c : colorings(g, 5)) {
    int J = (c[0] + c[1] + c[2]) / 2;
    double delta = to_double(Rational(theta_delta(c[0], c[1], c[2])));
    EXPECT_NEAR(evaluate(g, o, c, Normalization::Integral).value, (J % 2 ? -1 : 1) * delta, 1e-9 * delta);
    EXPECT_NEAR(evaluate(g, o, c, Normalization::Unitary).value, 1.0, 1e-12);
  }
}

TEST(Normalization, CurveColoringsGiveMinusTwoPowers) {
  for (const char* name : {"k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto o = make_kasteleyn(g);
    for (const auto& c : colorings(g, 1)) {
      int k = curve_loops(g, c);
      EXPECT_NEAR(evaluate(g, o, c, Normalization::Integral).value, std::pow(-2.0, k), 1e-10) << name;
    }
  }
}

TEST(Normalization, SkeinFactor) {
  auto g = generate("theta");
  // (1,1,0): c! = 1, angles j_alpha = 1,0,0 at each vertex
  EXPECT_EQ(skein_factor(g, {1, 1, 0}), 1);
  EXPECT_EQ(skein_factor(g, {2, 2, 2}), Rational(8, 1));
  auto o = make_kasteleyn(g);
  auto sk = evaluate(g, o, {2, 2, 2}, Normalization::Skein);
  EXPECT_NEAR(sk.value, -24.0 * 8, 1e-9);
}

TEST(Normalization, UnitaryUndefinedForOddTotal) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  // a triangle of K4 as a curve colouring has three odd edges
  for (const auto& c : colorings(g, 1)) {
    int sum = 0;
    for (int x : c) sum += x;
    if (sum % 2) {
      EXPECT_THROW(evaluate(g, o, c, Normalization::Unitary), Error);
      return;
    }
  }
  FAIL() << "no odd curve colouring found";
}

TEST(Series, ThetaCoefficients) {
  auto g = generate("theta");
  auto z = z_spin_series(g, 6);
  EXPECT_EQ(z.coeff({1, 1, 0}), -2);
  EXPECT_EQ(z.coeff({2, 2, 0}), 3);
  EXPECT_EQ(z.coeff({1, 1, 1}), 0);
  EXPECT_EQ(z.coeff({2, 1, 1}), Rational(theta_delta(2, 1, 1)));  // J = 2
}

TEST(Series, WestburyAndIntegrality) {
  for (const char* name : {"theta", "k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto z = z_spin_series(g, 8);
    SparsePoly p = p_gamma(g);
    SparsePoly prod = z.poly.mul_truncated(p, 8).mul_truncated(p, 8);
    EXPECT_EQ(prod, SparsePoly::constant(g.num_edges(), 1)) << name;
    for (const auto& [e, c] : z.poly.terms()) EXPECT_TRUE(is_integer(c)) << name;
  }
}

TEST(Comparison, ThetaUpToFour) {
  auto g = generate("theta");
  auto r = verify_comparison_theorem(g, make_kasteleyn(g), 4);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.only_if_detected);
  EXPECT_GT(r.colorings, 10);
}

TEST(Comparison, K4UpToTwo) {
  auto g = generate("k4");
  auto r = verify_comparison_theorem(g, make_kasteleyn(g), 2);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.only_if_detected);
  // all spins 1 is the 6j-type colouring
  auto s = evaluate(g, make_kasteleyn(g), Coloring(6, 2), Normalization::Integral);
  EXPECT_NEAR(s.value, to_double(z_spin_series(g, 12, Coloring(6, 2)).coeff({2, 2, 2, 2, 2, 2})), 1e-9);
}

TEST(Comparison, NonKasteleynMismatch) {
  auto g = generate("theta");
  auto o = make_kasteleyn(g);
  o[0] ^= 1;
  auto r = verify_comparison_theorem(g, o, 1, {true, 1e-9, false});
  EXPECT_FALSE(r.ok);
  bool found = false;
  for (const auto& c : r.mismatches) found |= c == Coloring{1, 1, 0} || c == Coloring{1, 0, 1} || c == Coloring{0, 1, 1};
  EXPECT_TRUE(found);
}

TEST(Comparison, ParallelMatchesSerial) {
  auto g = generate("prism3");
  auto o = make_kasteleyn(g);
  auto a = verify_comparison_theorem(g, o, 1, {false, 1e-9, false});
  auto b = verify_comparison_theorem(g, o, 1, {true, 1e-9, false});
  EXPECT_EQ(a.colorings, b.colorings);
  EXPECT_EQ(a.ok, b.ok);
  EXPECT_EQ(a.max_error, b.max_error);
}

TEST(Whitehead, K4MoveShape) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  auto w = whitehead_move(g, o, 0);
  EXPECT_TRUE(is_kasteleyn(w.graph, w.orientation).ok);
  std::vector<size_t> sizes;
  for (int f = 0; f < w.graph.num_faces(); ++f) sizes.push_back(w.graph.face(f).size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<size_t>{2, 2, 4, 4}));
}

TEST(Whitehead, DoubleMoveIsomorphic) {
  for (const char* name : {"k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto o = make_kasteleyn(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      WhiteheadResult w1 = [&] {
        try {
          return std::optional<WhiteheadResult>(whitehead_move(g, o, e));
        } catch (const Error&) {
          return std::optional<WhiteheadResult>();
        }
      }().value_or(WhiteheadResult{g, o, -1, -1, -1, -1, -1});
      if (w1.edge < 0) continue;
      auto w2 = whitehead_move(w1.graph, w1.orientation, e);
      EXPECT_EQ(embedding_code(w2.graph), embedding_code(g)) << name << " edge " << e;
      EXPECT_TRUE(is_kasteleyn(w2.graph, w2.orientation).ok);
    }
  }
}

TEST(Whitehead, ThetaRejected) {
  auto g = generate("theta");
  EXPECT_THROW(whitehead_move(g, make_kasteleyn(g), 0), Error);
}

TEST(Whitehead, RecouplingIdentityOnEvaluations) {
  for (const char* name : {"k4", "prism3"}) {
    auto g = generate(name);
    auto o = make_kasteleyn(g);
    auto w = whitehead_move(g, o, 0);
    for (const auto& c : colorings(g, 2)) {
      double lhs = evaluate_tensor(g, o, c).value;
      int t1 = c[w.j1_edge], t2 = c[w.j2_edge], t3 = c[w.j3_edge], tj = c[w.j_edge], t12 = c[w.edge];
      double rhs = 0;
      for (int t23 = 0; t23 <= t1 + tj; ++t23) {
        Coloring c2 = c;
        c2[w.edge] = t23;
        if (!is_admissible(w.graph, c2)) continue;
        rhs += (t23 + 1) * phase(t1 + t2 + t3 + tj) * six_j_double(t1, t2, t12, t3, tj, t23) *
               evaluate_tensor(w.graph, w.orientation, c2).value;
      }
      EXPECT_NEAR(lhs, rhs, 1e-10) << name;
    }
  }
}

TEST(Bubble, UnzipRelation) {
  auto g = load_graph(kBubble);
  auto t = load_graph(kTheta);
  auto o = make_kasteleyn(g), ot = make_kasteleyn(t);
  auto reversed = o;
  reversed[3] ^= 1;
  reversed[4] ^= 1;
  int checked = 0;
  for (const auto& c : colorings(g, 3)) {
    const int a = c[0], b = c[1], j = c[2], j1 = c[3], j2 = c[4], jp = c[5];
    Coloring ct{a, b, j};
    double st = is_admissible(t, ct) ? evaluate_tensor(t, ot, ct).value : 0;
    double base = j == jp ? phase(j1 + j2 + j) * st / (j + 1) : 0;
    EXPECT_NEAR(evaluate_tensor(g, o, c).value, phase(2 * j) * base, 1e-12);
    EXPECT_NEAR(evaluate_tensor(g, reversed, c).value, base, 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Bubble, SeriesAgreesWithTensor) {
  auto g = load_graph(kBubble);
  auto o = make_kasteleyn(g);
  auto z = z_spin_series(g, 18, Coloring(6, 3));
  for (const auto& c : colorings(g, 3))
    EXPECT_NEAR(evaluate(g, o, c, Normalization::Integral).value, to_double(z.coeff(Exponents(c.begin(), c.end()))),
                1e-8);
}
