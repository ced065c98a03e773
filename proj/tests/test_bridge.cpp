#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "duality/bridge.hpp"
#include "duality/errors.hpp"
#include "duality/ising.hpp"

using namespace duality;

namespace {

std::vector<Rational> uniform(const PlanarGraph& g, const Rational& y) { return std::vector<Rational>(g.num_edges(), y); }

std::vector<Rational> random_couplings(const PlanarGraph& g, unsigned long seed, bool positive) {
  RationalSampler rs(seed);
  std::vector<Rational> Y;
  for (int e = 0; e < g.num_edges(); ++e)
    Y.push_back(positive ? rs.next_positive(Rational(1, 2), 13) : rs.next(Rational(1, 2), 13));
  return Y;
}

// Oracle: ln Z with exponential weights by direct enumeration.
double log_z_exp(const PlanarGraph& g, const std::vector<double>& y) {
  double z = 0;
  for (uint64_t c = 0; c < (uint64_t(1) << g.num_vertices()); ++c) {
    double h = 0;
    for (int e = 0; e < g.num_edges(); ++e) h += (((c >> g.src(e)) & 1) == ((c >> g.dst(e)) & 1) ? 1 : -1) * y[e];
    z += std::exp(h);
  }
  return std::log(z);
}

// Oracle: mixed second derivative by central differences.
double mixed_second(const PlanarGraph& g, std::vector<double> y, int a, int b, double h = 1e-4) {
  auto at = [&](double da, double db) {
    auto z = y;
    z[a] += da;
    z[b] += db;
    return log_z_exp(g, z);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
}

}  // namespace

TEST(AngleMaps, ThetaUniform) {
  auto g = generate("theta");
  auto Y = uniform(g, Rational(1, 3));
  auto X = edges_to_angles(g, Y);
  ASSERT_EQ(X.X.size(), 6u);
  for (const auto& x : X.X) EXPECT_EQ(x, QSqrt(Rational(1, 3)));
  auto rep = check_loop_products(g, Y, X);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.cycles, 3);
}

TEST(AngleMaps, K4LoopProductsOnAllCycles) {
  auto g = generate("k4");
  for (unsigned long seed = 1; seed <= 5; ++seed) {
    auto Y = random_couplings(g, seed, true);
    auto rep = check_loop_products(g, Y, edges_to_angles(g, Y));
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.cycles, 7);
  }
}

TEST(AngleMaps, RoundTrip) {
  for (const char* name : {"theta", "k4", "prism3", "cube", "dodecahedron"}) {
    auto g = generate(name);
    auto Y = random_couplings(g, 17, true);
    auto back = angles_to_edges(g, edges_to_angles(g, Y));
    for (int e = 0; e < g.num_edges(); ++e) EXPECT_EQ(back[e], QSqrt(Y[e])) << name << " edge " << e;
  }
}

TEST(AngleMaps, IrrationalAnglesStillLoopConsistent) {
  auto g = generate("prism3");
  std::vector<Rational> Y;
  for (int e = 0; e < g.num_edges(); ++e) Y.push_back(Rational(e + 2, 11));
  auto X = edges_to_angles(g, Y);
  bool some_irrational = false;
  for (const auto& x : X.X) some_irrational |= !x.is_rational();
  EXPECT_TRUE(some_irrational);
  EXPECT_TRUE(check_loop_products(g, Y, X).ok);
}

TEST(AngleMaps, Errors) {
  auto g = generate("theta");
  auto Y = uniform(g, Rational(1, 3));
  Y[0] = 0;
  auto X = edges_to_angles(g, Y);
  try {
    angles_to_edges(g, X);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroCouplingDivision);
  }
  Y[0] = -1;
  try {
    edges_to_angles(g, Y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Fundamental, ThetaOneThird) {
  auto g = generate("theta");
  auto rep = verify_fundamental_equality(g, uniform(g, Rational(1, 3)), 30);
  EXPECT_EQ(rep.p, Rational(4, 3));
  EXPECT_EQ(rep.z_spin_exact, Rational(9, 16));
  EXPECT_TRUE(rep.exact_ok);
  EXPECT_TRUE(rep.ising_ok);
  EXPECT_TRUE(rep.series_converged);
  // 1/P^2 = sum (k+1)(-1/3)^k t^{2k}; the alternating tail past k = 15 is below 17/3^16
  EXPECT_NEAR(rep.series_sum, 9.0 / 16, 17.0 / std::pow(3.0, 16));
  EXPECT_GE(rep.tail_bound, std::abs(rep.series_sum - 9.0 / 16));
  EXPECT_TRUE(rep.series_ok);
  EXPECT_TRUE(rep.ok());
}

TEST(Fundamental, ZeroCoupling) {
  for (const char* name : {"theta", "cube"}) {
    auto g = generate(name);
    auto rep = verify_fundamental_equality(g, uniform(g, 0));
    EXPECT_EQ(rep.p, 1);
    EXPECT_EQ(rep.z_spin_exact, 1);
    EXPECT_DOUBLE_EQ(rep.series_sum, 1.0);
    EXPECT_TRUE(rep.ok());
  }
}

TEST(Fundamental, RandomCouplings) {
  for (const char* name : {"k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto Y = random_couplings(g, 5, false);
    auto rep = verify_fundamental_equality(g, Y, 30);
    EXPECT_TRUE(rep.exact_ok) << name;
    EXPECT_TRUE(rep.ising_ok) << name;
    if (rep.series_converged) EXPECT_TRUE(rep.series_ok) << name;
  }
}

TEST(Fundamental, NoRealFisherZeroOnTheta) {
  auto g = generate("theta");
  for (int k = -9; k <= 9; ++k) EXPECT_GT(verify_fundamental_equality(g, uniform(g, Rational(k, 10)), 10).p, 0);
}

TEST(Fundamental, SingularCoupling) {
  auto g = generate("theta");
  // P = 1 + Y1 Y2 + Y1 Y3 + Y2 Y3
  std::vector<Rational> Y{2, Rational(-1, 2), 0};
  try {
    verify_fundamental_equality(g, Y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularCoupling);
  }
  EXPECT_THROW(mean_color(g, Y, 0), Error);
}

TEST(MeanColor, Theta) {
  auto g = generate("theta");
  EXPECT_EQ(mean_color(g, uniform(g, Rational(1, 2)), 0), Rational(-4, 7));
  EXPECT_EQ(mean_color(g, uniform(g, 0), 1), 0);
  RationalSampler rs(3);
  for (int i = 0; i < 5; ++i) {
    Rational y = rs.next(Rational(9, 10));
    EXPECT_EQ(mean_color(g, uniform(g, y), 2), -4 * y * y / (1 + 3 * y * y));
  }
}

TEST(MeanColor, K4Uniform) {
  auto g = generate("k4");
  // P = 1 + 4Y^3 + 3Y^4; by symmetry each edge carries Y P'/(6P) of the total
  const Rational y(1, 3);
  const Rational P = 1 + 4 * y * y * y + 3 * y * y * y * y, dP = 12 * y * y + 12 * y * y * y;
  for (int e = 0; e < 6; ++e) EXPECT_EQ(mean_color(g, uniform(g, y), e), -2 * y * dP / (6 * P));
}

TEST(MeanSpinBridge, ThetaIdentity) {
  auto g = generate("theta");
  RationalSampler rs(11);
  for (int i = 0; i < 5; ++i) {
    Rational y = rs.next(Rational(9, 10));
    auto c = verify_mean_spin_bridge(g, uniform(g, y), 0);
    EXPECT_TRUE(c.ok);
    EXPECT_EQ(c.lhs, -2 * y * y / (1 + 3 * y * y));
  }
  auto c0 = verify_mean_spin_bridge(g, uniform(g, 0), 0);
  EXPECT_TRUE(c0.ok);
  EXPECT_EQ(c0.lhs, 0);
}

TEST(MeanSpinBridge, CubeAndFirstDerivative) {
  auto g = generate("cube");
  for (int e = 0; e < g.num_edges(); ++e) {
    EXPECT_TRUE(verify_mean_spin_bridge(g, uniform(g, Rational(1, 4)), e).ok) << e;
  }
  for (const char* name : {"theta", "k4", "prism3", "cube"}) {
    auto h = generate(name);
    auto Y = random_couplings(h, 23, false);
    for (int e = 0; e < h.num_edges(); ++e) {
      EXPECT_TRUE(verify_first_derivative(h, Y, e).ok) << name << " " << e;
      EXPECT_TRUE(verify_mean_spin_bridge(h, Y, e).ok) << name << " " << e;
    }
  }
}

TEST(PathCorrelation, TwoAdjacentEdgesK4) {
  auto g = generate("k4");
  std::vector<double> y(6, 0.3);
  int e1 = 0, e2 = -1;
  for (int e = 1; e < 6; ++e) {
    int a = g.src(e), b = g.dst(e);
    if ((a == g.src(0) || b == g.src(0) || a == g.dst(0) || b == g.dst(0)) && e2 < 0) e2 = e;
  }
  ASSERT_GE(e2, 0);
  auto rep = connected_path_correlation(g, y, {e1, e2});
  EXPECT_TRUE(rep.cut_sum_ok) << rep.cut_sum_error;
  EXPECT_TRUE(rep.cumulant_ok) << rep.cumulant_error;
  // for two edges the cut sum is the covariance, i.e. the mixed derivative of ln Z
  EXPECT_NEAR(rep.ising_cut_sum, mixed_second(g, y, e1, e2), 1e-6);
  EXPECT_NEAR(rep.ising_cut_sum, rep.ising_cumulant, 1e-12);
}

TEST(PathCorrelation, SingleEdgeIsMeanSpin) {
  auto g = generate("cube");
  std::vector<double> y;
  for (int e = 0; e < g.num_edges(); ++e) y.push_back(0.1 + 0.05 * e);
  for (int e : {0, 5, 11}) {
    auto rep = connected_path_correlation(g, y, {e});
    EXPECT_TRUE(rep.cut_sum_ok) << rep.cut_sum_error;
    std::vector<double> Y;
    for (double v : y) Y.push_back(std::tanh(v));
    EXPECT_NEAR(rep.ising_cut_sum, nn_correlation(g, Y, e), 1e-12);
  }
}

TEST(PathCorrelation, ZeroCoupling) {
  auto g = generate("k4");
  std::vector<double> y(6, 0.0);
  int e2 = -1;
  for (int e = 1; e < 6 && e2 < 0; ++e)
    if (g.src(e) == g.dst(0) || g.dst(e) == g.dst(0)) e2 = e;
  auto rep = connected_path_correlation(g, y, {0, e2});
  EXPECT_NEAR(rep.ising_cut_sum, 0, 1e-15);
  EXPECT_NEAR(rep.spin_cut_sum, 0, 1e-15);
}

TEST(PathCorrelation, LongerPathsCumulantForm) {
  auto g = generate("cube");
  std::vector<double> y;
  for (int e = 0; e < g.num_edges(); ++e) y.push_back(0.2 + 0.03 * e);
  // greedy simple path of three and four edges from vertex 0
  std::vector<int> path, seen{0};
  int cur = 0;
  while (path.size() < 4) {
    int next_e = -1;
    for (int e = 0; e < g.num_edges() && next_e < 0; ++e) {
      int other = g.src(e) == cur ? g.dst(e) : (g.dst(e) == cur ? g.src(e) : -1);
      if (other >= 0 && std::find(seen.begin(), seen.end(), other) == seen.end()) next_e = e;
    }
    ASSERT_GE(next_e, 0);
    cur = g.src(next_e) == cur ? g.dst(next_e) : g.src(next_e);
    seen.push_back(cur);
    path.push_back(next_e);
    if (path.size() >= 3) {
      auto rep = connected_path_correlation(g, y, path);
      EXPECT_TRUE(rep.cumulant_ok) << path.size() << " " << rep.cumulant_error;
      // interval-only cut sums miss the non-contiguous blocks of the cumulant expansion
      EXPECT_FALSE(rep.cut_sum_ok) << path.size();
      EXPECT_GT(rep.cut_sum_error, 1e-3);
    }
  }
}

TEST(PathCorrelation, NotSimple) {
  auto g = generate("theta");
  try {
    connected_path_correlation(g, std::vector<double>(3, 0.2), {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PathNotSimple);
  }
  auto c = generate("cube");
  int far = -1;
  for (int e = 1; e < c.num_edges() && far < 0; ++e) {
    int a = c.src(e), b = c.dst(e);
    if (a != c.src(0) && a != c.dst(0) && b != c.src(0) && b != c.dst(0)) far = e;
  }
  EXPECT_THROW(connected_path_correlation(c, std::vector<double>(12, 0.2), {0, far}), Error);
}

TEST(Moments, ThetaHalf) {
  auto g = generate("theta");
  auto rep = moment_theorem(g, uniform(g, Rational(1, 2)), 0, 6);
  EXPECT_EQ(rep.mean_j, Rational(-2, 7));
  EXPECT_TRUE(rep.is_signed);
  EXPECT_EQ(rep.ratio, Rational(-2, 5));
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(rep.probabilities[n], Rational(49, 25) * (n + 1) * pow(Rational(-2, 5), n));
  // Z^spin = (5/4 + Y)^-2 along the edge: <2j> = -2Y/P, <(2j)^2> = -2Y/P + 6Y^2/P^2
  EXPECT_EQ(rep.moments[1], Rational(-4, 7));
  EXPECT_EQ(rep.moments[2], Rational(-4, 49));
  EXPECT_TRUE(rep.ok()) << (rep.discrepancies.empty() ? "" : rep.discrepancies.front());
  EXPECT_NEAR(rep.probability_sum, 1.0, 1e-12);
}

TEST(Moments, ZeroMean) {
  auto g = generate("k4");
  auto Y = random_couplings(g, 2, false);
  Y[3] = 0;
  auto rep = moment_theorem(g, Y, 3, 5);
  EXPECT_EQ(rep.mean_j, 0);
  EXPECT_EQ(rep.probabilities[0], 1);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(rep.probabilities[n], 0);
    EXPECT_EQ(rep.moments_stirling[n], 0);
  }
  EXPECT_TRUE(rep.ok());
}

TEST(Moments, BothDerivativeChainsAgree) {
  for (const char* name : {"theta", "k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto Y = random_couplings(g, 31, false);
    for (int e = 0; e < g.num_edges(); e += 3) {
      auto rep = moment_theorem(g, Y, e, 5);
      EXPECT_TRUE(rep.ok()) << name << " " << e << ": "
                            << (rep.discrepancies.empty() ? "" : rep.discrepancies.front());
      EXPECT_EQ(rep.kappa[2], 2 * (rep.kappa[1] / 2) * (rep.kappa[1] / 2));
      EXPECT_EQ(rep.kappa_chain[2], rep.kappa[2]);
      EXPECT_EQ(rep.mean_j * 2, mean_color(g, Y, e));
    }
  }
}

TEST(Moments, Errors) {
  auto g = generate("theta");
  try {
    moment_theorem(g, {Rational(1, 2), 3, Rational(-1, 2)}, 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivergentTail);
  }
  EXPECT_THROW(moment_theorem(g, {1, 0, 0}, 0, 4), Error);
}

TEST(Moments, PolylogAndStirlingHelpers) {
  EXPECT_EQ(stirling2(5, 2), 15);
  EXPECT_EQ(stirling2(6, 3), 90);
  EXPECT_EQ(stirling2(4, 4), 1);
  EXPECT_EQ(stirling2(4, 0), 0);
  for (int m = 0; m <= 6; ++m) {
    const Rational z(-3, 7);
    double sum = 0, zk = 1;
    for (int k = 1; k < 400; ++k) {
      zk *= to_double(z);
      sum += std::pow(k, m) * zk;
    }
    EXPECT_NEAR(to_double(polylog_neg(m, z)), sum, 1e-12 * std::max(1.0, std::abs(sum))) << m;
  }
}
