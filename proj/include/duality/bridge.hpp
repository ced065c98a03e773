#pragma once

#include <string>
#include <vector>

#include "duality/graph.hpp"
#include "duality/poly.hpp"
#include "duality/qsqrt.hpp"
#include "duality/rational.hpp"

namespace duality {

// X per angle, indexed like g.angles().
struct AngleCouplings {
  std::vector<Angle> angles;
  std::vector<QSqrt> X;
};

// X_alpha = sqrt(Y_s Y_t). Requires Y_e >= 0 (Domain otherwise).
AngleCouplings edges_to_angles(const PlanarGraph& g, const std::vector<Rational>& Y);
// Y_e from the six angles at the two ends of e. Throws ZeroCouplingDivision on a zero divisor,
// Domain when the result is not of the form q*sqrt(r).
std::vector<QSqrt> angles_to_edges(const PlanarGraph& g, const AngleCouplings& X);

// Index into g.angles() of the angle at v between half-edges a and b (either order).
int angle_index(const PlanarGraph& g, int v, int a, int b);

struct LoopProductReport {
  bool ok = true;
  long cycles = 0;
  std::vector<EdgeMask> failures;
};

// prod_{alpha in L} X_alpha == prod_{e in L} Y_e for every simple cycle L.
LoopProductReport check_loop_products(const PlanarGraph& g, const std::vector<Rational>& Y, const AngleCouplings& X);

struct FundamentalReport {
  Rational p;               // P(Y), equal to the normalized Ising partition function
  Rational z_spin_exact;    // 1/P^2
  bool exact_ok = false;    // P^2 * z_spin_exact == 1
  bool ising_checked = false;
  bool ising_ok = false;    // brute-force Ising sum equals P
  int degree = 0;           // series truncation D
  double series_sum = 0;    // sum of graded series coefficients up to D
  double tail_bound = 0;    // geometric estimate of the omitted tail
  bool series_converged = false;
  bool series_ok = false;   // |P^2 * series_sum - 1| within P^2 * tail_bound (plus rounding)
  bool ok() const { return exact_ok && (!ising_checked || ising_ok) && (!series_converged || series_ok); }
};

// Throws SingularCoupling when P(Y) = 0.
FundamentalReport verify_fundamental_equality(const PlanarGraph& g, const std::vector<Rational>& Y, int D = 30);

// <2j_e> = -2 Y_e d_{Y_e} P / P. Throws SingularCoupling when P(Y) = 0.
Rational mean_color(const PlanarGraph& g, const std::vector<Rational>& Y, int e);

struct BridgeCheck {
  Rational lhs, rhs;
  bool ok = false;
};

// <j_e> from the spin side against (Y^2 - Y g_e)/(1 - Y^2) from the Ising side.
BridgeCheck verify_mean_spin_bridge(const PlanarGraph& g, const std::vector<Rational>& Y, int e);
// (1 - Y^2)/2 * d_{Y_e} ln Z^spin against Y_e - g_e.
BridgeCheck verify_first_derivative(const PlanarGraph& g, const std::vector<Rational>& Y, int e);

struct PathCorrelationReport {
  std::vector<int> vertices;  // v_0 .. v_n along the path
  double ising_cut_sum = 0;   // sum over cuts of signed products of <s s>
  double spin_cut_sum = 0;    // -2^{n-1}/prod sinh 2y times the cut sum of color moments
  double ising_cumulant = 0;  // joint cumulant of the edge energies s_{v_{i-1}} s_{v_i}
  double spin_cumulant = 0;   // -2^{n-1}/prod sinh 2y times the joint cumulant of the colors
  double cut_sum_error = 0;
  double cumulant_error = 0;
  bool cut_sum_ok = false;
  bool cumulant_ok = false;
};

// Path given by its edges in order. For a single edge the spin side carries the tanh y offset.
// Throws PathNotSimple.
PathCorrelationReport connected_path_correlation(const PlanarGraph& g, const std::vector<double>& y,
                                                 const std::vector<int>& path, double tolerance = 1e-9);

struct MomentReport {
  int order = 0;
  Rational mean_j;
  bool is_signed = false;              // <j> < 0
  Rational ratio;                      // <j>/(1+<j>)
  std::vector<Rational> kappa;         // d^n_{Y_e} ln Z^spin from P, index n (kappa[0] = 0)
  std::vector<Rational> kappa_chain;   // same through d_Y = cosh^2 d_y and d_y g = 1 - g^2
  std::vector<Rational> kappa_formula; // 2 (n-1)! (kappa_1/2)^n
  std::vector<Rational> mu;            // d^n_{Y_e} Z^spin / Z^spin from P
  std::vector<Rational> mu_formula;    // (n+1)! (kappa_1/2)^n
  std::vector<Rational> moments;       // <(2j)^n> = sum_k S(n,k) Y^k mu_k
  std::vector<Rational> moments_stirling;
  std::vector<Rational> moments_polylog;
  std::vector<Rational> moments_taylor;  // n! [t^n] 1/(1 - <j>(e^t - 1))^2
  std::vector<double> moments_partial;   // truncated sums of P(2j=k) k^n
  std::vector<Rational> probabilities;   // P(2j=n), n = 0..order
  double probability_sum = 0;            // partial sum of P(2j=k)
  std::vector<std::string> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};

// Throws SingularCoupling, Domain when |Y_e| >= 1, DivergentTail when |<j>/(1+<j>)| >= 1.
MomentReport moment_theorem(const PlanarGraph& g, const std::vector<Rational>& Y, int e, int N = 5);

// Exact sums for |z| < 1.
Rational polylog_neg(int m, const Rational& z);  // Li_{-m}(z), m >= 0
Integer stirling2(int n, int k);

}  // namespace duality
