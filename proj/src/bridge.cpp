#include "duality/bridge.hpp"

#include <cmath>
#include <map>
#include <set>

#include "duality/errors.hpp"
#include "duality/ising.hpp"

namespace duality {

namespace {

int half_at(const PlanarGraph& g, int e, int v) {
  return g.vertex(g.src_half(e)) == v ? g.src_half(e) : g.dst_half(e);
}

QSqrt inverse(const QSqrt& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroCouplingDivision, "division by a zero angle coupling");
  const Rational r(x.radicand());
  return QSqrt::sqrt_of(r, 1 / (x.rational_part() * r));
}

Rational binomial(int n, int k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

void require_unit_interval(const Rational& y) {
  if (abs(y) >= 1) throw Error(ErrorKind::Domain, "coupling must satisfy |Y| < 1");
}

Rational evaluate_nonsingular(const SparsePoly& P, const std::vector<Rational>& Y) {
  Rational p = P.evaluate(Y);
  if (p == 0) throw Error(ErrorKind::SingularCoupling, "P(Y) = 0");
  return p;
}

// Coefficients of P(Y + h u_e) / P(Y) in h.
UniPoly shifted_profile(const SparsePoly& P, const std::vector<Rational>& Y, int e, const Rational& p) {
  UniPoly a;
  for (const auto& [ex, c] : P.terms()) {
    Rational m = c;
    for (int i = 0; i < P.nvars(); ++i)
      if (i != e && ex[i]) m *= pow(Y[i], ex[i]);
    if (static_cast<int>(a.size()) <= ex[e]) a.resize(ex[e] + 1);
    a[ex[e]] += m;
  }
  UniPoly q(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    for (size_t n = 0; n <= k; ++n) q[n] += a[k] * binomial(k, n) * pow(Y[e], k - n);
  for (auto& x : q) x /= p;
  return q;
}

// ln q truncated at degree N, q[0] = 1.
UniPoly series_log(const UniPoly& q, int N) {
  auto at = [&](int i) { return i < static_cast<int>(q.size()) ? q[i] : Rational(0); };
  UniPoly l(N + 1);
  for (int n = 1; n <= N; ++n) {
    Rational acc = at(n) * n;
    for (int k = 1; k < n; ++k) acc -= l[k] * k * at(n - k);
    l[n] = acc / n;
  }
  return l;
}

// Joint cumulants over subsets of n items from subset moments m[mask].
template <typename T>
std::vector<T> cumulants_from_moments(const std::vector<T>& m, int n) {
  std::vector<T> k(m.size(), T(0));
  for (uint32_t S = 1; S < (1u << n); ++S) {
    const uint32_t first = S & (~S + 1);
    T acc = m[S];
    const uint32_t rest = S ^ first;
    for (uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const uint32_t B = sub | first;
      if (B != S) acc -= k[B] * m[S ^ B];
      if (sub == 0) break;
    }
    k[S] = acc;
  }
  return k;
}

// Sum over cuts of a path of n edges: (-1)^p prod over segments of seg(i, j), edges i..j-1.
template <typename F>
double cut_sum(int n, F seg) {
  double total = 0;
  for (uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    double term = (__builtin_popcount(cuts) % 2) ? -1.0 : 1.0;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || ((cuts >> (i - 1)) & 1)) {
        term *= seg(start, i);
        start = i;
      }
    }
    total += term;
  }
  return total;
}

std::vector<int> path_vertices(const PlanarGraph& g, const std::vector<int>& path) {
  const int n = static_cast<int>(path.size());
  if (n == 0) throw Error(ErrorKind::PathNotSimple, "empty path");
  for (int e : path)
    if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::InvalidEdge, "edge index out of range");
  std::vector<int> vs;
  int a = g.src(path[0]), b = g.dst(path[0]);
  if (n == 1) {
    vs = {a, b};
  } else {
    const int c = g.src(path[1]), d = g.dst(path[1]);
    const bool a_in = a == c || a == d, b_in = b == c || b == d;
    if (a_in == b_in) throw Error(ErrorKind::PathNotSimple, "first two edges do not form a path");
    vs = {a_in ? b : a, a_in ? a : b};
    for (int i = 1; i < n; ++i) {
      const int cur = vs.back(), s = g.src(path[i]), t = g.dst(path[i]);
      if (s != cur && t != cur) throw Error(ErrorKind::PathNotSimple, "consecutive edges are not adjacent");
      vs.push_back(s == cur ? t : s);
    }
  }
  if (std::set<int>(vs.begin(), vs.end()).size() != vs.size())
    throw Error(ErrorKind::PathNotSimple, "path revisits a vertex");
  return vs;
}

// <prod_{i in S} s_{v_{i-1}} s_{v_i}> for every subset S of path edges, by direct summation.
std::vector<double> edge_energy_moments(const PlanarGraph& g, const std::vector<double>& Y,
                                        const std::vector<int>& vs) {
  const int nv = g.num_vertices(), ne = g.num_edges(), n = static_cast<int>(vs.size()) - 1;
  if (nv > 24) throw Error(ErrorKind::SizeLimit, "direct moment sweep limited to 24 vertices");
  std::vector<double> acc(1u << n, 0.0);
  double z = 0;
  for (uint64_t cfg = 0; cfg < (uint64_t(1) << (nv - 1)); ++cfg) {
    auto s = [&](int v) { return ((cfg >> v) & 1) ? -1.0 : 1.0; };
    double w = 1;
    for (int e = 0; e < ne; ++e) w *= 1 + Y[e] * s(g.src(e)) * s(g.dst(e));
    z += w;
    for (uint32_t S = 0; S < acc.size(); ++S) {
      double prod = 1;
      for (int i = 0; i < n; ++i)
        if ((S >> i) & 1) prod *= s(vs[i]) * s(vs[i + 1]);
      acc[S] += w * prod;
    }
  }
  for (auto& x : acc) x /= z;
  return acc;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

int angle_index(const PlanarGraph& g, int v, int a, int b) {
  auto as = g.angles();
  for (size_t i = 0; i < as.size(); ++i)
    if (as[i].vertex == v && ((as[i].s_half == a && as[i].t_half == b) || (as[i].s_half == b && as[i].t_half == a)))
      return static_cast<int>(i);
  throw Error(ErrorKind::InvalidEdge, "no angle between the given half-edges");
}

AngleCouplings edges_to_angles(const PlanarGraph& g, const std::vector<Rational>& Y) {
  AngleCouplings out;
  out.angles = g.angles();
  for (const auto& a : out.angles) {
    const Rational& ys = Y[g.edge_of(a.s_half)];
    const Rational& yt = Y[g.edge_of(a.t_half)];
    if (ys < 0 || yt < 0) throw Error(ErrorKind::Domain, "angle map needs nonnegative edge couplings");
    out.X.push_back(QSqrt::sqrt_of(ys * yt));
  }
  return out;
}

std::vector<QSqrt> angles_to_edges(const PlanarGraph& g, const AngleCouplings& X) {
  std::map<std::pair<int, int>, int> index;
  for (size_t i = 0; i < X.angles.size(); ++i) {
    const auto& a = X.angles[i];
    index[{std::min(a.s_half, a.t_half), std::max(a.s_half, a.t_half)}] = static_cast<int>(i);
  }
  auto x = [&](int a, int b) -> const QSqrt& { return X.X.at(index.at({std::min(a, b), std::max(a, b)})); };
  std::vector<QSqrt> Y;
  for (int e = 0; e < g.num_edges(); ++e) {
    QSqrt sq(1);
    for (int h : {g.src_half(e), g.dst_half(e)}) {
      const int h1 = g.next_ccw(h), h2 = g.next_ccw(h1);
      sq = sq * x(h, h1) * x(h, h2) * inverse(x(h1, h2));
    }
    if (!sq.is_rational() || sq.rational_part() < 0)
      throw Error(ErrorKind::Domain, "angle couplings do not come from real edge couplings");
    Y.push_back(QSqrt::sqrt_of(sq.rational_part()));
  }
  return Y;
}

LoopProductReport check_loop_products(const PlanarGraph& g, const std::vector<Rational>& Y, const AngleCouplings& X) {
  LoopProductReport rep;
  for (EdgeMask m : simple_cycles(g)) {
    Cycle c = cycle_from_mask(g, m);
    const int n = static_cast<int>(c.edges.size());
    if (n < 2) continue;
    ++rep.cycles;
    QSqrt px(1), py(1);
    for (int i = 0; i < n; ++i) {
      const int v = c.vertices[i], a = c.edges[(i + n - 1) % n], b = c.edges[i];
      px = px * X.X[angle_index(g, v, half_at(g, a, v), half_at(g, b, v))];
      py = py * QSqrt(Y[b]);
    }
    if (px != py) {
      rep.ok = false;
      rep.failures.push_back(m);
    }
  }
  return rep;
}

FundamentalReport verify_fundamental_equality(const PlanarGraph& g, const std::vector<Rational>& Y, int D) {
  FundamentalReport rep;
  SparsePoly P = p_gamma(g);
  rep.p = evaluate_nonsingular(P, Y);
  rep.z_spin_exact = 1 / (rep.p * rep.p);
  rep.exact_ok = rep.p * rep.p * rep.z_spin_exact == 1;
  if (g.num_vertices() <= 24) {
    rep.ising_checked = true;
    rep.ising_ok = z_ising_bruteforce(g, Y) == rep.p;
  }
  rep.degree = D;
  UniPoly s = uni_inverse_square(P.graded_values(Y), D);
  for (const auto& c : s) rep.series_sum += to_double(c);
  // growth rate and amplitude fitted on the upper half of the computed coefficients
  double r = 0;
  for (int d = D / 2 + 1; d <= D; ++d)
    if (s[d] != 0) r = std::max(r, std::pow(std::abs(to_double(s[d])), 1.0 / d));
  if (r == 0) {
    rep.series_converged = true;
  } else if (r < 1) {
    double amp = 0;
    for (int d = D / 2 + 1; d <= D; ++d) amp = std::max(amp, std::abs(to_double(s[d])) / ((d + 1) * std::pow(r, d)));
    rep.tail_bound = amp * std::pow(r, D + 1) * ((D + 2) - (D + 1) * r) / ((1 - r) * (1 - r));
    rep.series_converged = true;
  }
  if (rep.series_converged) {
    const double zx = to_double(rep.z_spin_exact);
    rep.series_ok = std::abs(rep.series_sum - zx) <= 2 * rep.tail_bound + 1e-12 * std::max(1.0, std::abs(zx));
  }
  return rep;
}

Rational mean_color(const PlanarGraph& g, const std::vector<Rational>& Y, int e) {
  SparsePoly P = p_gamma(g);
  Rational p = evaluate_nonsingular(P, Y);
  return -2 * Y[e] * P.derivative(e).evaluate(Y) / p;
}

BridgeCheck verify_mean_spin_bridge(const PlanarGraph& g, const std::vector<Rational>& Y, int e) {
  require_unit_interval(Y[e]);
  BridgeCheck c;
  c.lhs = mean_color(g, Y, e) / 2;
  const Rational ge = nn_correlation(g, Y, e);
  c.rhs = (Y[e] * Y[e] - Y[e] * ge) / (1 - Y[e] * Y[e]);
  c.ok = c.lhs == c.rhs;
  return c;
}

BridgeCheck verify_first_derivative(const PlanarGraph& g, const std::vector<Rational>& Y, int e) {
  require_unit_interval(Y[e]);
  SparsePoly P = p_gamma(g);
  Rational p = evaluate_nonsingular(P, Y);
  BridgeCheck c;
  c.lhs = -(1 - Y[e] * Y[e]) * P.derivative(e).evaluate(Y) / p;
  c.rhs = Y[e] - nn_correlation(g, Y, e);
  c.ok = c.lhs == c.rhs;
  return c;
}

PathCorrelationReport connected_path_correlation(const PlanarGraph& g, const std::vector<double>& y,
                                                 const std::vector<int>& path, double tolerance) {
  PathCorrelationReport rep;
  rep.vertices = path_vertices(g, path);
  const int n = static_cast<int>(path.size());
  if (n > 16) throw Error(ErrorKind::SizeLimit, "path longer than 16 edges");
  std::vector<double> Y(y.size());
  for (size_t i = 0; i < y.size(); ++i) Y[i] = std::tanh(y[i]);

  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, size_t> slot;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      slot[{i, j}] = pairs.size();
      pairs.emplace_back(rep.vertices[i], rep.vertices[j]);
    }
  auto corr = spin_correlations(g, Y, pairs);
  rep.ising_cut_sum = cut_sum(n, [&](int i, int j) { return corr[slot[{i, j}]]; });
  auto energy = edge_energy_moments(g, Y, rep.vertices);
  rep.ising_cumulant = cumulants_from_moments(energy, n).back();

  // R(S) = d_S Z^spin / Z^spin; d_S (N P^-k) = (P d_e N - k N d_e P) P^-(k+1), starting from N = 1, k = 2.
  SparsePoly P = p_gamma(g);
  const double p = P.evaluate(Y);
  if (p == 0) throw Error(ErrorKind::SingularCoupling, "P(Y) = 0");
  std::vector<SparsePoly> N(1u << n, SparsePoly(P.nvars()));
  std::vector<double> R(1u << n, 1.0);
  N[0] = SparsePoly::constant(P.nvars(), 1);
  for (uint32_t S = 1; S < (1u << n); ++S) {
    const int top = 31 - __builtin_clz(S), e = path[top];
    const uint32_t prev = S ^ (1u << top);
    const int k = 2 + __builtin_popcount(prev);
    N[S] = P * N[prev].derivative(e) - N[prev] * P.derivative(e) * Rational(k);
    R[S] = N[S].evaluate(Y) / std::pow(p, __builtin_popcount(S));
  }
  double pref = -0.5;
  for (int e : path) pref *= 1 - Y[e] * Y[e];
  auto mask_of = [](int i, int j) { return ((1u << j) - 1) ^ ((1u << i) - 1); };
  rep.spin_cut_sum = pref * cut_sum(n, [&](int i, int j) { return R[mask_of(i, j)]; });
  rep.spin_cumulant = pref * cumulants_from_moments(R, n).back();
  if (n == 1) {
    rep.spin_cut_sum += Y[path[0]];
    rep.spin_cumulant += Y[path[0]];
  }
  rep.cut_sum_error = std::abs(rep.ising_cut_sum - rep.spin_cut_sum);
  rep.cumulant_error = std::abs(rep.ising_cumulant - rep.spin_cumulant);
  rep.cut_sum_ok = rep.cut_sum_error <= tolerance;
  rep.cumulant_ok = rep.cumulant_error <= tolerance;
  return rep;
}

Integer stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0 || k > n) return 0;
  std::vector<Integer> row(k + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = std::min(i, k); j >= 0; --j) row[j] = (j > 0 ? row[j - 1] : Integer(0)) + j * row[j];
  return row[k];
}

Rational polylog_neg(int m, const Rational& z) {
  if (abs(z) >= 1) throw Error(ErrorKind::DivergentTail, "polylogarithm outside the unit disk");
  if (m == 0) return z / (1 - z);
  // Eulerian numbers A(m, k), k = 0..m-1
  std::vector<Integer> A{1};
  for (int i = 2; i <= m; ++i) {
    std::vector<Integer> B(i, 0);
    for (int k = 0; k < i; ++k) {
      if (k < i - 1) B[k] += (k + 1) * A[k];
      if (k > 0) B[k] += (i - k) * A[k - 1];
    }
    A = std::move(B);
  }
  Rational num = 0, zk = 1;
  for (const auto& a : A) {
    num += Rational(a) * zk;
    zk *= z;
  }
  return z * num / pow(1 - z, m + 1);
}

MomentReport moment_theorem(const PlanarGraph& g, const std::vector<Rational>& Y, int e, int N) {
  require_unit_interval(Y[e]);
  MomentReport rep;
  rep.order = N;
  SparsePoly P = p_gamma(g);
  const Rational p = evaluate_nonsingular(P, Y);
  const Rational T = Y[e];
  auto note = [&](const std::string& what, int n) { rep.discrepancies.push_back(what + " at n=" + std::to_string(n)); };

  UniPoly q = shifted_profile(P, Y, e, p);
  UniPoly l = series_log(q, N);
  UniPoly s = uni_inverse_square(q, N);
  rep.kappa.assign(N + 1, 0);
  rep.mu.assign(N + 1, 0);
  for (int n = 0; n <= N; ++n) {
    if (n > 0) rep.kappa[n] = -2 * Rational(factorial(n)) * l[n];
    rep.mu[n] = Rational(factorial(n)) * s[n];
  }
  const Rational half_k1 = -(P.derivative(e).evaluate(Y) / p);
  rep.kappa_formula.assign(N + 1, 0);
  rep.mu_formula.assign(N + 1, 0);
  for (int n = 0; n <= N; ++n) {
    if (n > 0) rep.kappa_formula[n] = 2 * Rational(factorial(n - 1)) * pow(half_k1, n);
    rep.mu_formula[n] = Rational(factorial(n + 1)) * pow(half_k1, n);
  }

  // kappa_n = M_n(T, g) / (1 - T^2)^n with d_Y T = 1 and d_Y g = (1 - g^2)/(1 - T^2)
  const Rational ge = nn_correlation(g, Y, e);
  const SparsePoly tv = SparsePoly::variable(2, 0), gv = SparsePoly::variable(2, 1);
  const SparsePoly one = SparsePoly::constant(2, 1);
  SparsePoly M = (tv - gv) * Rational(2);
  rep.kappa_chain.assign(N + 1, 0);
  for (int n = 1; n <= N; ++n) {
    rep.kappa_chain[n] = M.evaluate(std::vector<Rational>{T, ge}) / pow(1 - T * T, n);
    M = (one - tv * tv) * M.derivative(0) + (one - gv * gv) * M.derivative(1) + tv * M * Rational(2 * n);
  }

  rep.mean_j = T * half_k1;
  rep.is_signed = rep.mean_j < 0;
  if (rep.mean_j + 1 == 0) throw Error(ErrorKind::DivergentTail, "<j> = -1");
  rep.ratio = rep.mean_j / (1 + rep.mean_j);
  if (abs(rep.ratio) >= 1) throw Error(ErrorKind::DivergentTail, "|<j>/(1+<j>)| >= 1");
  const Rational norm = 1 / ((1 + rep.mean_j) * (1 + rep.mean_j));

  rep.moments.assign(N + 1, 0);
  rep.moments_stirling.assign(N + 1, 0);
  rep.moments_polylog.assign(N + 1, 0);
  rep.moments_taylor.assign(N + 1, 0);
  rep.moments_partial.assign(N + 1, 0);
  rep.moments[0] = rep.moments_stirling[0] = 1;
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= n; ++k) {
      const Rational S(stirling2(n, k));
      rep.moments[n] += S * pow(T, k) * rep.mu[k];
      rep.moments_stirling[n] += S * Rational(factorial(k + 1)) * pow(rep.mean_j, k);
    }
  rep.moments_polylog[0] = norm / ((1 - rep.ratio) * (1 - rep.ratio));
  for (int n = 1; n <= N; ++n)
    rep.moments_polylog[n] = norm * (polylog_neg(n + 1, rep.ratio) + polylog_neg(n, rep.ratio));

  UniPoly u(N + 1);
  u[0] = 1;
  for (int n = 1; n <= N; ++n) u[n] = -rep.mean_j / Rational(factorial(n));
  UniPoly jt = uni_inverse_square(u, N);
  for (int n = 0; n <= N; ++n) rep.moments_taylor[n] = Rational(factorial(n)) * jt[n];

  for (int n = 0; n <= N; ++n) rep.probabilities.push_back(norm * (n + 1) * pow(rep.ratio, n));
  const double zr = to_double(rep.ratio), nr = to_double(norm);
  double zk = 1;
  for (long k = 0; k < 1000000; ++k) {
    const double pk = nr * (k + 1) * zk;
    rep.probability_sum += pk;
    double kn = 1;
    for (int n = 0; n <= N; ++n) {
      rep.moments_partial[n] += pk * kn;
      kn *= k;
    }
    if (k > 10 && std::abs(pk) * std::pow(k + 1.0, N) < 1e-19) break;
    zk *= zr;
  }

  for (int n = 1; n <= N; ++n) {
    if (rep.kappa[n] != rep.kappa_formula[n]) note("kappa != 2(n-1)!(kappa_1/2)^n", n);
    if (rep.kappa_chain[n] != rep.kappa[n]) note("cosh^2-chain kappa != direct kappa", n);
  }
  for (int n = 0; n <= N; ++n) {
    if (rep.mu[n] != rep.mu_formula[n]) note("mu != (n+1)!(kappa_1/2)^n", n);
    if (rep.moments[n] != rep.moments_stirling[n]) note("derivative moment != Stirling moment", n);
    if (rep.moments_polylog[n] != rep.moments_stirling[n]) note("polylog moment != Stirling moment", n);
    if (rep.moments_taylor[n] != rep.moments_stirling[n]) note("j(t) coefficient != Stirling moment", n);
    if (!close(rep.moments_partial[n], to_double(rep.moments_stirling[n]), 1e-10)) note("partial sum moment", n);
  }
  if (!close(rep.probability_sum, 1.0, 1e-10)) note("sum of P(2j=n) != 1", 0);
  return rep;
}

}  // namespace duality
