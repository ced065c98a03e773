#include "duality/ising.hpp"

#include <algorithm>

#include "duality/errors.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/pfaffian.hpp"

namespace duality {

namespace {

// Per-chunk accumulator over configurations with the last vertex fixed to +1.
// Weight of a configuration: prod_e (agree ? plus[e] : minus[e]).
template <typename W>
struct SweepResult {
  W z;
  std::vector<W> pair_sums;
};

template <typename W>
SweepResult<W> sweep_chunk(const PlanarGraph& g, const std::vector<W>& plus, const std::vector<W>& minus,
                           const std::vector<std::pair<int, int>>& pairs, uint64_t begin, uint64_t end, const W& zero) {
  const int nv = g.num_vertices(), ne = g.num_edges();
  SweepResult<W> r{zero, std::vector<W>(pairs.size(), zero)};
  if (begin >= end) return r;
  uint64_t cfg = begin ^ (begin >> 1);  // bit v set: s_v = -1
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < ne; ++e) {
    incident[g.src(e)].push_back(e);
    incident[g.dst(e)].push_back(e);
  }
  auto spin_bit = [&](int v) { return static_cast<int>((cfg >> v) & 1); };
  std::vector<uint8_t> agree(ne);
  for (int e = 0; e < ne; ++e) agree[e] = spin_bit(g.src(e)) == spin_bit(g.dst(e));
  W w = zero;
  for (uint64_t i = begin;; ++i) {
    w = agree[0] ? plus[0] : minus[0];
    for (int e = 1; e < ne; ++e) w *= agree[e] ? plus[e] : minus[e];
    r.z += w;
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (spin_bit(pairs[k].first) == spin_bit(pairs[k].second))
        r.pair_sums[k] += w;
      else
        r.pair_sums[k] -= w;
    }
    if (i + 1 == end) break;
    int v = __builtin_ctzll(i + 1);
    cfg ^= uint64_t(1) << v;
    for (int e : incident[v]) agree[e] ^= 1;
  }
  (void)nv;
  return r;
}

template <typename W>
SweepResult<W> sweep(const PlanarGraph& g, const std::vector<W>& plus, const std::vector<W>& minus,
                     const std::vector<std::pair<int, int>>& pairs, const SweepOptions& opt, const W& zero) {
  const int nv = g.num_vertices();
  if (nv > opt.max_vertices || nv > 40)
    throw Error(ErrorKind::SizeLimit, std::to_string(nv) + " vertices exceeds the brute-force bound");
  for (const auto& [a, b] : pairs)
    if (a < 0 || b < 0 || a >= nv || b >= nv) throw Error(ErrorKind::Domain, "vertex out of range");
  const uint64_t total = uint64_t(1) << (nv - 1);
  uint64_t nchunks = opt.chunks > 0 ? static_cast<uint64_t>(opt.chunks) : std::clamp<uint64_t>(total / 4096, 1, 256);
  nchunks = std::min(nchunks, total);
  std::vector<SweepResult<W>> parts(nchunks);
  auto run = [&](uint64_t c) {
    uint64_t b = total * c / nchunks, e = total * (c + 1) / nchunks;
    parts[c] = sweep_chunk(g, plus, minus, pairs, b, e, zero);
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < static_cast<long>(nchunks); ++c) run(static_cast<uint64_t>(c));
  } else {
    for (uint64_t c = 0; c < nchunks; ++c) run(c);
  }
  SweepResult<W> out{zero, std::vector<W>(pairs.size(), zero)};
  for (const auto& p : parts) {
    out.z += p.z;
    for (size_t k = 0; k < pairs.size(); ++k) out.pair_sums[k] += p.pair_sums[k];
  }
  return out;
}

void check_couplings(const PlanarGraph& g, size_t n) {
  if (static_cast<int>(n) != g.num_edges()) throw Error(ErrorKind::Domain, "one coupling per edge required");
}

// Exact path: Y_e = p_e/q_e, factors q_e +- p_e as integers, common denominator restored at the end.
struct ExactSweep {
  SweepResult<Integer> raw;
  Rational scale;  // 2 / (2^V prod q_e)
};

ExactSweep exact_sweep(const PlanarGraph& g, const std::vector<Rational>& Y, const std::vector<std::pair<int, int>>& pairs,
                       const SweepOptions& opt) {
  check_couplings(g, Y.size());
  std::vector<Integer> plus, minus;
  Integer den = 1;
  for (const Rational& y : Y) {
    plus.push_back(y.get_den() + y.get_num());
    minus.push_back(y.get_den() - y.get_num());
    den *= y.get_den();
  }
  ExactSweep s{sweep<Integer>(g, plus, minus, pairs, opt, Integer(0)), Rational(0)};
  Integer pow2 = Integer(1) << (g.num_vertices() - 1);
  s.scale = Rational(Integer(1), den * pow2);
  return s;
}

}  // namespace

Rational z_ising_bruteforce(const PlanarGraph& g, const std::vector<Rational>& Y, const SweepOptions& opt) {
  auto s = exact_sweep(g, Y, {}, opt);
  Rational z = Rational(s.raw.z) * s.scale;
  z.canonicalize();
  return z;
}

double z_ising_bruteforce(const PlanarGraph& g, const std::vector<double>& Y, const SweepOptions& opt) {
  check_couplings(g, Y.size());
  std::vector<double> plus, minus;
  for (double y : Y) plus.push_back(1 + y), minus.push_back(1 - y);
  auto r = sweep<double>(g, plus, minus, {}, opt, 0.0);
  return std::ldexp(r.z, -(g.num_vertices() - 1));
}

std::vector<Rational> spin_correlations(const PlanarGraph& g, const std::vector<Rational>& Y,
                                        const std::vector<std::pair<int, int>>& pairs, const SweepOptions& opt) {
  auto s = exact_sweep(g, Y, pairs, opt);
  std::vector<Rational> out;
  for (const Integer& n : s.raw.pair_sums) {
    Rational c(n, s.raw.z);
    c.canonicalize();
    out.push_back(c);
  }
  return out;
}

std::vector<double> spin_correlations(const PlanarGraph& g, const std::vector<double>& Y,
                                      const std::vector<std::pair<int, int>>& pairs, const SweepOptions& opt) {
  check_couplings(g, Y.size());
  std::vector<double> plus, minus;
  for (double y : Y) plus.push_back(1 + y), minus.push_back(1 - y);
  auto r = sweep<double>(g, plus, minus, pairs, opt, 0.0);
  std::vector<double> out;
  for (double n : r.pair_sums) out.push_back(n / r.z);
  return out;
}

Rational nn_correlation(const PlanarGraph& g, const std::vector<Rational>& Y, int e, const SweepOptions& opt) {
  if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::InvalidEdge, "edge index " + std::to_string(e));
  return spin_correlations(g, Y, {{g.src(e), g.dst(e)}}, opt)[0];
}

double nn_correlation(const PlanarGraph& g, const std::vector<double>& Y, int e, const SweepOptions& opt) {
  if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::InvalidEdge, "edge index " + std::to_string(e));
  return spin_correlations(g, Y, {{g.src(e), g.dst(e)}}, opt)[0];
}

SparsePoly p_gamma(const PlanarGraph& g) {
  const int ne = g.num_edges();
  SparsePoly p(ne);
  for (EdgeMask m : enumerate_even_subgraphs(g)) {
    Exponents ex(ne, 0);
    for (int e = 0; e < ne; ++e) ex[e] = static_cast<int>((m >> e) & 1);
    p.add_term(ex, Rational(1));
  }
  return p;
}

Rational z_on_loop_model(const PlanarGraph& g, const Rational& n, const std::vector<Rational>& Y) {
  check_couplings(g, Y.size());
  Rational z = 0;
  for (EdgeMask m : enumerate_even_subgraphs(g)) {
    Rational w = pow(n, component_count(g, m));
    for (int e = 0; e < g.num_edges(); ++e)
      if ((m >> e) & 1) w *= Y[e];
    z += w;
  }
  return z;
}

Rational z_on_loop_model(const PlanarGraph& g, const Rational& n, const Rational& Y) {
  return z_on_loop_model(g, n, std::vector<Rational>(g.num_edges(), Y));
}

DimerGraph build_dimer_graph(const PlanarGraph& g, const Orientation& o, TriangleOrientation tri) {
  const int nh = g.num_half_edges(), ne = g.num_edges();
  std::vector<std::array<int, 2>> edges;
  std::vector<SparsePoly> weights;
  // edge-type edge k = e: halves 2e (at src) and 2e+1 (at dst)
  for (int e = 0; e < ne; ++e) {
    edges.push_back({-1, -1});
    weights.push_back(SparsePoly::constant(ne, 1));
  }
  std::vector<std::array<int, 3>> rot(nh);
  std::vector<int> next_edge_half(nh), prev_edge_half(nh);
  for (int e = 0; e < ne; ++e) {
    int s = g.src_half(e, o), t = g.dst_half(e, o);
    edges[e] = {2 * e, 2 * e + 1};
    rot[s][0] = 2 * e;
    rot[t][0] = 2 * e + 1;
  }
  for (const Angle& a : g.angles()) {
    const int k = static_cast<int>(edges.size());
    // half 2k sits at the tail of the stored direction
    const bool ccw = tri == TriangleOrientation::CounterClockwise;
    edges.push_back({2 * k, 2 * k + 1});
    const int half_at_s = ccw ? 2 * k : 2 * k + 1, half_at_t = ccw ? 2 * k + 1 : 2 * k;
    rot[a.s_half][1] = half_at_s;  // towards next_ccw(s) = t
    rot[a.t_half][2] = half_at_t;  // towards prev_ccw(t) = s
    Exponents ex(ne, 0);
    ex[g.edge_of(a.s_half)] += 1;
    ex[g.edge_of(a.t_half)] += 1;
    weights.push_back(SparsePoly::monomial(ex, 1));
  }
  std::vector<int> order;
  for (int e = 0; e < ne; ++e) {
    order.push_back(g.src_half(e, o));
    order.push_back(g.dst_half(e, o));
  }
  return {PlanarGraph(rot, edges), weights, order};
}

SparsePoly dimer_p_gamma(const PlanarGraph& g, const Orientation& o, TriangleOrientation tri, int max_vertices) {
  if (g.num_half_edges() > max_vertices || g.num_half_edges() > 64)
    throw Error(ErrorKind::SizeLimit, "expansion has " + std::to_string(g.num_half_edges()) + " vertices");
  if (!is_kasteleyn(g, o).ok) throw Error(ErrorKind::Domain, "orientation is not Kasteleyn");
  DimerGraph d = build_dimer_graph(g, o, tri);
  const PlanarGraph& h = d.graph;
  if (!is_kasteleyn(h, h.stored_orientation()).ok) throw Error(ErrorKind::Domain, "triangle expansion is not Kasteleyn");
  const int n = h.num_vertices();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[d.order[i]] = i;
  const int ne = g.num_edges();
  SkewMatrix<SparsePoly> m(n, SparsePoly(ne));
  for (int k = 0; k < h.num_edges(); ++k) {
    int u = pos[h.src(k)], v = pos[h.dst(k)];
    m.set(u, v, m.at(u, v) + d.weights[k]);
  }
  return pfaffian(m).halve_exponents();
}

}  // namespace duality
