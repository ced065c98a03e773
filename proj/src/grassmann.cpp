#include "duality/grassmann.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>

namespace duality {

int permutation_sign(const std::vector<int>& order) {
  int parity = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) parity ^= 1;
  return parity ? -1 : 1;
}

namespace {

std::atomic<size_t> g_peak{0};

template <typename C>
struct Factor {
  GenMask mask;
  C coeff;  // coefficient of the sorted monomial
};

// Factor order: BFS rank of generators in the "appear together" graph, so that generators
// stop occurring early and the pruning bites.
template <typename C>
std::vector<Factor<C>> order_factors(int ngen, const std::vector<QuadTerm<C>>& terms) {
  std::vector<std::vector<int>> adj(ngen);
  for (const auto& t : terms) {
    adj[t.a].push_back(t.b);
    adj[t.b].push_back(t.a);
  }
  std::vector<int> rank(ngen, -1);
  int next = 0;
  for (int s = 0; s < ngen; ++s) {
    if (rank[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    rank[s] = next++;
    while (!q.empty()) {
      int g = q.front();
      q.pop();
      std::vector<int> nb = adj[g];
      std::sort(nb.begin(), nb.end());
      for (int h : nb)
        if (rank[h] < 0) {
          rank[h] = next++;
          q.push(h);
        }
    }
  }
  std::vector<size_t> idx(terms.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    auto kx = std::make_pair(std::max(rank[terms[x].a], rank[terms[x].b]), std::min(rank[terms[x].a], rank[terms[x].b]));
    auto ky = std::make_pair(std::max(rank[terms[y].a], rank[terms[y].b]), std::min(rank[terms[y].a], rank[terms[y].b]));
    return kx < ky;
  });
  std::vector<Factor<C>> out;
  for (size_t i : idx) {
    const auto& t = terms[i];
    if (t.a == t.b) continue;
    GenMask ma = GenMask(1) << t.a, mb = GenMask(1) << t.b;
    out.push_back({ma | mb, reorder_sign(ma, mb) > 0 ? t.coeff : -t.coeff});
  }
  return out;
}

template <typename C>
void merge_sorted(std::vector<std::pair<GenMask, C>>& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<GenMask, C>> out;
  out.reserve(v.size());
  for (auto& item : v) {
    if (!out.empty() && out.back().first == item.first)
      out.back().second += item.second;
    else
      out.push_back(std::move(item));
  }
  v.clear();
  for (auto& item : out)
    if (!coeff_is_zero(item.second)) v.push_back(std::move(item));
}

template <typename C>
C staged_top_impl(int ngen, const std::vector<QuadTerm<C>>& terms, const C& zero, const C& one, bool parallel) {
  if (ngen > 64) throw Error(ErrorKind::SizeLimit, "more than 64 generators");
  const GenMask full = ngen == 64 ? ~GenMask(0) : ((GenMask(1) << ngen) - 1);
  auto factors = order_factors(ngen, terms);
  const size_t n = factors.size();
  std::vector<GenMask> suffix(n + 1, 0);
  for (size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] | factors[k].mask;
  size_t peak = 1;
  if ((full & ~suffix[0]) != 0) {
    g_peak = peak;
    return zero;
  }
  std::vector<std::pair<GenMask, C>> state{{0, one}};
  for (size_t k = 0; k < n; ++k) {
    const GenMask m = factors[k].mask, later = suffix[k + 1];
    const C& c = factors[k].coeff;
    auto viable = [&](GenMask x) { return (full & ~x & ~later) == 0; };
    const size_t s = state.size();
    std::vector<std::pair<GenMask, C>> slots(2 * s, {0, zero});
    std::vector<char> used(2 * s, 0);
    auto produce = [&](size_t i) {
      const auto& [x, v] = state[i];
      if (viable(x)) {
        slots[2 * i] = {x, v};
        used[2 * i] = 1;
      }
      if (!(x & m) && viable(x | m)) {
        C prod = v * c;
        slots[2 * i + 1] = {x | m, reorder_sign(x, m) > 0 ? prod : -prod};
        used[2 * i + 1] = 1;
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
      for (long i = 0; i < static_cast<long>(s); ++i) produce(static_cast<size_t>(i));
    } else {
      for (size_t i = 0; i < s; ++i) produce(i);
    }
    std::vector<std::pair<GenMask, C>> next;
    next.reserve(2 * s);
    for (size_t i = 0; i < 2 * s; ++i)
      if (used[i]) next.push_back(std::move(slots[i]));
    merge_sorted(next);
    state = std::move(next);
    peak = std::max(peak, state.size());
  }
  g_peak = peak;
  for (const auto& [x, v] : state)
    if (x == full) return v;
  return zero;
}

}  // namespace

Rational staged_top(int ngen, const std::vector<QuadTerm<Rational>>& terms, bool parallel) {
  return staged_top_impl<Rational>(ngen, terms, Rational(0), Rational(1), parallel);
}

SparsePoly staged_top(int ngen, const std::vector<QuadTerm<SparsePoly>>& terms, const SparsePoly& one, bool parallel) {
  return staged_top_impl<SparsePoly>(ngen, terms, SparsePoly(one.nvars()), one, parallel);
}

StagedStats last_staged_stats() { return {g_peak.load()}; }

namespace {

// Conventions shared by the three forms. Each edge block is normalized so that the edge
// action monomial integrates to +1 (empty configuration has weight 1). The corner monomial is
// taken as psi_t psi_s: with psi_s psi_t every cycle c picks up (-1)^|c| against a Kasteleyn
// orientation and the integral is the loop polynomial at -Y.

// X_alpha with doubled exponents: Y_{e(s)}^{1/2} Y_{e(t)}^{1/2}
SparsePoly angle_weight(const PlanarGraph& g, const Angle& a) {
  Exponents e(g.num_edges(), 0);
  e[g.edge_of(a.s_half)] += 1;
  e[g.edge_of(a.t_half)] += 1;
  return SparsePoly::monomial(e, 1);
}

void check_size(int ngen, const GrassmannOptions& opt) {
  if (ngen > opt.max_generators || ngen > 64)
    throw Error(ErrorKind::SizeLimit, std::to_string(ngen) + " generators exceeds the bound " + std::to_string(opt.max_generators));
}

SparsePoly integrate(int ngen, const std::vector<QuadTerm<SparsePoly>>& terms, const std::vector<int>& measure,
                     int nvars, bool parallel) {
  SparsePoly one = SparsePoly::constant(nvars, 1);
  SparsePoly top = staged_top(ngen, terms, one, parallel);
  if (permutation_sign(measure) < 0) top = -top;
  return top.halve_exponents();
}

}  // namespace

SparsePoly z_f(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt) {
  const int ne = g.num_edges(), ngen = 2 * ne;
  check_size(ngen, opt);
  SparsePoly one = SparsePoly::constant(ne, 1);
  std::vector<QuadTerm<SparsePoly>> terms;
  std::vector<int> measure;
  for (int e = 0; e < ne; ++e) {
    int s = g.src_half(e, o), t = g.dst_half(e, o);
    terms.push_back({s, t, one});
    measure.push_back(s);
    measure.push_back(t);
  }
  for (const Angle& a : g.angles()) terms.push_back({a.t_half, a.s_half, angle_weight(g, a)});
  return integrate(ngen, terms, measure, ne, opt.parallel);
}

SparsePoly z_f_complex(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt) {
  const int ne = g.num_edges(), nh = 2 * ne, ngen = 2 * nh;
  check_size(ngen, opt);
  SparsePoly one = SparsePoly::constant(ne, 1);
  auto psi = [](int h) { return h; };
  auto bar = [nh](int h) { return nh + h; };
  std::vector<QuadTerm<SparsePoly>> terms;
  std::vector<int> measure;
  for (int h = 0; h < nh; ++h) terms.push_back({psi(h), bar(h), one});
  for (int e = 0; e < ne; ++e) {
    int s = g.src_half(e, o), t = g.dst_half(e, o);
    terms.push_back({bar(s), bar(t), -one});
    for (int x : {psi(s), bar(s), psi(t), bar(t)}) measure.push_back(x);
  }
  for (const Angle& a : g.angles()) terms.push_back({psi(a.t_half), psi(a.s_half), angle_weight(g, a)});
  return integrate(ngen, terms, measure, ne, opt.parallel);
}

SparsePoly z_f_squared(const PlanarGraph& g, const Orientation& o, const GrassmannOptions& opt) {
  const int ne = g.num_edges(), nh = 2 * ne, ngen = 4 * nh;
  check_size(ngen, opt);
  SparsePoly one = SparsePoly::constant(ne, 1);
  auto psi = [](int h) { return h; };
  auto eta = [nh](int h) { return nh + h; };
  auto psib = [nh](int h) { return 2 * nh + h; };
  auto etab = [nh](int h) { return 3 * nh + h; };
  std::vector<QuadTerm<SparsePoly>> terms;
  std::vector<int> measure;
  for (int h = 0; h < nh; ++h) {
    terms.push_back({psi(h), etab(h), one});
    terms.push_back({psib(h), eta(h), one});
  }
  for (int e = 0; e < ne; ++e) {
    int s = g.src_half(e, o), t = g.dst_half(e, o);
    terms.push_back({psib(s), psib(t), -one});
    terms.push_back({etab(s), etab(t), -one});
    for (int h : {s, t})
      for (int x : {psi(h), eta(h), psib(h), etab(h)}) measure.push_back(x);
  }
  for (const Angle& a : g.angles()) {
    SparsePoly w = angle_weight(g, a);
    terms.push_back({psi(a.t_half), psi(a.s_half), w});
    terms.push_back({eta(a.t_half), eta(a.s_half), w});
  }
  return integrate(ngen, terms, measure, ne, opt.parallel);
}

}  // namespace duality
