#include "duality/spinnet.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <map>

#include "duality/errors.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/wigner.hpp"
#include "duality/ising.hpp"

namespace duality {

bool is_admissible(const PlanarGraph& g, const Coloring& col) {
  if (static_cast<int>(col.size()) != g.num_edges()) return false;
  for (int c : col)
    if (c < 0) return false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& r = g.rotation(v);
    if (!triangle_ok(col[g.edge_of(r[0])], col[g.edge_of(r[1])], col[g.edge_of(r[2])])) return false;
  }
  return true;
}

namespace {

void require_admissible(const PlanarGraph& g, const Coloring& col) {
  if (!is_admissible(g, col)) throw Error(ErrorKind::InadmissibleColoring, "colouring is not admissible at every vertex");
}

}  // namespace

std::vector<int> vertex_spin_sums(const PlanarGraph& g, const Coloring& col) {
  std::vector<int> J(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& r = g.rotation(v);
    J[v] = (col[g.edge_of(r[0])] + col[g.edge_of(r[1])] + col[g.edge_of(r[2])]) / 2;
  }
  return J;
}

std::string normalization_name(Normalization n) {
  switch (n) {
    case Normalization::Tensor: return "tensor";
    case Normalization::Integral: return "integral";
    case Normalization::Unitary: return "unitary";
    case Normalization::Skein: return "skein";
  }
  return "?";
}

namespace {

// Dense real tensor over a sorted list of edge variables.
struct Factor {
  std::vector<int> vars;
  std::vector<int> dims;
  std::vector<double> data;
};

size_t flat_index(const std::vector<int>& dims, const std::vector<int>& idx) {
  size_t k = 0;
  for (size_t i = 0; i < dims.size(); ++i) k = k * dims[i] + idx[i];
  return k;
}

// Multiply all factors, then sum out `var`.
Factor eliminate(const std::vector<const Factor*>& fs, int var, const std::vector<int>& dim_of) {
  std::vector<int> all;
  for (const Factor* f : fs) all.insert(all.end(), f->vars.begin(), f->vars.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Factor out;
  for (int v : all)
    if (v != var) {
      out.vars.push_back(v);
      out.dims.push_back(dim_of[v]);
    }
  size_t out_size = 1;
  for (int d : out.dims) out_size *= d;
  out.data.assign(out_size, 0.0);
  std::vector<int> pos(dim_of.size(), -1);
  for (size_t i = 0; i < all.size(); ++i) pos[all[i]] = static_cast<int>(i);
  std::vector<int> idx(all.size(), 0), sub, out_idx(out.vars.size());
  while (true) {
    double prod = 1;
    for (const Factor* f : fs) {
      sub.assign(f->vars.size(), 0);
      for (size_t i = 0; i < f->vars.size(); ++i) sub[i] = idx[pos[f->vars[i]]];
      prod *= f->data[flat_index(f->dims, sub)];
      if (prod == 0) break;
    }
    if (prod != 0) {
      size_t k = 0;
      for (size_t i = 0; i < out.vars.size(); ++i) out_idx[i] = idx[pos[out.vars[i]]];
      k = flat_index(out.dims, out_idx);
      out.data[k] += prod;
    }
    size_t i = all.size();
    while (i > 0) {
      --i;
      if (++idx[i] < dim_of[all[i]]) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (all.empty()) return out;
  }
}

double contract(std::vector<Factor> factors, const std::vector<int>& dim_of) {
  const int nvars = static_cast<int>(dim_of.size());
  std::vector<char> alive(nvars, 1);
  for (int step = 0; step < nvars; ++step) {
    // greedy minimum degree: fewest neighbouring variables, ties by id
    int best = -1;
    size_t best_deg = 0;
    for (int v = 0; v < nvars; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nb;
      for (const auto& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) nb.insert(nb.end(), f.vars.begin(), f.vars.end());
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      if (best < 0 || nb.size() < best_deg) {
        best = v;
        best_deg = nb.size();
      }
    }
    std::vector<const Factor*> touching;
    std::vector<Factor> rest;
    for (const auto& f : factors)
      if (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end()) touching.push_back(&f);
    Factor merged = eliminate(touching, best, dim_of);
    for (const auto& f : factors)
      if (std::find(f.vars.begin(), f.vars.end(), best) == f.vars.end()) rest.push_back(f);
    rest.push_back(std::move(merged));
    factors = std::move(rest);
    alive[best] = 0;
  }
  double r = 1;
  for (const auto& f : factors) r *= f.data[0];
  return r;
}

// Magnetic index k of edge e stands for 2m = -c + 2k.
std::vector<Factor> build_network(const PlanarGraph& g, const Orientation& o, const Coloring& col, bool absolute) {
  std::vector<Factor> fs;
  for (int e = 0; e < g.num_edges(); ++e) {
    Factor f{{e}, {col[e] + 1}, {}};
    for (int k = 0; k <= col[e]; ++k) {
      int tm = -col[e] + 2 * k;
      f.data.push_back(absolute ? 1.0 : phase(col[e] - tm));
    }
    fs.push_back(std::move(f));
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& r = g.rotation(v);
    int es[3], eps[3];
    for (int i = 0; i < 3; ++i) {
      es[i] = g.edge_of(r[i]);
      eps[i] = g.src_half(es[i], o) == r[i] ? 1 : -1;
    }
    // sorted variable order for the factor, keeping the rotation slot of each variable
    std::vector<int> slots{0, 1, 2};
    std::sort(slots.begin(), slots.end(), [&](int x, int y) { return es[x] < es[y]; });
    Factor f;
    for (int s : slots) {
      f.vars.push_back(es[s]);
      f.dims.push_back(col[es[s]] + 1);
    }
    f.data.assign(static_cast<size_t>(f.dims[0]) * f.dims[1] * f.dims[2], 0.0);
    std::vector<int> idx(3);
    for (idx[0] = 0; idx[0] < f.dims[0]; ++idx[0])
      for (idx[1] = 0; idx[1] < f.dims[1]; ++idx[1])
        for (idx[2] = 0; idx[2] < f.dims[2]; ++idx[2]) {
          int tm[3];
          for (int i = 0; i < 3; ++i) tm[slots[i]] = eps[slots[i]] * (-col[es[slots[i]]] + 2 * idx[i]);
          double x = three_j_double(col[es[0]], col[es[1]], col[es[2]], tm[0], tm[1], tm[2]);
          f.data[flat_index(f.dims, idx)] = absolute ? std::abs(x) : x;
        }
    fs.push_back(std::move(f));
  }
  return fs;
}

}  // namespace

EvaluationResult evaluate_tensor(const PlanarGraph& g, const Orientation& o, const Coloring& col) {
  require_admissible(g, col);
  std::vector<int> dims(col.begin(), col.end());
  for (int& d : dims) d += 1;
  EvaluationResult r;
  r.value = contract(build_network(g, o, col, false), dims);
  // every term is bounded by the contraction of absolute values
  double bound = contract(build_network(g, o, col, true), dims);
  const int nsym = g.num_vertices();
  r.error = bound * (nsym * 1e-12 + 8.0 * (g.num_edges() + nsym) * DBL_EPSILON);
  r.norm = Normalization::Tensor;
  return r;
}

RadicalSum evaluate_tensor_exact(const PlanarGraph& g, const Orientation& o, const Coloring& col) {
  require_admissible(g, col);
  const int ne = g.num_edges();
  std::vector<int> tm(ne, 0);
  RadicalSum total;
  std::function<void(int)> rec = [&](int e) {
    if (e == ne) {
      QSqrt prod(Rational(1));
      int ph = 0;
      for (int k = 0; k < ne; ++k) ph += col[k] - tm[k];
      for (int v = 0; v < g.num_vertices() && !prod.is_zero(); ++v) {
        const auto& r = g.rotation(v);
        int c[3], m[3];
        for (int i = 0; i < 3; ++i) {
          int ed = g.edge_of(r[i]);
          c[i] = col[ed];
          m[i] = (g.src_half(ed, o) == r[i] ? 1 : -1) * tm[ed];
        }
        prod = prod * three_j(c[0], c[1], c[2], m[0], m[1], m[2]);
      }
      if (!prod.is_zero()) total += phase(ph) > 0 ? prod : -prod;
      return;
    }
    for (int k = 0; k <= col[e]; ++k) {
      tm[e] = -col[e] + 2 * k;
      rec(e + 1);
    }
  };
  rec(0);
  return total;
}

Integer integral_norm_square(const PlanarGraph& g, const Coloring& col) {
  require_admissible(g, col);
  auto J = vertex_spin_sums(g, col);
  Integer num = 1, den = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    num *= factorial(J[v] + 1);
    for (int h : g.rotation(v)) den *= factorial(J[v] - col[g.edge_of(h)]);
  }
  return num / den;
}

Rational skein_factor(const PlanarGraph& g, const Coloring& col) {
  require_admissible(g, col);
  auto J = vertex_spin_sums(g, col);
  Integer num = 1, den = 1;
  for (int c : col) num *= factorial(c);
  // j_alpha for the angle opposite half-edge h is J_v - c(h)
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int h : g.rotation(v)) den *= factorial(J[v] - col[g.edge_of(h)]);
  return Rational(num, den);
}

EvaluationResult to_integral(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col) {
  double f = std::sqrt(to_double(Rational(integral_norm_square(g, col))));
  EvaluationResult r = s;
  r.value = s.value * f;
  r.error = s.error * f;
  r.norm = Normalization::Integral;
  if (r.exact) r.exact.reset();
  return r;
}

EvaluationResult to_unitary(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col) {
  require_admissible(g, col);
  long sum = 0;
  for (int c : col) sum += c;
  // sum_v J_v = sum_e c_e
  if (sum % 2 != 0) throw Error(ErrorKind::UndefinedSign, "sum of colours is odd; (-1)^{sum J_v / 2} is not a sign");
  EvaluationResult r = s;
  if ((sum / 2) % 2 != 0) {
    r.value = -r.value;
    if (r.exact) r.exact = -*r.exact;
  }
  r.norm = Normalization::Unitary;
  return r;
}

EvaluationResult to_skein(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col) {
  EvaluationResult r = s.norm == Normalization::Integral ? s : to_integral(s, g, col);
  Rational f = skein_factor(g, col);
  double fd = to_double(f);
  r.value *= fd;
  r.error *= fd;
  if (r.exact) *r.exact *= f;
  r.norm = Normalization::Skein;
  return r;
}

EvaluationResult evaluate(const PlanarGraph& g, const Orientation& o, const Coloring& col, Normalization n) {
  EvaluationResult s = evaluate_tensor(g, o, col);
  switch (n) {
    case Normalization::Tensor: return s;
    case Normalization::Integral: return to_integral(s, g, col);
    case Normalization::Unitary: return to_unitary(s, g, col);
    case Normalization::Skein: return to_skein(s, g, col);
  }
  return s;
}

TruncatedSeries z_spin_series(const PlanarGraph& g, int D, const std::vector<int>& caps) {
  return series_inverse_square(p_gamma(g), D, caps);
}

namespace {

std::vector<Coloring> all_colorings(const PlanarGraph& g, int max_color, bool admissible_only) {
  std::vector<Coloring> out;
  const int ne = g.num_edges();
  Coloring c(ne, 0);
  while (true) {
    if (!admissible_only || is_admissible(g, c)) out.push_back(c);
    int i = 0;
    while (i < ne && ++c[i] > max_color) c[i++] = 0;
    if (i == ne) break;
  }
  return out;
}

struct ColoringCheck {
  bool match = true;
  double diff = 0;
};

ColoringCheck compare_one(const PlanarGraph& g, const Orientation& o, const Coloring& col, const TruncatedSeries& z,
                          double tol) {
  EvaluationResult r = to_integral(evaluate_tensor(g, o, col), g, col);
  double exact = to_double(z.coeff(Exponents(col.begin(), col.end())));
  double diff = std::abs(r.value - exact);
  return {diff <= std::max(tol * std::max(1.0, std::abs(exact)), r.error), diff};
}

}  // namespace

ComparisonReport verify_comparison_theorem(const PlanarGraph& g, const Orientation& o, int max_color,
                                           const ComparisonOptions& opt) {
  ComparisonReport rep;
  const int ne = g.num_edges();
  auto cols = all_colorings(g, max_color, true);
  TruncatedSeries z = z_spin_series(g, ne * max_color, std::vector<int>(ne, max_color));
  std::vector<ColoringCheck> res(cols.size());
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(cols.size()); ++i) res[i] = compare_one(g, o, cols[i], z, opt.tolerance);
  } else {
    for (size_t i = 0; i < cols.size(); ++i) res[i] = compare_one(g, o, cols[i], z, opt.tolerance);
  }
  rep.colorings = static_cast<long>(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) {
    rep.max_error = std::max(rep.max_error, res[i].diff);
    if (!res[i].match) {
      rep.ok = false;
      rep.mismatches.push_back(cols[i]);
    }
  }
  if (opt.check_only_if) {
    // every single-edge flip leaves the Kasteleyn class; some curve colouring must then fail
    rep.only_if_checked = true;
    TruncatedSeries z1 = z_spin_series(g, ne, std::vector<int>(ne, 1));
    auto curves = all_colorings(g, 1, true);
    bool all_flips_detected = true;
    for (int e = 0; e < ne; ++e) {
      Orientation bad = o;
      bad[e] ^= 1;
      if (is_kasteleyn(g, bad).ok) continue;
      bool detected = false;
      for (const auto& c : curves)
        if (!compare_one(g, bad, c, z1, opt.tolerance).match) {
          detected = true;
          break;
        }
      all_flips_detected &= detected;
    }
    rep.only_if_detected = all_flips_detected;
  }
  return rep;
}

WhiteheadResult whitehead_move(const PlanarGraph& g, const Orientation& o, int e) {
  if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::InvalidEdge, "edge index " + std::to_string(e));
  const int ea = g.src_half(e, o), eb = g.dst_half(e, o);
  const int a = g.vertex(ea), b = g.vertex(eb);
  if (a == b) throw Error(ErrorKind::InvalidEdge, "move undefined on a self-loop");
  for (int f = 0; f < g.num_edges(); ++f)
    if (f != e && ((g.src(f) == a && g.dst(f) == b) || (g.src(f) == b && g.dst(f) == a)))
      throw Error(ErrorKind::InvalidEdge, "endpoints of the edge share another edge");
  const int p1 = g.next_ccw(ea), p2 = g.next_ccw(p1);
  const int q1 = g.next_ccw(eb), q2 = g.next_ccw(q1);
  std::vector<std::array<int, 3>> rot;
  std::vector<std::array<int, 2>> edges;
  std::vector<long> vids, eids, hids;
  for (int v = 0; v < g.num_vertices(); ++v) {
    rot.push_back(g.rotation(v));
    vids.push_back(g.vertex_id(v));
  }
  rot[a] = {ea, p2, q1};
  rot[b] = {eb, q2, p1};
  for (int k = 0; k < g.num_edges(); ++k) {
    edges.push_back({g.src_half(k), g.dst_half(k)});
    eids.push_back(g.edge_id(k));
  }
  for (int h = 0; h < g.num_half_edges(); ++h) hids.push_back(g.half_id(h));
  PlanarGraph out(rot, edges, vids, eids, hids);
  WhiteheadResult r{std::move(out), o, e, g.edge_of(p2), g.edge_of(p1), g.edge_of(q2), g.edge_of(q1)};
  r.orientation[e] ^= 1;          // e now runs b -> a
  r.orientation[r.j1_edge] ^= 1;  // restores the Kasteleyn class
  return r;
}

}  // namespace duality
