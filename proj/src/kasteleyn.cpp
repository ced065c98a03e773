#include "duality/kasteleyn.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "duality/errors.hpp"

namespace duality {

int face_clockwise(const PlanarGraph& g, const Orientation& o, int f) {
  // faces are traced clockwise, so a traced half-edge that is its edge's source runs clockwise
  int count = 0;
  for (int h : g.face(f))
    if (g.src_half(g.edge_of(h), o) == h) ++count;
  return count;
}

KasteleynReport is_kasteleyn(const PlanarGraph& g, const Orientation& o) {
  KasteleynReport r;
  for (int f = 0; f < g.num_faces(); ++f) {
    int c = face_clockwise(g, o, f);
    r.clockwise.push_back(c);
    if (c % 2 == 0) r.ok = false;
  }
  return r;
}

Orientation make_kasteleyn(const PlanarGraph& g, int outer_face) {
  if (g.num_vertices() % 2) throw Error(ErrorKind::OddVertexCount, "Kasteleyn orientations need an even vertex count");
  const int ne = g.num_edges(), nf = g.num_faces();
  if (outer_face < 0 || outer_face >= nf) throw Error(ErrorKind::Topology, "no such outer face");
  Orientation o = g.stored_orientation();
  // primal BFS spanning tree
  std::vector<char> tree(ne, 0), seen(g.num_vertices(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : g.rotation(v)) {
      int w = g.vertex(g.twin(h));
      if (!seen[w]) {
        seen[w] = 1;
        tree[g.edge_of(h)] = 1;
        q.push(w);
      }
    }
  }
  // dual BFS over co-tree edges from the outer face, smallest face id first
  std::vector<int> parent_edge(nf, -1), order;
  std::vector<char> reached(nf, 0);
  std::queue<int> dq;
  dq.push(outer_face);
  reached[outer_face] = 1;
  while (!dq.empty()) {
    int f = dq.front();
    dq.pop();
    order.push_back(f);
    std::vector<std::pair<int, int>> next;
    for (int h : g.face(f)) {
      int e = g.edge_of(h);
      if (tree[e]) continue;
      int nf2 = g.face_of(g.twin(h));
      if (!reached[nf2]) next.emplace_back(nf2, e);
    }
    std::sort(next.begin(), next.end());
    for (auto [nf2, e] : next) {
      if (reached[nf2]) continue;
      reached[nf2] = 1;
      parent_edge[nf2] = e;
      dq.push(nf2);
    }
  }
  // leaf to root: each face sets its parent edge to make itself odd
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int f = *it;
    if (f == outer_face) continue;
    if (face_clockwise(g, o, f) % 2 == 0) o[parent_edge[f]] ^= 1;
  }
  return o;
}

Orientation vertex_flip(const PlanarGraph& g, const Orientation& o, int v) {
  Orientation r = o;
  for (int h : g.rotation(v)) r[g.edge_of(h)] ^= 1;
  return r;
}

CycleLemmaReport check_cycle_lemma(const PlanarGraph& g, const Orientation& o, int outer_face) {
  CycleLemmaReport rep;
  for (EdgeMask m : simple_cycles(g)) {
    Cycle c = cycle_from_mask(g, m);
    auto s = cycle_statistics(g, c, outer_face, o);
    ++rep.cycles_checked;
    bool cl = (s.clockwise_edges % 2) == ((s.interior_vertices + 1) % 2);
    bool la = (s.large_angles % 2) == (s.interior_vertices % 2);
    if (!cl || !la) {
      rep.ok = false;
      rep.violation = m;
      rep.detail = "cycle mask " + std::to_string(m) + ": E_cl=" + std::to_string(s.clockwise_edges) +
                   " a=" + std::to_string(s.large_angles) + " V_int=" + std::to_string(s.interior_vertices);
      return rep;
    }
  }
  return rep;
}

EdgeMask orientation_mask(const Orientation& o) {
  EdgeMask m = 0;
  for (size_t e = 0; e < o.size(); ++e)
    if (o[e]) m |= EdgeMask(1) << e;
  return m;
}

Orientation orientation_from_mask(const PlanarGraph& g, EdgeMask m) {
  Orientation o(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) o[e] = (m >> e) & 1;
  return o;
}

std::vector<EdgeMask> kasteleyn_class(const PlanarGraph& g, const Orientation& o) {
  std::set<EdgeMask> seen{orientation_mask(o)};
  std::queue<EdgeMask> q;
  q.push(orientation_mask(o));
  while (!q.empty()) {
    EdgeMask m = q.front();
    q.pop();
    for (int v = 0; v < g.num_vertices(); ++v) {
      EdgeMask n = orientation_mask(vertex_flip(g, orientation_from_mask(g, m), v));
      if (seen.insert(n).second) q.push(n);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<EdgeMask> all_kasteleyn_orientations(const PlanarGraph& g) {
  if (g.num_edges() > 24) throw Error(ErrorKind::SizeLimit, "orientation scan limited to 24 edges");
  std::vector<EdgeMask> out;
  for (EdgeMask m = 0; m < (EdgeMask(1) << g.num_edges()); ++m)
    if (is_kasteleyn(g, orientation_from_mask(g, m)).ok) out.push_back(m);
  return out;
}

}  // namespace duality
