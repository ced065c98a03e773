#include "duality/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

PlanarGraph::PlanarGraph(std::vector<std::array<int, 3>> rotations, std::vector<std::array<int, 2>> edges,
                         std::vector<long> vertex_ids, std::vector<long> edge_ids, std::vector<long> half_ids)
    : rotations_(std::move(rotations)), edges_(std::move(edges)) {
  const int nv = num_vertices(), ne = num_edges(), nh = 2 * ne;
  if (vertex_ids.empty()) {
    vertex_ids.resize(nv);
    std::iota(vertex_ids.begin(), vertex_ids.end(), 1);
  }
  if (edge_ids.empty()) {
    edge_ids.resize(ne);
    std::iota(edge_ids.begin(), edge_ids.end(), 1);
  }
  if (half_ids.empty()) {
    half_ids.resize(nh);
    std::iota(half_ids.begin(), half_ids.end(), 0);
  }
  vertex_ids_ = std::move(vertex_ids);
  edge_ids_ = std::move(edge_ids);
  half_ids_ = std::move(half_ids);
  if (nv == 0) throw Error(ErrorKind::Topology, "graph has no vertices");
  if (3 * nv != nh) throw Error(ErrorKind::Topology, "half-edge count is not 3 * #V (not trivalent)");

  twin_.assign(nh, -1);
  vertex_.assign(nh, -1);
  next_.assign(nh, -1);
  edge_of_.assign(nh, -1);
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 2; ++k) {
      int h = edges_[e][k];
      if (h < 0 || h >= nh) throw Error(ErrorKind::Topology, "edge " + std::to_string(edge_ids_[e]) + " has a bad half-edge");
      if (edge_of_[h] >= 0)
        throw Error(ErrorKind::Topology, "half-edge " + std::to_string(half_ids_[h]) + " belongs to two edges");
      edge_of_[h] = e;
    }
    twin_[edges_[e][0]] = edges_[e][1];
    twin_[edges_[e][1]] = edges_[e][0];
  }
  for (int v = 0; v < nv; ++v) {
    for (int k = 0; k < 3; ++k) {
      int h = rotations_[v][k];
      if (h < 0 || h >= nh) throw Error(ErrorKind::Topology, "vertex " + std::to_string(vertex_ids_[v]) + " has a bad half-edge");
      if (vertex_[h] >= 0)
        throw Error(ErrorKind::Topology, "half-edge " + std::to_string(half_ids_[h]) + " belongs to two vertices");
      vertex_[h] = v;
      next_[h] = rotations_[v][(k + 1) % 3];
    }
  }
  for (int h = 0; h < nh; ++h) {
    if (vertex_[h] < 0) throw Error(ErrorKind::Topology, "half-edge " + std::to_string(half_ids_[h]) + " has no vertex");
    if (twin_[h] == h) throw Error(ErrorKind::Topology, "half-edge " + std::to_string(half_ids_[h]) + " is its own twin");
  }

  // connectivity
  std::vector<char> seen(nv, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : rotations_[v]) {
      int w = vertex_[twin_[h]];
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  for (int v = 0; v < nv; ++v)
    if (!seen[v]) throw Error(ErrorKind::Topology, "graph is disconnected at vertex " + std::to_string(vertex_ids_[v]));

  // faces: h -> next_ccw(twin(h))
  face_of_.assign(nh, -1);
  for (int h0 = 0; h0 < nh; ++h0) {
    if (face_of_[h0] >= 0) continue;
    int f = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int h = h0;
    do {
      face_of_[h] = f;
      faces_[f].push_back(h);
      h = next_[twin_[h]];
    } while (h != h0);
  }
  if (nv - ne + num_faces() != 2)
    throw Error(ErrorKind::Topology, "Euler characteristic " + std::to_string(nv - ne + num_faces()) +
                                         " != 2; rotation system is not a sphere embedding");
  for (int e = 0; e < ne; ++e)
    if (face_of_[edges_[e][0]] == face_of_[edges_[e][1]])
      throw Error(ErrorKind::Topology, "edge " + std::to_string(edge_ids_[e]) + " is a bridge");
}

int PlanarGraph::edge_index(long id) const {
  for (int e = 0; e < num_edges(); ++e)
    if (edge_ids_[e] == id) return e;
  throw Error(ErrorKind::InvalidEdge, "no edge with id " + std::to_string(id));
}

int PlanarGraph::vertex_index(long id) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (vertex_ids_[v] == id) return v;
  throw Error(ErrorKind::Topology, "no vertex with id " + std::to_string(id));
}

std::vector<std::string> PlanarGraph::variable_names() const {
  std::vector<std::string> names;
  for (long id : edge_ids_) names.push_back("Y" + std::to_string(id));
  return names;
}

std::vector<Angle> PlanarGraph::angles() const {
  std::vector<Angle> out;
  for (int v = 0; v < num_vertices(); ++v)
    for (int k = 0; k < 3; ++k) out.push_back({v, rotations_[v][k], rotations_[v][(k + 1) % 3]});
  return out;
}

PlanarGraph load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<long> vids, eids, hids;
  std::vector<std::array<long, 3>> vrot;
  std::vector<std::array<long, 2>> epairs;
  std::map<long, int> half_index;
  auto half = [&](long id) {
    auto [it, inserted] = half_index.try_emplace(id, static_cast<int>(hids.size()));
    if (inserted) hids.push_back(id);
    return it->second;
  };
  auto parse_id = [&](const std::string& tok) -> long {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": bad id '" + tok + "'");
    return std::stol(tok);
  };
  std::map<long, int> vseen, eseen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 5)
        throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": vertex needs an id and exactly 3 half-edges");
      long id = parse_id(tok[1]);
      if (!vseen.emplace(id, lineno).second)
        throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": duplicate vertex id " + tok[1]);
      vids.push_back(id);
      vrot.push_back({parse_id(tok[2]), parse_id(tok[3]), parse_id(tok[4])});
    } else if (tok[0] == "edge") {
      if (tok.size() != 4)
        throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": edge needs an id and 2 half-edges");
      long id = parse_id(tok[1]);
      if (!eseen.emplace(id, lineno).second)
        throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": duplicate edge id " + tok[1]);
      eids.push_back(id);
      epairs.push_back({parse_id(tok[2]), parse_id(tok[3])});
    } else {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown record '" + tok[0] + "'");
    }
  }
  std::vector<std::array<int, 3>> rotations;
  for (const auto& r : vrot) rotations.push_back({half(r[0]), half(r[1]), half(r[2])});
  std::vector<std::array<int, 2>> edges;
  for (const auto& p : epairs) {
    if (!half_index.count(p[0]) || !half_index.count(p[1]))
      throw Error(ErrorKind::Topology, "edge references a half-edge that no vertex lists");
    edges.push_back({half(p[0]), half(p[1])});
  }
  if (hids.size() != 2 * edges.size())
    throw Error(ErrorKind::Topology, "some half-edge is not paired by an edge record");
  return PlanarGraph(std::move(rotations), std::move(edges), std::move(vids), std::move(eids), std::move(hids));
}

PlanarGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

std::string to_text(const PlanarGraph& g, const Orientation& o) {
  std::ostringstream out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& r = g.rotation(v);
    out << "vertex " << g.vertex_id(v) << ' ' << g.half_id(r[0]) << ' ' << g.half_id(r[1]) << ' '
        << g.half_id(r[2]) << '\n';
  }
  for (int e = 0; e < g.num_edges(); ++e)
    out << "edge " << g.edge_id(e) << ' ' << g.half_id(g.src_half(e, o)) << ' ' << g.half_id(g.dst_half(e, o)) << '\n';
  return out.str();
}

std::string to_text(const PlanarGraph& g) { return to_text(g, g.stored_orientation()); }

namespace {

// Edge e runs u -> v; half 2e sits at u, 2e+1 at v. Directions give the drawing angle of
// each half-edge, which fixes the counter-clockwise rotation.
PlanarGraph from_directions(int nv, const std::vector<std::array<int, 2>>& ends,
                            const std::vector<std::array<double, 2>>& dirs) {
  std::vector<std::vector<std::pair<double, int>>> at(nv);
  for (size_t e = 0; e < ends.size(); ++e) {
    at[ends[e][0]].emplace_back(dirs[e][0], static_cast<int>(2 * e));
    at[ends[e][1]].emplace_back(dirs[e][1], static_cast<int>(2 * e + 1));
  }
  std::vector<std::array<int, 3>> rot(nv);
  for (int v = 0; v < nv; ++v) {
    if (at[v].size() != 3) throw Error(ErrorKind::Topology, "generator produced a non-trivalent vertex");
    std::sort(at[v].begin(), at[v].end());
    rot[v] = {at[v][0].second, at[v][1].second, at[v][2].second};
  }
  std::vector<std::array<int, 2>> edges;
  for (size_t e = 0; e < ends.size(); ++e) edges.push_back({static_cast<int>(2 * e), static_cast<int>(2 * e + 1)});
  return PlanarGraph(std::move(rot), std::move(edges));
}

PlanarGraph from_layout(const std::vector<std::array<double, 2>>& pos, const std::vector<std::array<int, 2>>& ends) {
  std::vector<std::array<double, 2>> dirs;
  for (const auto& [u, v] : ends) {
    double dx = pos[v][0] - pos[u][0], dy = pos[v][1] - pos[u][1];
    dirs.push_back({std::atan2(dy, dx), std::atan2(-dy, -dx)});
  }
  return from_directions(static_cast<int>(pos.size()), ends, dirs);
}

std::vector<std::array<double, 2>> ring(int n, double radius, double phase_deg) {
  std::vector<std::array<double, 2>> p;
  for (int i = 0; i < n; ++i) {
    double a = (phase_deg + 360.0 * i / n) * std::numbers::pi / 180.0;
    p.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return p;
}

}  // namespace

std::vector<std::string> generator_names() { return {"theta", "k4", "prism3", "cube", "dodecahedron"}; }

PlanarGraph generate(const std::string& name) {
  if (name == "theta") {
    // two vertices side by side; edges 1 (upper arc), 2 (straight), 3 (lower arc)
    return from_directions(2, {{0, 1}, {0, 1}, {0, 1}}, {{0.7, 2.4}, {0.0, 3.1}, {-0.7, 3.9}});
  }
  if (name == "k4") {
    auto pos = ring(3, 2.0, 90);
    pos.push_back({0.0, 0.0});
    return from_layout(pos, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
  }
  if (name == "prism3") {
    auto pos = ring(3, 2.0, 90);
    auto in = ring(3, 1.0, 90);
    pos.insert(pos.end(), in.begin(), in.end());
    return from_layout(pos, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  }
  if (name == "cube") {
    auto pos = ring(4, 2.0, 45);
    auto in = ring(4, 1.0, 45);
    pos.insert(pos.end(), in.begin(), in.end());
    return from_layout(pos, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
  }
  if (name == "dodecahedron") {
    // a: outer pentagon, b: spokes, c: zigzag partners, d: inner pentagon
    auto a = ring(5, 3.0, 90), b = ring(5, 2.0, 90), c = ring(5, 1.7, 126), d = ring(5, 1.0, 126);
    std::vector<std::array<double, 2>> pos;
    for (auto* r : {&a, &b, &c, &d}) pos.insert(pos.end(), r->begin(), r->end());
    std::vector<std::array<int, 2>> ends;
    for (int i = 0; i < 5; ++i) ends.push_back({i, (i + 1) % 5});
    for (int i = 0; i < 5; ++i) ends.push_back({i, 5 + i});
    for (int i = 0; i < 5; ++i) {
      ends.push_back({5 + i, 10 + i});
      ends.push_back({10 + i, 5 + (i + 1) % 5});
    }
    for (int i = 0; i < 5; ++i) ends.push_back({10 + i, 15 + i});
    for (int i = 0; i < 5; ++i) ends.push_back({15 + i, 15 + (i + 1) % 5});
    return from_layout(pos, ends);
  }
  throw Error(ErrorKind::UnsupportedGenerator,
              "'" + name + "' is not a sphere-embeddable generator (known: theta, k4, prism3, cube, dodecahedron)");
}

std::vector<EdgeMask> enumerate_even_subgraphs(const PlanarGraph& g, int max_edges) {
  const int ne = g.num_edges(), nv = g.num_vertices();
  if (ne > max_edges || ne > 63)
    throw Error(ErrorKind::SizeLimit, std::to_string(ne) + " edges exceeds the enumeration bound " + std::to_string(max_edges));
  // BFS spanning tree; every co-tree edge closes one fundamental cycle
  std::vector<int> parent_edge(nv, -1), depth(nv, -1);
  std::vector<char> tree(ne, 0);
  std::queue<int> q;
  q.push(0);
  depth[0] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : g.rotation(v)) {
      int w = g.vertex(g.twin(h));
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        parent_edge[w] = g.edge_of(h);
        tree[g.edge_of(h)] = 1;
        q.push(w);
      }
    }
  }
  auto other = [&](int e, int v) { return g.src(e) == v ? g.dst(e) : g.src(e); };
  std::vector<EdgeMask> basis;
  for (int e = 0; e < ne; ++e) {
    if (tree[e]) continue;
    EdgeMask m = EdgeMask(1) << e;
    int u = g.src(e), v = g.dst(e);
    while (u != v) {
      if (depth[u] < depth[v]) std::swap(u, v);
      int pe = parent_edge[u];
      m ^= EdgeMask(1) << pe;
      u = other(pe, u);
    }
    basis.push_back(m);
  }
  const size_t k = basis.size();
  std::vector<EdgeMask> out;
  out.reserve(size_t(1) << k);
  EdgeMask cur = 0;
  out.push_back(cur);
  for (uint64_t i = 1; i < (uint64_t(1) << k); ++i) {
    cur ^= basis[__builtin_ctzll(i)];  // Gray code step
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int component_count(const PlanarGraph& g, EdgeMask mask) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<char> touched(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!((mask >> e) & 1)) continue;
    touched[g.src(e)] = touched[g.dst(e)] = 1;
    parent[find(g.src(e))] = find(g.dst(e));
  }
  int count = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (touched[v] && find(v) == v) ++count;
  return count;
}

std::vector<EdgeMask> simple_cycles(const PlanarGraph& g, int max_edges) {
  std::vector<EdgeMask> out;
  for (EdgeMask m : enumerate_even_subgraphs(g, max_edges))
    if (m && component_count(g, m) == 1) out.push_back(m);
  return out;
}

Cycle cycle_from_mask(const PlanarGraph& g, EdgeMask mask) {
  if (!mask) throw Error(ErrorKind::NotACycle, "empty edge set");
  std::vector<int> deg(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e)
    if ((mask >> e) & 1) ++deg[g.src(e)], ++deg[g.dst(e)];
  for (int d : deg)
    if (d != 0 && d != 2) throw Error(ErrorKind::NotACycle, "edge set has a vertex of degree " + std::to_string(d));
  if (component_count(g, mask) != 1) throw Error(ErrorKind::NotACycle, "edge set is not connected");
  Cycle c;
  c.mask = mask;
  int e0 = __builtin_ctzll(mask);
  int v = g.src(e0), e = e0;
  do {
    c.vertices.push_back(v);
    c.edges.push_back(e);
    int w = g.src(e) == v ? g.dst(e) : g.src(e);
    int next = -1;
    for (int h : g.rotation(w)) {
      int f = g.edge_of(h);
      if (f != e && ((mask >> f) & 1)) next = f;
    }
    v = w;
    e = next;
  } while (e != e0);
  return c;
}

CycleStats cycle_statistics(const PlanarGraph& g, const Cycle& c, int outer_face, const Orientation& o) {
  if (outer_face < 0 || outer_face >= g.num_faces()) throw Error(ErrorKind::NotACycle, "no such outer face");
  const EdgeMask mask = c.mask;
  auto on = [&](int e) { return ((mask >> e) & 1) != 0; };
  // faces reachable from the outer face without crossing c are exterior
  std::vector<uint8_t> outside(g.num_faces(), 0);
  std::queue<int> q;
  q.push(outer_face);
  outside[outer_face] = 1;
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (int h : g.face(f)) {
      if (on(g.edge_of(h))) continue;
      int nf = g.face_of(g.twin(h));
      if (!outside[nf]) {
        outside[nf] = 1;
        q.push(nf);
      }
    }
  }
  CycleStats s;
  s.interior.assign(g.num_faces(), 0);
  for (int f = 0; f < g.num_faces(); ++f)
    if (!outside[f]) {
      s.interior[f] = 1;
      ++s.interior_faces;
    }
  std::vector<char> on_cycle(g.num_vertices(), 0);
  for (int v : c.vertices) on_cycle[v] = 1;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!on_cycle[v] && s.interior[g.face_of(g.rotation(v)[0])]) ++s.interior_vertices;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (on(e)) {
      // the half-edge whose face is interior runs clockwise around that face
      int h = s.interior[g.face_of(g.src_half(e))] ? g.src_half(e) : g.dst_half(e);
      if (h == g.src_half(e, o)) ++s.clockwise_edges;
    } else if (s.interior[g.face_of(g.src_half(e))]) {
      ++s.interior_edges;
    }
  }
  for (int v : c.vertices)
    for (int h : g.rotation(v))
      if (!on(g.edge_of(h)) && s.interior[g.face_of(h)]) ++s.large_angles;
  return s;
}

}  // namespace duality

namespace duality {

std::vector<int> embedding_code(const PlanarGraph& g) {
  const int nv = g.num_vertices();
  std::vector<int> best;
  for (int h0 = 0; h0 < g.num_half_edges(); ++h0) {
    std::vector<int> num(nv, -1), entry(nv, -1), order;
    num[g.vertex(h0)] = 0;
    entry[g.vertex(h0)] = h0;
    order.push_back(g.vertex(h0));
    for (size_t i = 0; i < order.size(); ++i) {
      int h = entry[order[i]];
      for (int k = 0; k < 3; ++k, h = g.next_ccw(h)) {
        int t = g.twin(h), u = g.vertex(t);
        if (num[u] < 0) {
          num[u] = static_cast<int>(order.size());
          entry[u] = t;
          order.push_back(u);
        }
      }
    }
    std::vector<int> code;
    for (int v : order) {
      int h = entry[v];
      for (int k = 0; k < 3; ++k, h = g.next_ccw(h)) {
        int t = g.twin(h), u = g.vertex(t), pos = 0;
        for (int x = entry[u]; x != t; x = g.next_ccw(x)) ++pos;
        code.push_back(num[u]);
        code.push_back(pos);
      }
    }
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace duality
