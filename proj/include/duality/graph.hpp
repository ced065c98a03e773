#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace duality {

// Angle at a vertex: t_half is the counter-clockwise successor of s_half.
struct Angle {
  int vertex;
  int s_half;
  int t_half;
};

// Per-edge flag: 1 means the edge points against its stored (src, dst) order.
using Orientation = std::vector<uint8_t>;

// Trivalent multigraph embedded in the sphere, stored as a rotation system on half-edges.
// Immutable after construction.
class PlanarGraph {
 public:
  // rotations[v]: the three half-edges at v in counter-clockwise order.
  // edges[e]: {src_half, dst_half}. Optional external ids default to 1-based vertices/edges.
  PlanarGraph(std::vector<std::array<int, 3>> rotations, std::vector<std::array<int, 2>> edges,
              std::vector<long> vertex_ids = {}, std::vector<long> edge_ids = {},
              std::vector<long> half_ids = {});

  int num_vertices() const { return static_cast<int>(rotations_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_half_edges() const { return 2 * num_edges(); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int twin(int h) const { return twin_[h]; }
  int vertex(int h) const { return vertex_[h]; }
  int next_ccw(int h) const { return next_[h]; }
  int prev_ccw(int h) const { return next_[next_[h]]; }
  int edge_of(int h) const { return edge_of_[h]; }
  int face_of(int h) const { return face_of_[h]; }
  const std::vector<int>& face(int f) const { return faces_[f]; }
  const std::array<int, 3>& rotation(int v) const { return rotations_[v]; }

  int src_half(int e) const { return edges_[e][0]; }
  int dst_half(int e) const { return edges_[e][1]; }
  int src(int e) const { return vertex_[edges_[e][0]]; }
  int dst(int e) const { return vertex_[edges_[e][1]]; }
  int src_half(int e, const Orientation& o) const { return edges_[e][o[e] ? 1 : 0]; }
  int dst_half(int e, const Orientation& o) const { return edges_[e][o[e] ? 0 : 1]; }

  long vertex_id(int v) const { return vertex_ids_[v]; }
  long edge_id(int e) const { return edge_ids_[e]; }
  long half_id(int h) const { return half_ids_[h]; }
  int edge_index(long id) const;
  int vertex_index(long id) const;
  // "Y<edge id>" for every edge, in edge order
  std::vector<std::string> variable_names() const;

  std::vector<Angle> angles() const;
  Orientation stored_orientation() const { return Orientation(num_edges(), 0); }

 private:
  std::vector<std::array<int, 3>> rotations_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<int> twin_, vertex_, next_, edge_of_, face_of_;
  std::vector<std::vector<int>> faces_;
  std::vector<long> vertex_ids_, edge_ids_, half_ids_;
};

PlanarGraph load_graph(const std::string& text);
PlanarGraph load_graph_file(const std::string& path);
std::string to_text(const PlanarGraph& g, const Orientation& o);
std::string to_text(const PlanarGraph& g);

// theta, k4, prism3, cube, dodecahedron. Anything else raises UnsupportedGenerator.
PlanarGraph generate(const std::string& name);
std::vector<std::string> generator_names();

using EdgeMask = uint64_t;

// All even subgraphs as edge bitmasks, ascending; built from a fundamental cycle basis.
std::vector<EdgeMask> enumerate_even_subgraphs(const PlanarGraph& g, int max_edges = 40);
int component_count(const PlanarGraph& g, EdgeMask mask);
std::vector<EdgeMask> simple_cycles(const PlanarGraph& g, int max_edges = 40);

struct Cycle {
  std::vector<int> edges;     // in walk order
  std::vector<int> vertices;  // vertices[i] joins edges[i-1] and edges[i]
  EdgeMask mask = 0;
};

Cycle cycle_from_mask(const PlanarGraph& g, EdgeMask mask);

struct CycleStats {
  int large_angles = 0;      // a(c)
  int clockwise_edges = 0;   // #E_cl(c)
  int interior_vertices = 0; // #V_int(c)
  int interior_edges = 0;
  int interior_faces = 0;
  std::vector<uint8_t> interior;  // per face
};

// Interior is the side of c not containing outer_face.
CycleStats cycle_statistics(const PlanarGraph& g, const Cycle& c, int outer_face, const Orientation& o);

}  // namespace duality

namespace duality {

// Canonical code of the embedding up to orientation-preserving relabelling: minimum over
// starting half-edges of a BFS description. Equal codes iff the rotation systems are isomorphic.
std::vector<int> embedding_code(const PlanarGraph& g);

}  // namespace duality
