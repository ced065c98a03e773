#include <gtest/gtest.h>

#include <set>

#include "duality/errors.hpp"
#include "duality/graph.hpp"

using namespace duality;

namespace {

const char* kThetaFile = R"(# theta graph
vertex 1 10 11 12
vertex 2 20 22 21
edge 1 10 20
edge 2 11 21
edge 3 12 22
)";

const char* kK4File = R"(vertex 1 0 1 2
vertex 2 3 4 5
vertex 3 6 7 8
vertex 4 9 10 11
edge 1 0 4
edge 2 3 7
edge 3 6 1
edge 4 2 9
edge 5 5 11
edge 6 8 10
)";

// two triangles joined by one edge
const char* kBridgeFile = R"(vertex 1 0 1 2
vertex 2 3 4 5
vertex 3 6 7 8
vertex 4 9 10 11
vertex 5 12 13 14
vertex 6 15 16 17
edge 1 0 4
edge 2 3 7
edge 3 6 1
edge 4 2 9
edge 5 10 14
edge 6 13 17
edge 7 16 11
edge 8 5 12
edge 9 8 15
)";

std::vector<EdgeMask> brute_even(const PlanarGraph& g) {
  std::vector<EdgeMask> out;
  for (EdgeMask m = 0; m < (EdgeMask(1) << g.num_edges()); ++m) {
    std::vector<int> deg(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e)
      if ((m >> e) & 1) ++deg[g.src(e)], ++deg[g.dst(e)];
    bool ok = true;
    for (int d : deg) ok = ok && d % 2 == 0;
    if (ok) out.push_back(m);
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::UndefinedSign;
}

}  // namespace

TEST(LoadGraph, ThetaAndK4FaceCounts) {
  auto th = load_graph(kThetaFile);
  EXPECT_EQ(th.num_vertices(), 2);
  EXPECT_EQ(th.num_faces(), 3);
  auto k4 = load_graph(kK4File);
  EXPECT_EQ(k4.num_faces(), 4);
}

TEST(LoadGraph, RejectsBridge) {
  EXPECT_EQ(kind_of([] { load_graph(kBridgeFile); }), ErrorKind::Topology);
}

TEST(LoadGraph, ParseErrors) {
  EXPECT_EQ(kind_of([] { load_graph("vertex 1 0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_graph("vertex 1 0 1 2\nvertex 1 3 4 5\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_graph("vertex x 0 1 2\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_graph("face 1 2 3\n"); }), ErrorKind::Parse);
}

TEST(LoadGraph, RejectsNonPlanarRotation) {
  // theta with one vertex rotation reversed is a torus embedding with a single face
  const char* bad = "vertex 1 10 11 12\nvertex 2 20 21 22\nedge 1 10 20\nedge 2 11 21\nedge 3 12 22\n";
  EXPECT_EQ(kind_of([&] { load_graph(bad); }), ErrorKind::Topology);
}

TEST(LoadGraph, RoundTripThroughText) {
  for (const auto& name : generator_names()) {
    auto g = generate(name);
    auto h = load_graph(to_text(g));
    EXPECT_EQ(to_text(h), to_text(g));
    EXPECT_EQ(h.num_faces(), g.num_faces());
  }
}

TEST(Generate, Counts) {
  struct Want {
    const char* name;
    int v, e, f;
  };
  for (auto w : {Want{"theta", 2, 3, 3}, Want{"k4", 4, 6, 4}, Want{"prism3", 6, 9, 5}, Want{"cube", 8, 12, 6},
                 Want{"dodecahedron", 20, 30, 12}}) {
    auto g = generate(w.name);
    EXPECT_EQ(g.num_vertices(), w.v) << w.name;
    EXPECT_EQ(g.num_edges(), w.e) << w.name;
    EXPECT_EQ(g.num_faces(), w.f) << w.name;
  }
  EXPECT_EQ(kind_of([] { generate("honeycomb_torus"); }), ErrorKind::UnsupportedGenerator);
}

TEST(Generate, DodecahedronFacesArePentagons) {
  auto g = generate("dodecahedron");
  for (int f = 0; f < g.num_faces(); ++f) EXPECT_EQ(g.face(f).size(), 5u);
}

TEST(HalfEdges, TwinInvolutionAndFacePartition) {
  for (const auto& name : generator_names()) {
    auto g = generate(name);
    std::vector<int> hits(g.num_half_edges(), 0);
    for (int h = 0; h < g.num_half_edges(); ++h) {
      EXPECT_EQ(g.twin(g.twin(h)), h);
      EXPECT_NE(g.twin(h), h);
    }
    for (int f = 0; f < g.num_faces(); ++f)
      for (int h : g.face(f)) ++hits[h];
    for (int c : hits) EXPECT_EQ(c, 1);
  }
}

TEST(EvenSubgraphs, MatchBruteForceAndCount) {
  for (const auto& name : {"theta", "k4", "prism3", "cube"}) {
    auto g = generate(name);
    auto got = enumerate_even_subgraphs(g);
    EXPECT_EQ(got, brute_even(g)) << name;
    EXPECT_EQ(got.size(), size_t(1) << (g.num_edges() - g.num_vertices() + 1));
  }
  EXPECT_EQ(enumerate_even_subgraphs(generate("theta")).size(), 4u);
  EXPECT_EQ(enumerate_even_subgraphs(generate("k4")).size(), 8u);
  EXPECT_EQ(enumerate_even_subgraphs(generate("dodecahedron")).size(), size_t(1) << 11);
}

TEST(EvenSubgraphs, K4Composition) {
  auto g = generate("k4");
  std::multiset<int> sizes;
  for (EdgeMask m : enumerate_even_subgraphs(g)) sizes.insert(__builtin_popcountll(m));
  EXPECT_EQ(sizes.count(0), 1u);
  EXPECT_EQ(sizes.count(3), 4u);
  EXPECT_EQ(sizes.count(4), 3u);
}

TEST(EvenSubgraphs, SizeLimit) {
  EXPECT_EQ(kind_of([] { enumerate_even_subgraphs(generate("dodecahedron"), 20); }), ErrorKind::SizeLimit);
}

TEST(Cycles, NotACycle) {
  auto g = generate("k4");
  EXPECT_EQ(kind_of([&] { cycle_from_mask(g, 0b000011); }), ErrorKind::NotACycle);
  EXPECT_EQ(kind_of([&] { cycle_from_mask(g, 0); }), ErrorKind::NotACycle);
}

TEST(Cycles, FigureConfigurationOnK4) {
  // outer triangle of K4 around the central vertex, outer face outside the triangle
  auto g = generate("k4");
  Cycle c = cycle_from_mask(g, 0b000111);
  int outer = -1;
  for (int f = 0; f < g.num_faces(); ++f) {
    bool touches_center = false;
    for (int h : g.face(f)) touches_center |= g.vertex(h) == 3;
    if (!touches_center) outer = f;
  }
  ASSERT_GE(outer, 0);
  auto s = cycle_statistics(g, c, outer, g.stored_orientation());
  EXPECT_EQ(s.interior_faces, 3);
  EXPECT_EQ(s.interior_vertices, 1);
  EXPECT_EQ(s.interior_edges, 3);
  EXPECT_EQ(s.large_angles, 3);
}

TEST(Cycles, FaceBoundaryHasNoInteriorAndEvenLargeAngles) {
  for (const auto& name : generator_names()) {
    auto g = generate(name);
    for (int f = 0; f < g.num_faces(); ++f) {
      EdgeMask m = 0;
      for (int h : g.face(f)) m |= EdgeMask(1) << g.edge_of(h);
      Cycle c = cycle_from_mask(g, m);
      int outer = g.face_of(g.twin(g.face(f)[0]));
      auto s = cycle_statistics(g, c, outer, g.stored_orientation());
      EXPECT_EQ(s.interior_vertices, 0);
      EXPECT_EQ(s.interior_faces, 1);
      EXPECT_EQ(s.large_angles % 2, 0);
    }
  }
}

TEST(Cycles, LargeAngleParityEqualsInteriorVertexParity) {
  for (const auto& name : {"theta", "k4", "prism3", "cube"}) {
    auto g = generate(name);
    for (EdgeMask m : simple_cycles(g)) {
      Cycle c = cycle_from_mask(g, m);
      for (int outer = 0; outer < g.num_faces(); ++outer) {
        auto s = cycle_statistics(g, c, outer, g.stored_orientation());
        EXPECT_EQ(s.large_angles % 2, s.interior_vertices % 2) << name << " mask " << m;
        // Euler on the disc: a(c) = 2(F-1) - V_int
        EXPECT_EQ(s.large_angles, 2 * (s.interior_faces - 1) - s.interior_vertices);
      }
    }
  }
}

TEST(Cycles, K4HasSevenCycles) { EXPECT_EQ(simple_cycles(generate("k4")).size(), 7u); }
