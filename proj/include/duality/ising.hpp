#pragma once

#include <utility>
#include <vector>

#include "duality/graph.hpp"
#include "duality/poly.hpp"

namespace duality {

struct SweepOptions {
  bool parallel = true;
  int chunks = 0;  // 0 picks a count from the configuration space size
  int max_vertices = 24;
};

// Normalized partition function sum_sigma prod_e (1 + Y_e s_u s_v) / 2^V, exact.
Rational z_ising_bruteforce(const PlanarGraph& g, const std::vector<Rational>& Y, const SweepOptions& opt = {});
double z_ising_bruteforce(const PlanarGraph& g, const std::vector<double>& Y, const SweepOptions& opt = {});

// <s_a s_b> for each requested vertex pair, by the same sweep.
std::vector<Rational> spin_correlations(const PlanarGraph& g, const std::vector<Rational>& Y,
                                        const std::vector<std::pair<int, int>>& pairs, const SweepOptions& opt = {});
std::vector<double> spin_correlations(const PlanarGraph& g, const std::vector<double>& Y,
                                      const std::vector<std::pair<int, int>>& pairs, const SweepOptions& opt = {});

// Nearest-neighbour correlation g_e = <s_src(e) s_dst(e)>.
Rational nn_correlation(const PlanarGraph& g, const std::vector<Rational>& Y, int e, const SweepOptions& opt = {});
double nn_correlation(const PlanarGraph& g, const std::vector<double>& Y, int e, const SweepOptions& opt = {});

// Loop polynomial: sum over even subgraphs of prod Y_e.
SparsePoly p_gamma(const PlanarGraph& g);

// O(n) loop model: sum over even subgraphs of n^{components} prod Y_e.
Rational z_on_loop_model(const PlanarGraph& g, const Rational& n, const std::vector<Rational>& Y);
Rational z_on_loop_model(const PlanarGraph& g, const Rational& n, const Rational& Y);

// Triangle expansion: one vertex per half-edge of g; edge-type edges keep o, angle edges carry
// X_alpha (doubled exponents).
enum class TriangleOrientation { CounterClockwise, Clockwise };

struct DimerGraph {
  PlanarGraph graph;                // vertex h of the expansion sits on half-edge h of g
  std::vector<SparsePoly> weights;  // per edge of the expansion, doubled exponents
  std::vector<int> order;           // Pfaffian row order: src, dst of each edge of g under o
};

DimerGraph build_dimer_graph(const PlanarGraph& g, const Orientation& o,
                             TriangleOrientation tri = TriangleOrientation::Clockwise);
// Pf of the signed weighted adjacency matrix of the expansion, halved back to integer exponents.
// Throws Domain when the expansion is not Kasteleyn, SizeLimit above max_vertices.
SparsePoly dimer_p_gamma(const PlanarGraph& g, const Orientation& o,
                         TriangleOrientation tri = TriangleOrientation::Clockwise, int max_vertices = 64);

}  // namespace duality
