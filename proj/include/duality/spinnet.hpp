#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duality/errors.hpp"
#include "duality/graph.hpp"
#include "duality/poly.hpp"
#include "duality/qsqrt.hpp"

namespace duality {

// Per-edge colour c_e = 2 j_e.
using Coloring = std::vector<int>;

bool is_admissible(const PlanarGraph& g, const Coloring& col);
// J_v = sum of the three spins at v; integer for admissible colourings.
std::vector<int> vertex_spin_sums(const PlanarGraph& g, const Coloring& col);

enum class Normalization { Tensor, Integral, Unitary, Skein };
std::string normalization_name(Normalization n);

struct EvaluationResult {
  double value = 0;
  double error = 0;               // bound on |value - true value|
  std::optional<Rational> exact;  // set when known exactly
  Normalization norm = Normalization::Tensor;
};

// s(g, col, o): contraction of 3j tensors over magnetic numbers, float, with an error bound.
EvaluationResult evaluate_tensor(const PlanarGraph& g, const Orientation& o, const Coloring& col);
// Same sum carried out exactly over radicals; exponential in the edge count.
RadicalSum evaluate_tensor_exact(const PlanarGraph& g, const Orientation& o, const Coloring& col);

// prod_v (J_v+1)! / prod_{e,v} (J_v - c_e)!
Integer integral_norm_square(const PlanarGraph& g, const Coloring& col);
// prod_e c_e! / prod_alpha j_alpha!, with j_alpha = J_v - c of the edge opposite alpha
Rational skein_factor(const PlanarGraph& g, const Coloring& col);

EvaluationResult to_integral(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col);
// Throws UndefinedSign when sum c_e is odd (the sign (-1)^{sum J_v / 2} is not a real sign).
EvaluationResult to_unitary(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col);
EvaluationResult to_skein(const EvaluationResult& s, const PlanarGraph& g, const Coloring& col);
EvaluationResult evaluate(const PlanarGraph& g, const Orientation& o, const Coloring& col, Normalization n);

// 1 / P^2 up to total degree D (optional per-variable caps).
TruncatedSeries z_spin_series(const PlanarGraph& g, int D, const std::vector<int>& caps = {});

struct ComparisonReport {
  bool ok = true;               // every admissible colouring matched
  long colorings = 0;
  double max_error = 0;         // largest |tensor - series| seen
  std::vector<Coloring> mismatches;
  bool only_if_checked = false;
  bool only_if_detected = false;  // a non-Kasteleyn orientation failed on some curve colouring
};

struct ComparisonOptions {
  bool parallel = true;
  double tolerance = 1e-9;  // relative to max(1, |exact|)
  bool check_only_if = true;
};

// Integral-normalized tensor evaluation against the series coefficient for all admissible
// colourings with every c_e <= max_color.
ComparisonReport verify_comparison_theorem(const PlanarGraph& g, const Orientation& o, int max_color,
                                           const ComparisonOptions& opt = {});

// Local IH rewrite on edge e = (a -> b under o). With a's rotation (e, p1, p2) and b's
// (e, q1, q2) the result has a: (e, p2, q1) and b: (e, q2, p1). In recoupling notation
// j12 = e, j1 = p2, j2 = p1, j = q1, j3 = q2; e then runs b -> a and the edge of j1 is flipped.
struct WhiteheadResult {
  PlanarGraph graph;
  Orientation orientation;
  int edge, j1_edge, j2_edge, j3_edge, j_edge;
};
// Throws InvalidEdge on self-loops and when a and b share another edge.
WhiteheadResult whitehead_move(const PlanarGraph& g, const Orientation& o, int e);

}  // namespace duality
