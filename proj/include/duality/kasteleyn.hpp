#pragma once

#include <optional>
#include <vector>

#include "duality/graph.hpp"

namespace duality {

struct KasteleynReport {
  bool ok = true;
  std::vector<int> clockwise;  // per face, clockwise edges in the sphere picture
};

// Spanning tree keeps the stored direction; co-tree edges are fixed leaf-to-root along the
// dual tree rooted at outer_face.
Orientation make_kasteleyn(const PlanarGraph& g, int outer_face = 0);
KasteleynReport is_kasteleyn(const PlanarGraph& g, const Orientation& o);
Orientation vertex_flip(const PlanarGraph& g, const Orientation& o, int v);
// Clockwise edges of face f under o.
int face_clockwise(const PlanarGraph& g, const Orientation& o, int f);

struct CycleLemmaReport {
  bool ok = true;
  int cycles_checked = 0;
  std::optional<EdgeMask> violation;
  std::string detail;
};

// For each simple cycle: (-1)^{E_cl} = (-1)^{V_int + 1} and (-1)^{a} = (-1)^{V_int}.
CycleLemmaReport check_cycle_lemma(const PlanarGraph& g, const Orientation& o, int outer_face = 0);

// Orientations encoded as edge bitmasks (bit set = flipped against stored order).
EdgeMask orientation_mask(const Orientation& o);
Orientation orientation_from_mask(const PlanarGraph& g, EdgeMask m);
std::vector<EdgeMask> kasteleyn_class(const PlanarGraph& g, const Orientation& o);
std::vector<EdgeMask> all_kasteleyn_orientations(const PlanarGraph& g);

}  // namespace duality
