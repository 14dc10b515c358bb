#pragma once

#include <string>
#include <vector>

#include "tautkit/triangulation.hpp"

namespace tautkit {

// The face pairing graph (dual 1-skeleton): one node per tetrahedron, one
// arc per glued face pair. Loops (self-gluings) and parallel arcs allowed.
struct FacePairingGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> arcs;  // u <= v, deterministic order

  int arc_count() const { return static_cast<int>(arcs.size()); }
};

FacePairingGraph build_fpg(const Triangulation& tri);

// Graphviz export; parallel arcs emitted individually, loops rendered.
std::string fpg_to_dot(const FacePairingGraph& g);

// Exact cutwidth by branch-and-bound over layouts. Capped at 10 nodes.
int exact_cutwidth(const FacePairingGraph& g);

// Exact treewidth via dynamic programming over elimination orders.
// Capped at 8 nodes.
int exact_treewidth(const FacePairingGraph& g);

}  // namespace tautkit
