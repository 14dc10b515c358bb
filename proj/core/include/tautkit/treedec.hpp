#pragma once

#include <string>
#include <vector>

#include "tautkit/fpg.hpp"

namespace tautkit {

// A rooted tree decomposition of a face pairing graph. Bags are sorted node
// lists; the root is the lowest-index decomposition node and children are
// ordered by index.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  int width = 0;
  int root = 0;

  int bag_count() const { return static_cast<int>(bags.size()); }
};

// Raw tree + bags as read from a file or built by hand, before validation.
struct RawTreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;
};

// Checks the three tree-decomposition conditions (every node covered, every
// arc's endpoints share a bag, bag occurrences connected) plus treeness,
// computes the width and fixes the root. Violations are reported per
// condition via ValidityError.
TreeDecomposition validate_treedec(const FacePairingGraph& g,
                                   const RawTreeDecomposition& raw);

// Min-fill elimination ordering; one bag per graph node, components chained
// into a single tree. Ties broken by lowest node index.
TreeDecomposition heuristic_treedec(const FacePairingGraph& g);

// PACE-style file: `s td <num_bags> <width+1> <n>`, bag lines
// `b <i> <v...>`, then tree edges `<i> <j>`; ids are 1-based in the file.
TreeDecomposition parse_treedec(const FacePairingGraph& g,
                                const std::string& text);
std::string serialize_treedec(const TreeDecomposition& td, int node_count);

}  // namespace tautkit
