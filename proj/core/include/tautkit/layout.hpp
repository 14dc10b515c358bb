#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautkit/fpg.hpp"

namespace tautkit {

// A left-to-right ordering of the graph nodes together with its width: the
// maximum number of arcs crossing any prefix cut. Loops never cross a cut.
struct Layout {
  std::vector<int> order;
  int width = 0;
};

// Checks that `order` is a permutation of the nodes and computes the width.
Layout validate_layout(const FacePairingGraph& g, const std::vector<int>& order);

// A valid layout of small width: exact branch-and-bound for up to 10 nodes,
// otherwise BFS order refined by adjacent-transposition hill climbing.
// When `seed` is set, additional seeded random restarts are tried and the
// best result kept; by default the search is fully deterministic.
Layout heuristic_layout(const FacePairingGraph& g,
                        std::optional<std::uint64_t> seed = std::nullopt);

// Layout file: `layout <n>` header, then one node index per line.
Layout parse_layout(const FacePairingGraph& g, const std::string& text);
std::string serialize_layout(const Layout& layout);

}  // namespace tautkit
