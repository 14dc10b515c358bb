#include "tautkit/fpg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "tautkit/errors.hpp"

namespace tautkit {

FacePairingGraph build_fpg(const Triangulation& tri) {
  FacePairingGraph g;
  g.node_count = tri.tet_count();
  for (int t = 0; t < tri.tet_count(); ++t) {
    for (int f = 0; f < kFacesPerTet; ++f) {
      const auto& gl = tri.gluing(t, f);
      if (!gl) continue;
      // Count each glued pair once, from its lexicographically first side.
      if (std::make_pair(t, f) <
          std::make_pair(gl->tet, gl->target_face()))
        g.arcs.emplace_back(std::min(t, gl->tet), std::max(t, gl->tet));
    }
  }
  return g;
}

std::string fpg_to_dot(const FacePairingGraph& g) {
  std::ostringstream out;
  out << "graph fpg {\n";
  for (int v = 0; v < g.node_count; ++v) out << "  " << v << ";\n";
  for (const auto& [u, v] : g.arcs) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

// Arcs with loops dropped; loops affect neither cuts nor bags.
std::vector<std::pair<int, int>> proper_arcs(const FacePairingGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& a : g.arcs)
    if (a.first != a.second) arcs.push_back(a);
  return arcs;
}

void cutwidth_search(const std::vector<std::pair<int, int>>& arcs, int n,
                     std::vector<int>& prefix, std::vector<bool>& used,
                     int current_max, int& best) {
  if (current_max >= best) return;
  if (static_cast<int>(prefix.size()) == n) {
    best = current_max;
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = true;
    prefix.push_back(v);
    int cut = 0;
    for (const auto& [a, b] : arcs) {
      bool ina = used[static_cast<std::size_t>(a)];
      bool inb = used[static_cast<std::size_t>(b)];
      if (ina != inb) ++cut;
    }
    cutwidth_search(arcs, n, prefix, used, std::max(current_max, cut), best);
    prefix.pop_back();
    used[static_cast<std::size_t>(v)] = false;
  }
}

}  // namespace

int exact_cutwidth(const FacePairingGraph& g) {
  if (g.node_count > 10)
    throw UsageError("exact_cutwidth capped at 10 nodes");
  auto arcs = proper_arcs(g);
  if (g.node_count <= 1 || arcs.empty()) return 0;
  int best = static_cast<int>(arcs.size());
  std::vector<int> prefix;
  std::vector<bool> used(static_cast<std::size_t>(g.node_count), false);
  cutwidth_search(arcs, g.node_count, prefix, used, 0, best);
  return best;
}

int exact_treewidth(const FacePairingGraph& g) {
  const int n = g.node_count;
  if (n > 8) throw UsageError("exact_treewidth capped at 8 nodes");
  if (n == 0) return 0;
  std::vector<std::vector<bool>> adj(
      static_cast<std::size_t>(n),
      std::vector<bool>(static_cast<std::size_t>(n), false));
  for (const auto& [u, v] : proper_arcs(g)) {
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
  }
  // Treewidth = min over elimination orders of the max back-degree, where
  // eliminating v after the set S connects v to every w outside S reachable
  // through S. Dynamic program over subsets S = vertices already eliminated.
  const int full = 1 << n;
  std::vector<int> dp(static_cast<std::size_t>(full),
                      std::numeric_limits<int>::max());
  dp[0] = 0;
  auto back_degree = [&](int mask, int v) {
    // Vertices outside mask u {v} reachable from v through mask.
    int seen = 1 << v;
    int frontier = 1 << v;
    int result = 0;
    while (frontier) {
      int next = 0;
      for (int x = 0; x < n; ++x) {
        if (!(frontier & (1 << x))) continue;
        for (int y = 0; y < n; ++y) {
          if (!adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
            continue;
          if (seen & (1 << y)) continue;
          seen |= 1 << y;
          if (mask & (1 << y)) {
            next |= 1 << y;
          } else {
            ++result;
          }
        }
      }
      frontier = next;
    }
    return result;
  };
  for (int mask = 0; mask < full; ++mask) {
    if (dp[static_cast<std::size_t>(mask)] == std::numeric_limits<int>::max())
      continue;
    for (int v = 0; v < n; ++v) {
      if (mask & (1 << v)) continue;
      int cost = std::max(dp[static_cast<std::size_t>(mask)],
                          back_degree(mask, v));
      int next = mask | (1 << v);
      dp[static_cast<std::size_t>(next)] =
          std::min(dp[static_cast<std::size_t>(next)], cost);
    }
  }
  return dp[static_cast<std::size_t>(full - 1)];
}

}  // namespace tautkit
