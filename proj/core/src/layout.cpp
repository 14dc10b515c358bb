#include "tautkit/layout.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "tautkit/errors.hpp"

namespace tautkit {

namespace {

int layout_width(const FacePairingGraph& g, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(g.node_count), 0);
  for (int i = 0; i < static_cast<int>(order.size()); ++i)
    pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  // Arc (u,v) crosses cut i iff pos[u] <= i < pos[v]; accumulate with a
  // difference array.
  std::vector<int> diff(static_cast<std::size_t>(g.node_count) + 1, 0);
  for (const auto& [u, v] : g.arcs) {
    int a = pos[static_cast<std::size_t>(u)];
    int b = pos[static_cast<std::size_t>(v)];
    if (a == b) continue;  // loop
    if (a > b) std::swap(a, b);
    ++diff[static_cast<std::size_t>(a)];
    --diff[static_cast<std::size_t>(b)];
  }
  int width = 0, running = 0;
  for (int i = 0; i + 1 < g.node_count; ++i) {
    running += diff[static_cast<std::size_t>(i)];
    width = std::max(width, running);
  }
  return width;
}

std::vector<std::vector<int>> adjacency(const FacePairingGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.node_count));
  for (const auto& [u, v] : g.arcs) {
    if (u == v) continue;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

std::vector<int> bfs_order(const FacePairingGraph& g) {
  auto adj = adjacency(g);
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(g.node_count), false);
  for (int start = 0; start < g.node_count; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      order.push_back(v);
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return order;
}

// Repeated adjacent-transposition passes until no swap lowers the width.
void hill_climb(const FacePairingGraph& g, std::vector<int>& order,
                int& width) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      std::swap(order[i], order[i + 1]);
      int w = layout_width(g, order);
      if (w < width) {
        width = w;
        improved = true;
      } else {
        std::swap(order[i], order[i + 1]);
      }
    }
  }
}

void exact_search(const FacePairingGraph& g,
                  const std::vector<std::pair<int, int>>& arcs,
                  std::vector<int>& prefix, std::vector<bool>& used,
                  int current_max, std::vector<int>& best_order,
                  int& best_width) {
  if (current_max >= best_width) return;
  if (static_cast<int>(prefix.size()) == g.node_count) {
    best_width = current_max;
    best_order = prefix;
    return;
  }
  for (int v = 0; v < g.node_count; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = true;
    prefix.push_back(v);
    int cut = 0;
    for (const auto& [a, b] : arcs)
      if (used[static_cast<std::size_t>(a)] !=
          used[static_cast<std::size_t>(b)])
        ++cut;
    exact_search(g, arcs, prefix, used, std::max(current_max, cut),
                 best_order, best_width);
    prefix.pop_back();
    used[static_cast<std::size_t>(v)] = false;
  }
}

}  // namespace

Layout validate_layout(const FacePairingGraph& g,
                       const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.node_count)
    throw UsageError("layout is not a permutation of the nodes: wrong size");
  std::vector<bool> seen(static_cast<std::size_t>(g.node_count), false);
  for (int v : order) {
    if (v < 0 || v >= g.node_count || seen[static_cast<std::size_t>(v)])
      throw UsageError("layout is not a permutation of the nodes");
    seen[static_cast<std::size_t>(v)] = true;
  }
  return Layout{order, layout_width(g, order)};
}

Layout heuristic_layout(const FacePairingGraph& g,
                        std::optional<std::uint64_t> seed) {
  if (g.node_count == 0) return Layout{{}, 0};

  std::vector<int> order = bfs_order(g);
  int width = layout_width(g, order);

  if (g.node_count <= 10) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& a : g.arcs)
      if (a.first != a.second) arcs.push_back(a);
    std::vector<int> prefix;
    std::vector<bool> used(static_cast<std::size_t>(g.node_count), false);
    int best_width = width + 1;
    std::vector<int> best_order = order;
    exact_search(g, arcs, prefix, used, 0, best_order, best_width);
    if (best_width <= width) return Layout{best_order, best_width};
    return Layout{order, width};
  }

  hill_climb(g, order, width);

  if (seed) {
    std::mt19937_64 rng(*seed);
    for (int restart = 0; restart < 8; ++restart) {
      std::vector<int> candidate = order;
      std::shuffle(candidate.begin(), candidate.end(), rng);
      int w = layout_width(g, candidate);
      hill_climb(g, candidate, w);
      if (w < width) {
        width = w;
        order = candidate;
      }
    }
  }
  return Layout{order, width};
}

Layout parse_layout(const FacePairingGraph& g, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<int> order;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header_seen) {
      int n;
      if (first != "layout" || !(ls >> n))
        throw ParseError("expected 'layout <n>' header", lineno, 1);
      if (n != g.node_count)
        throw ParseError("layout node count does not match the graph", lineno,
                         1);
      header_seen = true;
      continue;
    }
    try {
      order.push_back(std::stoi(first));
    } catch (const std::exception&) {
      throw ParseError("expected node index", lineno, 1);
    }
  }
  if (!header_seen) throw ParseError("missing 'layout <n>' header", 1, 1);
  return validate_layout(g, order);
}

std::string serialize_layout(const Layout& layout) {
  std::ostringstream out;
  out << "layout " << layout.order.size() << "\n";
  for (int v : layout.order) out << v << "\n";
  return out.str();
}

}  // namespace tautkit
