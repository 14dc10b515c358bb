#include "tautkit/treedec.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "tautkit/errors.hpp"

namespace tautkit {

namespace {

std::vector<std::set<int>> simple_adjacency(const FacePairingGraph& g) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(g.node_count));
  for (const auto& [u, v] : g.arcs) {
    if (u == v) continue;
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  return adj;
}

}  // namespace

TreeDecomposition validate_treedec(const FacePairingGraph& g,
                                   const RawTreeDecomposition& raw) {
  const int b = static_cast<int>(raw.bags.size());
  if (b == 0) throw ValidityError("tree decomposition has no bags");

  // Treeness: b-1 edges, connected, no parallel edges or loops.
  if (static_cast<int>(raw.tree_edges.size()) != b - 1)
    throw ValidityError("input not a tree: expected " + std::to_string(b - 1) +
                        " tree edges, got " +
                        std::to_string(raw.tree_edges.size()));
  std::vector<std::vector<int>> tree_adj(static_cast<std::size_t>(b));
  std::set<std::pair<int, int>> seen_edges;
  for (auto [x, y] : raw.tree_edges) {
    if (x < 0 || x >= b || y < 0 || y >= b || x == y)
      throw ValidityError("input not a tree: bad tree edge");
    auto key = std::minmax(x, y);
    if (!seen_edges.insert({key.first, key.second}).second)
      throw ValidityError("input not a tree: duplicate tree edge");
    tree_adj[static_cast<std::size_t>(x)].push_back(y);
    tree_adj[static_cast<std::size_t>(y)].push_back(x);
  }
  {
    std::vector<bool> visited(static_cast<std::size_t>(b), false);
    std::vector<int> stack{0};
    visited[0] = true;
    int count = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++count;
      for (int y : tree_adj[static_cast<std::size_t>(x)])
        if (!visited[static_cast<std::size_t>(y)]) {
          visited[static_cast<std::size_t>(y)] = true;
          stack.push_back(y);
        }
    }
    if (count != b) throw ValidityError("input not a tree: not connected");
  }

  TreeDecomposition td;
  td.bags.reserve(static_cast<std::size_t>(b));
  for (const auto& bag : raw.bags) {
    std::vector<int> sorted = bag;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v : sorted)
      if (v < 0 || v >= g.node_count)
        throw ValidityError("bag contains a node outside the graph");
    td.bags.push_back(std::move(sorted));
  }
  td.tree_edges = raw.tree_edges;

  // Bag occurrence lists, shared by all three condition checks.
  std::vector<std::vector<int>> holders(
      static_cast<std::size_t>(g.node_count));
  for (int i = 0; i < b; ++i)
    for (int v : td.bags[static_cast<std::size_t>(i)])
      holders[static_cast<std::size_t>(v)].push_back(i);

  // Condition (i): every graph node in at least one bag.
  for (int v = 0; v < g.node_count; ++v)
    if (holders[static_cast<std::size_t>(v)].empty())
      throw ValidityError("condition (i) violated: node " + std::to_string(v) +
                          " is in no bag");

  // Condition (ii): both endpoints of every arc share a bag. A loop only
  // needs its node covered, which condition (i) already gives.
  for (const auto& [u, v] : g.arcs) {
    if (u == v) continue;
    bool ok = false;
    for (int i : holders[static_cast<std::size_t>(u)]) {
      const auto& bag = td.bags[static_cast<std::size_t>(i)];
      if (std::binary_search(bag.begin(), bag.end(), v)) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw ValidityError("condition (ii) violated: no bag contains arc (" +
                          std::to_string(u) + "," + std::to_string(v) + ")");
  }

  // Condition (iii): the bags containing each node form a subtree.
  std::vector<int> flag(static_cast<std::size_t>(b), -1);
  for (int v = 0; v < g.node_count; ++v) {
    const auto& hs = holders[static_cast<std::size_t>(v)];
    for (int h : hs) flag[static_cast<std::size_t>(h)] = v;
    std::vector<int> stack{hs.front()};
    flag[static_cast<std::size_t>(hs.front())] = -1;  // visited marker
    int reached = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : tree_adj[static_cast<std::size_t>(x)])
        if (flag[static_cast<std::size_t>(y)] == v) {
          flag[static_cast<std::size_t>(y)] = -1;
          stack.push_back(y);
        }
    }
    if (reached != static_cast<int>(hs.size()))
      throw ValidityError("condition (iii) violated: bags containing node " +
                          std::to_string(v) + " are not connected");
  }

  std::size_t max_bag = 0;
  for (const auto& bag : td.bags) max_bag = std::max(max_bag, bag.size());
  td.width = max_bag == 0 ? 0 : static_cast<int>(max_bag) - 1;
  td.root = 0;
  return td;
}

TreeDecomposition heuristic_treedec(const FacePairingGraph& g) {
  const int n = g.node_count;
  if (n == 0) {
    RawTreeDecomposition raw;
    raw.bags.push_back({});
    return validate_treedec(g, raw);
  }

  auto adj = simple_adjacency(g);
  std::vector<bool> eliminated(static_cast<std::size_t>(n), false);

  auto fill_count = [&](int v) {
    // Number of missing edges among v's current neighbours.
    std::vector<int> nbrs(adj[static_cast<std::size_t>(v)].begin(),
                          adj[static_cast<std::size_t>(v)].end());
    int fill = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      for (std::size_t j = i + 1; j < nbrs.size(); ++j)
        if (!adj[static_cast<std::size_t>(nbrs[i])].count(nbrs[j])) ++fill;
    return fill;
  };

  RawTreeDecomposition raw;
  raw.bags.resize(static_cast<std::size_t>(n));
  std::vector<int> elim_order;
  std::vector<int> position(static_cast<std::size_t>(n), -1);

  for (int step = 0; step < n; ++step) {
    int best = -1, best_fill = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[static_cast<std::size_t>(v)]) continue;
      int fill = fill_count(v);
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<int> bag(adj[static_cast<std::size_t>(best)].begin(),
                         adj[static_cast<std::size_t>(best)].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    raw.bags[static_cast<std::size_t>(step)] = std::move(bag);
    position[static_cast<std::size_t>(best)] = step;
    elim_order.push_back(best);

    // Make the neighbourhood a clique, then remove the vertex.
    std::vector<int> nbrs(adj[static_cast<std::size_t>(best)].begin(),
                          adj[static_cast<std::size_t>(best)].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[static_cast<std::size_t>(nbrs[i])].insert(nbrs[j]);
        adj[static_cast<std::size_t>(nbrs[j])].insert(nbrs[i]);
      }
    for (int w : nbrs) adj[static_cast<std::size_t>(w)].erase(best);
    adj[static_cast<std::size_t>(best)].clear();
    eliminated[static_cast<std::size_t>(best)] = true;
  }

  // Bag `step` hangs off the bag of the first-eliminated vertex among the
  // other members of its bag; bags with none left chain to the final bag so
  // disconnected graphs still yield one tree.
  for (int step = 0; step < n; ++step) {
    int next = std::numeric_limits<int>::max();
    for (int v : raw.bags[static_cast<std::size_t>(step)]) {
      int pos = position[static_cast<std::size_t>(v)];
      if (pos > step) next = std::min(next, pos);
    }
    if (next == std::numeric_limits<int>::max()) {
      if (step + 1 < n) raw.tree_edges.emplace_back(step, step + 1);
    } else {
      raw.tree_edges.emplace_back(step, next);
    }
  }

  return validate_treedec(g, raw);
}

TreeDecomposition parse_treedec(const FacePairingGraph& g,
                                const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  int declared_bags = 0, declared_nodes = 0;
  RawTreeDecomposition raw;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;  // PACE comment line
    if (first == "s") {
      std::string td_tag;
      int width_plus_1;
      if (!(ls >> td_tag >> declared_bags >> width_plus_1 >> declared_nodes) ||
          td_tag != "td")
        throw ParseError("expected 's td <bags> <width+1> <n>'", lineno, 1);
      if (declared_nodes != g.node_count)
        throw ParseError("tree decomposition node count does not match graph",
                         lineno, 1);
      raw.bags.resize(static_cast<std::size_t>(declared_bags));
      header_seen = true;
    } else if (first == "b") {
      if (!header_seen)
        throw ParseError("bag line before 's td' header", lineno, 1);
      int id;
      if (!(ls >> id) || id < 1 || id > declared_bags)
        throw ParseError("bad bag id", lineno, 1);
      int v;
      while (ls >> v) {
        if (v < 1 || v > declared_nodes)
          throw ParseError("bag vertex out of range", lineno, 1);
        raw.bags[static_cast<std::size_t>(id - 1)].push_back(v - 1);
      }
    } else {
      if (!header_seen)
        throw ParseError("tree edge before 's td' header", lineno, 1);
      int x, y;
      std::istringstream es(line);
      if (!(es >> x >> y) || x < 1 || y < 1 || x > declared_bags ||
          y > declared_bags)
        throw ParseError("bad tree edge line", lineno, 1);
      raw.tree_edges.emplace_back(x - 1, y - 1);
    }
  }
  if (!header_seen) throw ParseError("missing 's td' header", 1, 1);
  return validate_treedec(g, raw);
}

std::string serialize_treedec(const TreeDecomposition& td, int node_count) {
  std::ostringstream out;
  out << "s td " << td.bag_count() << ' ' << td.width + 1 << ' ' << node_count
      << "\n";
  for (int i = 0; i < td.bag_count(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[static_cast<std::size_t>(i)]) out << ' ' << v + 1;
    out << "\n";
  }
  for (const auto& [x, y] : td.tree_edges)
    out << x + 1 << ' ' << y + 1 << "\n";
  return out.str();
}

}  // namespace tautkit
