#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tautkit::testsupport {

std::vector<TautStructure> brute_force_taut(const Triangulation& tri,
                                            const Skeleton& skel) {
  const int n = tri.tet_count();
  std::vector<TautStructure> out;
  TautStructure candidate;
  candidate.choices.assign(static_cast<std::size_t>(n), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = n - 1; i >= 0; --i) {
      candidate.choices[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(rest % 3);
      rest /= 3;
    }
    if (is_taut(tri, skel, candidate)) out.push_back(candidate);
  }
  return out;
}

namespace {

enum class Value : std::uint8_t { unknown, yes, no };

bool propagate(const SatInstance& inst, std::vector<Value>& values) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : inst.clauses) {
      int trues = 0, falses = 0;
      for (int v : clause) {
        if (values[static_cast<std::size_t>(v)] == Value::yes) ++trues;
        if (values[static_cast<std::size_t>(v)] == Value::no) ++falses;
      }
      if (trues > 1 || falses == 3) return false;
      if (trues == 1) {
        for (int v : clause)
          if (values[static_cast<std::size_t>(v)] == Value::unknown) {
            values[static_cast<std::size_t>(v)] = Value::no;
            changed = true;
          }
      } else if (falses == 2) {
        for (int v : clause)
          if (values[static_cast<std::size_t>(v)] == Value::unknown) {
            values[static_cast<std::size_t>(v)] = Value::yes;
            changed = true;
          }
      }
    }
  }
  return true;
}

bool branch(const SatInstance& inst, std::vector<Value> values) {
  if (!propagate(inst, values)) return false;
  for (int v = 0; v < inst.variable_count; ++v) {
    if (values[static_cast<std::size_t>(v)] != Value::unknown) continue;
    auto with_true = values;
    with_true[static_cast<std::size_t>(v)] = Value::yes;
    if (branch(inst, std::move(with_true))) return true;
    values[static_cast<std::size_t>(v)] = Value::no;
    return branch(inst, std::move(values));
  }
  // Everything assigned; propagate() already verified each clause.
  for (const auto& clause : inst.clauses) {
    int trues = 0;
    for (int v : clause)
      if (values[static_cast<std::size_t>(v)] == Value::yes) ++trues;
    if (trues != 1) return false;
  }
  return true;
}

}  // namespace

bool propagation_sat_oracle(const SatInstance& inst) {
  std::vector<Value> values(static_cast<std::size_t>(inst.variable_count),
                            Value::unknown);
  return branch(inst, std::move(values));
}

int exhaustive_cutwidth(const FacePairingGraph& g) {
  const int n = g.node_count;
  if (n <= 1) return 0;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(g.arcs.size());
  do {
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    int width = 0;
    for (int cut = 0; cut + 1 < n; ++cut) {
      int crossing = 0;
      for (const auto& [u, v] : g.arcs) {
        int a = pos[static_cast<std::size_t>(u)];
        int b = pos[static_cast<std::size_t>(v)];
        if (std::min(a, b) <= cut && cut < std::max(a, b)) ++crossing;
      }
      width = std::max(width, crossing);
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

int exhaustive_treewidth(const FacePairingGraph& g) {
  const int n = g.node_count;
  if (n == 0) return 0;
  std::vector<std::set<int>> base(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.arcs) {
    if (u == v) continue;
    base[static_cast<std::size_t>(u)].insert(v);
    base[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  int best = n - 1;
  do {
    auto adj = base;
    int width = 0;
    for (int v : order) {
      auto& nbrs = adj[static_cast<std::size_t>(v)];
      width = std::max(width, static_cast<int>(nbrs.size()));
      std::vector<int> list(nbrs.begin(), nbrs.end());
      for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          adj[static_cast<std::size_t>(list[i])].insert(list[j]);
          adj[static_cast<std::size_t>(list[j])].insert(list[i]);
        }
      for (int w : list) adj[static_cast<std::size_t>(w)].erase(v);
      nbrs.clear();
      if (width >= best) break;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace tautkit::testsupport
