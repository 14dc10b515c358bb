#include "tautkit/dp.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <unordered_map>

#include "tautkit/errors.hpp"

namespace tautkit {

namespace {

// Boundary marking patterns are count vectors over the current active edge
// classes; every state in one table shares the same active list, so the raw
// byte string is a sufficient key.
using Pattern = std::vector<std::uint8_t>;

struct PatternHash {
  std::size_t operator()(const Pattern& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto b : p) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// A deduplicating table of patterns; values are insertion indices so
// back-pointers can reference states stably.
struct PatternTable {
  std::vector<Pattern> states;
  std::unordered_map<Pattern, std::size_t, PatternHash> index;

  // Returns the state's index and whether it was newly inserted. The first
  // predecessor of a state wins.
  std::pair<std::size_t, bool> insert(Pattern p) {
    auto it = index.find(p);
    if (it != index.end()) return {it->second, false};
    std::size_t id = states.size();
    index.emplace(p, id);
    states.push_back(std::move(p));
    return {id, true};
  }

  std::size_t size() const { return states.size(); }
};

// Sorted union of sorted class-id lists.
std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<int> positions_of(const std::vector<int>& subset,
                              const std::vector<int>& superset) {
  std::vector<int> pos;
  pos.reserve(subset.size());
  for (int cls : subset) {
    auto it = std::lower_bound(superset.begin(), superset.end(), cls);
    pos.push_back(static_cast<int>(it - superset.begin()));
  }
  return pos;
}

void require_closed(const Skeleton& skel, const char* who) {
  if (!skel.boundary_faces.empty())
    throw UsageError(std::string(who) +
                     " requires a triangulation with no boundary faces");
}

}  // namespace

DpResult solve_cutwidth(const Triangulation& tri, const Skeleton& skel,
                        const Layout& layout, bool want_witness) {
  require_closed(skel, "solve_cutwidth");
  const int n = tri.tet_count();
  Layout checked = validate_layout(build_fpg(tri), layout.order);

  DpResult result;
  result.stats.parameter_width = checked.width;
  result.stats.state_bound =
      static_cast<std::size_t>((3 * checked.width + 1) / 2);

  if (n == 0) {
    result.has_taut = true;
    if (want_witness) result.witness = TautStructure{};
    result.stats.max_table_size = 1;
    return result;
  }

  // Last processing step touching each edge class; the class is checked and
  // dropped from the state there.
  std::vector<int> pos(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    pos[static_cast<std::size_t>(
        checked.order[static_cast<std::size_t>(i)])] = i;
  const std::size_t num_classes = skel.edge_classes.size();
  std::vector<int> finish_step(num_classes, 0);
  for (const auto& cls : skel.edge_classes) {
    int last = 0;
    for (const auto& slot : cls.slots)
      last = std::max(last, pos[static_cast<std::size_t>(slot.tet)]);
    finish_step[static_cast<std::size_t>(cls.id)] = last;
  }

  PatternTable table;
  table.insert(Pattern{});
  std::vector<int> active;  // sorted class ids carried between steps

  // Back-pointers per step: for every state of the step's output table, the
  // index of its predecessor in the previous table plus the pair choice.
  std::vector<std::vector<std::pair<std::size_t, std::uint8_t>>> trace(
      want_witness ? static_cast<std::size_t>(n) : 0);

  result.stats.max_table_size = 1;

  for (int step = 0; step < n; ++step) {
    const int tet = checked.order[static_cast<std::size_t>(step)];

    // Classes incident to this tetrahedron join the working set; those
    // whose last tetrahedron this is leave it afterwards.
    std::vector<int> incident;
    for (int e = 0; e < kEdgesPerTet; ++e)
      incident.push_back(skel.edge_class_of(tet, e));
    std::sort(incident.begin(), incident.end());
    incident.erase(std::unique(incident.begin(), incident.end()),
                   incident.end());

    std::vector<int> working = sorted_union(active, incident);
    std::vector<int> next_active;
    std::vector<std::size_t> check_positions;
    for (std::size_t i = 0; i < working.size(); ++i) {
      if (finish_step[static_cast<std::size_t>(working[i])] == step)
        check_positions.push_back(i);
      else
        next_active.push_back(working[i]);
    }

    auto old_positions = positions_of(active, working);
    auto keep_positions = positions_of(next_active, working);
    // Mark increments per choice, as positions into the working vector.
    std::array<std::vector<std::size_t>, 3> increments;
    for (int choice = 0; choice < 3; ++choice)
      for (int e : kPairEdges[static_cast<std::size_t>(choice)]) {
        int cls = skel.edge_class_of(tet, e);
        auto it = std::lower_bound(working.begin(), working.end(), cls);
        increments[static_cast<std::size_t>(choice)].push_back(
            static_cast<std::size_t>(it - working.begin()));
      }

    PatternTable next;
    std::vector<std::pair<std::size_t, std::uint8_t>> step_trace;
    Pattern extended(working.size(), 0);
    for (std::size_t si = 0; si < table.states.size(); ++si) {
      const Pattern& state = table.states[si];
      for (std::uint8_t choice = 0; choice < 3; ++choice) {
        std::fill(extended.begin(), extended.end(), 0);
        for (std::size_t i = 0; i < old_positions.size(); ++i)
          extended[static_cast<std::size_t>(old_positions[i])] = state[i];
        bool ok = true;
        for (std::size_t p : increments[choice]) {
          if (++extended[p] > 2) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        for (std::size_t p : check_positions) {
          int cls = working[p];
          const auto& ec =
              skel.edge_classes[static_cast<std::size_t>(cls)];
          if (ec.is_boundary ? extended[p] > 2 : extended[p] != 2) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        Pattern projected(next_active.size());
        for (std::size_t i = 0; i < keep_positions.size(); ++i)
          projected[i] = extended[static_cast<std::size_t>(keep_positions[i])];
        auto [id, fresh] = next.insert(std::move(projected));
        if (fresh && want_witness) {
          if (step_trace.size() <= id) step_trace.resize(id + 1);
          step_trace[id] = {si, choice};
        }
      }
    }

    table = std::move(next);
    active = std::move(next_active);
    if (want_witness)
      trace[static_cast<std::size_t>(step)] = std::move(step_trace);

    result.stats.max_table_size =
        std::max(result.stats.max_table_size, table.size());
    result.stats.peak_active_edges =
        std::max(result.stats.peak_active_edges, active.size());
    if (table.size() == 0) break;
  }

  result.stats.state_bound_ok =
      result.stats.peak_active_edges <= result.stats.state_bound;
  result.has_taut = table.size() > 0 && active.empty();

  if (result.has_taut && want_witness) {
    TautStructure witness;
    witness.choices.assign(static_cast<std::size_t>(n), 0);
    std::size_t state = 0;  // the empty pattern is the only final state
    for (int step = n - 1; step >= 0; --step) {
      auto [prev, choice] = trace[static_cast<std::size_t>(step)][state];
      witness.choices[static_cast<std::size_t>(
          checked.order[static_cast<std::size_t>(step)])] = choice;
      state = prev;
    }
    if (!is_taut(tri, skel, witness))
      throw std::logic_error("cutwidth witness failed is_taut");
    result.witness = std::move(witness);
  }
  return result;
}

namespace {

// Preprocessed rooted tree decomposition for the treewidth solver.
struct RootedDecomposition {
  int root;
  std::vector<std::vector<int>> children;      // sorted by index
  std::vector<int> parent;
  std::vector<int> postorder;
  std::vector<std::vector<int>> new_tets;      // tets whose top node is here
  std::vector<std::vector<int>> active;        // boundary classes of T_nu
};

RootedDecomposition root_decomposition(const Triangulation& tri,
                                       const Skeleton& skel,
                                       const TreeDecomposition& td) {
  const int b = td.bag_count();
  RootedDecomposition rd;
  rd.root = td.root;
  rd.children.assign(static_cast<std::size_t>(b), {});
  rd.parent.assign(static_cast<std::size_t>(b), -1);

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (auto [x, y] : td.tree_edges) {
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  std::vector<int> depth(static_cast<std::size_t>(b), -1);
  std::vector<int> bfs{rd.root};
  depth[static_cast<std::size_t>(rd.root)] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int x = bfs[i];
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (depth[static_cast<std::size_t>(y)] >= 0) continue;
      depth[static_cast<std::size_t>(y)] =
          depth[static_cast<std::size_t>(x)] + 1;
      rd.parent[static_cast<std::size_t>(y)] = x;
      rd.children[static_cast<std::size_t>(x)].push_back(y);
      bfs.push_back(y);
    }
  }

  // Iterative post-order with children visited in index order.
  rd.postorder.reserve(static_cast<std::size_t>(b));
  std::vector<std::pair<int, std::size_t>> stack{{rd.root, 0}};
  while (!stack.empty()) {
    auto& [node, child_idx] = stack.back();
    const auto& kids = rd.children[static_cast<std::size_t>(node)];
    if (child_idx < kids.size()) {
      int next = kids[child_idx++];
      stack.emplace_back(next, 0);
    } else {
      rd.postorder.push_back(node);
      stack.pop_back();
    }
  }

  // top(tet) = the occurrence nearest the root; condition (iii) makes it
  // unique. A tetrahedron belongs to T_nu exactly when top(tet) lies in the
  // subtree at nu.
  const int n = tri.tet_count();
  std::vector<int> top(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < b; ++i)
    for (int tet : td.bags[static_cast<std::size_t>(i)]) {
      int& t = top[static_cast<std::size_t>(tet)];
      if (t < 0 || depth[static_cast<std::size_t>(i)] <
                       depth[static_cast<std::size_t>(t)])
        t = i;
    }
  for (int tet = 0; tet < n; ++tet)
    if (top[static_cast<std::size_t>(tet)] < 0)
      throw std::logic_error("tetrahedron missing from decomposition");

  rd.new_tets.assign(static_cast<std::size_t>(b), {});
  for (int tet = 0; tet < n; ++tet)
    rd.new_tets[static_cast<std::size_t>(top[static_cast<std::size_t>(tet)])]
        .push_back(tet);
  for (auto& v : rd.new_tets) std::sort(v.begin(), v.end());

  // An edge class is active at nu when the subtree holds some but not all
  // of its slot tops; it finishes at the LCA of its slot tops. Walking each
  // top up to the LCA marks exactly the active nodes.
  rd.active.assign(static_cast<std::size_t>(b), {});
  auto lca = [&](int x, int y) {
    while (x != y) {
      if (depth[static_cast<std::size_t>(x)] <
          depth[static_cast<std::size_t>(y)])
        std::swap(x, y);
      x = rd.parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& cls : skel.edge_classes) {
    std::vector<int> tops;
    for (const auto& slot : cls.slots)
      tops.push_back(top[static_cast<std::size_t>(slot.tet)]);
    std::sort(tops.begin(), tops.end());
    tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
    int meet = tops.front();
    for (int t : tops) meet = lca(meet, t);
    for (int t : tops)
      for (int x = t; x != meet; x = rd.parent[static_cast<std::size_t>(x)])
        rd.active[static_cast<std::size_t>(x)].push_back(cls.id);
  }
  for (auto& v : rd.active) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return rd;
}

}  // namespace

DpResult solve_treewidth(const Triangulation& tri, const Skeleton& skel,
                         const TreeDecomposition& td, bool want_witness) {
  require_closed(skel, "solve_treewidth");
  FacePairingGraph g = build_fpg(tri);
  TreeDecomposition checked =
      validate_treedec(g, RawTreeDecomposition{td.bags, td.tree_edges});

  DpResult result;
  result.stats.parameter_width = checked.width;
  result.stats.state_bound =
      static_cast<std::size_t>(6 * (checked.width + 1));

  const int n = tri.tet_count();
  if (n == 0) {
    result.has_taut = true;
    if (want_witness) result.witness = TautStructure{};
    result.stats.max_table_size = 1;
    return result;
  }

  RootedDecomposition rd = root_decomposition(tri, skel, checked);

  struct NodeTable {
    PatternTable table;
    // Witness data per state: one chosen state per child (in child order)
    // and one pair choice per new tetrahedron.
    std::vector<std::vector<std::size_t>> child_states;
    std::vector<std::vector<std::uint8_t>> choices;
  };
  std::vector<NodeTable> tables(static_cast<std::size_t>(checked.bag_count()));

  for (int node : rd.postorder) {
    const auto& kids = rd.children[static_cast<std::size_t>(node)];
    const auto& fresh = rd.new_tets[static_cast<std::size_t>(node)];

    // Fold the children's pattern sets together, summing marks where the
    // same (pinched) edge class is active in several children.
    std::vector<int> merged_active;
    PatternTable merged;
    merged.insert(Pattern{});
    std::vector<std::vector<std::size_t>> merged_children{{}};

    std::size_t children_active_total = 0;
    for (int child : kids) {
      const auto& child_active = rd.active[static_cast<std::size_t>(child)];
      children_active_total += child_active.size();
      auto& child_table = tables[static_cast<std::size_t>(child)];
      std::vector<int> combined = sorted_union(merged_active, child_active);
      auto left_pos = positions_of(merged_active, combined);
      auto right_pos = positions_of(child_active, combined);

      PatternTable next;
      std::vector<std::vector<std::size_t>> next_children;
      for (std::size_t li = 0; li < merged.states.size(); ++li) {
        for (std::size_t ri = 0; ri < child_table.table.states.size(); ++ri) {
          Pattern p(combined.size(), 0);
          for (std::size_t i = 0; i < left_pos.size(); ++i)
            p[static_cast<std::size_t>(left_pos[i])] = merged.states[li][i];
          bool ok = true;
          for (std::size_t i = 0; i < right_pos.size(); ++i) {
            auto& cell = p[static_cast<std::size_t>(right_pos[i])];
            cell = static_cast<std::uint8_t>(
                cell + child_table.table.states[ri][i]);
            if (cell > 2) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          auto [id, fresh_state] = next.insert(std::move(p));
          if (fresh_state && want_witness) {
            if (next_children.size() <= id) next_children.resize(id + 1);
            auto lineage = merged_children[li];
            lineage.push_back(ri);
            next_children[id] = std::move(lineage);
          }
        }
      }
      merged = std::move(next);
      merged_children = std::move(next_children);
      merged_active = std::move(combined);
      if (!want_witness) merged_children.assign(merged.size(), {});
      // A child's table is no longer needed once folded in.
      child_table.table = PatternTable{};
      if (merged.size() == 0) break;
    }

    // Extend over the new tetrahedra, one at a time.
    std::vector<int> working = merged_active;
    {
      std::vector<int> touched;
      for (int tet : fresh)
        for (int e = 0; e < kEdgesPerTet; ++e)
          touched.push_back(skel.edge_class_of(tet, e));
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()),
                    touched.end());
      working = sorted_union(working, touched);
    }

    PatternTable extended;
    std::vector<std::vector<std::size_t>> extended_children;
    std::vector<std::vector<std::uint8_t>> extended_choices;
    {
      auto from_pos = positions_of(merged_active, working);
      for (std::size_t si = 0; si < merged.states.size(); ++si) {
        Pattern p(working.size(), 0);
        for (std::size_t i = 0; i < from_pos.size(); ++i)
          p[static_cast<std::size_t>(from_pos[i])] = merged.states[si][i];
        auto [id, fresh_state] = extended.insert(std::move(p));
        if (fresh_state && want_witness) {
          extended_children.resize(id + 1);
          extended_choices.resize(id + 1);
          extended_children[id] = merged_children[si];
        }
      }
    }
    for (int tet : fresh) {
      std::array<std::vector<std::size_t>, 3> increments;
      for (int choice = 0; choice < 3; ++choice)
        for (int e : kPairEdges[static_cast<std::size_t>(choice)]) {
          int cls = skel.edge_class_of(tet, e);
          auto it = std::lower_bound(working.begin(), working.end(), cls);
          increments[static_cast<std::size_t>(choice)].push_back(
              static_cast<std::size_t>(it - working.begin()));
        }
      PatternTable next;
      std::vector<std::vector<std::size_t>> next_children;
      std::vector<std::vector<std::uint8_t>> next_choices;
      for (std::size_t si = 0; si < extended.states.size(); ++si) {
        for (std::uint8_t choice = 0; choice < 3; ++choice) {
          Pattern p = extended.states[si];
          bool ok = true;
          for (std::size_t pos : increments[choice]) {
            if (++p[pos] > 2) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          auto [id, fresh_state] = next.insert(std::move(p));
          if (fresh_state && want_witness) {
            next_children.resize(id + 1);
            next_choices.resize(id + 1);
            next_children[id] = extended_children[si];
            next_choices[id] = extended_choices[si];
            next_choices[id].push_back(choice);
          }
        }
      }
      extended = std::move(next);
      extended_children = std::move(next_children);
      extended_choices = std::move(next_choices);
      if (extended.size() == 0) break;
    }

    // Classes whose slots all lie inside T_nu are finished: internal ones
    // must carry exactly two marks. Project the survivors onto the node's
    // active list.
    const auto& node_active = rd.active[static_cast<std::size_t>(node)];
    auto keep_pos = positions_of(node_active, working);
    NodeTable out;
    for (std::size_t si = 0; si < extended.states.size(); ++si) {
      const Pattern& p = extended.states[si];
      bool ok = true;
      for (std::size_t i = 0; i < working.size(); ++i) {
        if (std::binary_search(node_active.begin(), node_active.end(),
                               working[i]))
          continue;
        const auto& ec =
            skel.edge_classes[static_cast<std::size_t>(working[i])];
        if (ec.is_boundary ? p[i] > 2 : p[i] != 2) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Pattern projected(node_active.size());
      for (std::size_t i = 0; i < keep_pos.size(); ++i)
        projected[i] = p[static_cast<std::size_t>(keep_pos[i])];
      auto [id, fresh_state] = out.table.insert(std::move(projected));
      if (fresh_state && want_witness) {
        out.child_states.resize(id + 1);
        out.choices.resize(id + 1);
        out.child_states[id] = extended_children[si];
        out.choices[id] = extended_choices[si];
      }
    }

    tables[static_cast<std::size_t>(node)] = std::move(out);

    auto table_size = tables[static_cast<std::size_t>(node)].table.size();
    result.stats.max_table_size =
        std::max(result.stats.max_table_size, table_size);
    result.stats.peak_active_edges = std::max(
        {result.stats.peak_active_edges, node_active.size(),
         children_active_total});
  }

  result.stats.state_bound_ok =
      result.stats.peak_active_edges <= result.stats.state_bound;

  auto& root_table = tables[static_cast<std::size_t>(rd.root)];
  if (!rd.active[static_cast<std::size_t>(rd.root)].empty())
    throw std::logic_error("root of decomposition has active edges");
  result.has_taut = root_table.table.size() > 0;

  if (result.has_taut && want_witness) {
    TautStructure witness;
    witness.choices.assign(static_cast<std::size_t>(n), 0);
    // Walk back down the tree assigning each node's recorded choices.
    struct Frame {
      int node;
      std::size_t state;
    };
    std::vector<Frame> stack{{rd.root, 0}};
    while (!stack.empty()) {
      auto [node, state] = stack.back();
      stack.pop_back();
      const auto& nt = tables[static_cast<std::size_t>(node)];
      const auto& fresh = rd.new_tets[static_cast<std::size_t>(node)];
      const auto& choices = nt.choices[state];
      for (std::size_t i = 0; i < fresh.size(); ++i)
        witness.choices[static_cast<std::size_t>(fresh[i])] = choices[i];
      const auto& kids = rd.children[static_cast<std::size_t>(node)];
      const auto& kid_states = nt.child_states[state];
      for (std::size_t i = 0; i < kids.size(); ++i)
        stack.push_back({kids[i], kid_states[i]});
    }
    if (!is_taut(tri, skel, witness))
      throw std::logic_error("treewidth witness failed is_taut");
    result.witness = std::move(witness);
  }
  return result;
}

std::vector<ScalingRow> measure_scaling(
    const std::function<Triangulation(int)>& family,
    const std::vector<int>& lengths) {
  std::vector<ScalingRow> rows;
  for (int length : lengths) {
    if (length < 1) continue;
    Triangulation tri = family(length);
    Skeleton skel = compute_skeleton(tri);
    TreeDecomposition td = heuristic_treedec(build_fpg(tri));
    auto start = std::chrono::steady_clock::now();
    DpResult r = solve_treewidth(tri, skel, td, false);
    auto stop = std::chrono::steady_clock::now();
    ScalingRow row;
    row.length = length;
    row.tet_count = tri.tet_count();
    row.decomposition_width = td.width;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    row.max_table_size = r.stats.max_table_size;
    row.peak_active_edges = r.stats.peak_active_edges;
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "length,tets,width,wall_ms,max_table,peak_active\n";
  for (const auto& r : rows)
    out << r.length << ',' << r.tet_count << ',' << r.decomposition_width
        << ',' << r.wall_ms << ',' << r.max_table_size << ','
        << r.peak_active_edges << "\n";
  return out.str();
}

}  // namespace tautkit
