#include "census.hpp"

#include <algorithm>
#include <set>

#include "tautkit/errors.hpp"

namespace tautkit::testsupport {

namespace {

// All 6 orderings of a target face's three vertices.
const std::vector<std::array<std::uint8_t, 3>>& face_images(int face) {
  static const auto tables = [] {
    std::array<std::vector<std::array<std::uint8_t, 3>>, 4> out;
    for (int f = 0; f < 4; ++f) {
      const auto& fv = kFaceVertices[static_cast<std::size_t>(f)];
      std::array<std::uint8_t, 3> base = {static_cast<std::uint8_t>(fv[0]),
                                          static_cast<std::uint8_t>(fv[1]),
                                          static_cast<std::uint8_t>(fv[2])};
      std::sort(base.begin(), base.end());
      do {
        out[static_cast<std::size_t>(f)].push_back(base);
      } while (std::next_permutation(base.begin(), base.end()));
    }
    return out;
  }();
  return tables[static_cast<std::size_t>(face)];
}

int face_of_images(const std::array<std::uint8_t, 3>& image) {
  return face_of_vertex_set((1 << image[0]) | (1 << image[1]) |
                            (1 << image[2]));
}

// ---------------------------------------------------------------------------
// Canonical keys.
//
// For a connected triangulation: over every (start tetrahedron, labelling of
// its vertices), renumber tetrahedra breadth first (the labelling of each
// newly reached tetrahedron is forced by the gluing that discovers it) and
// encode the relabelled gluing table as a byte string; the key is the
// smallest such string. Components of disconnected triangulations are keyed
// separately, sorted and joined.

struct KeyScratch {
  std::vector<int> new_of;      // old tet -> new index (-1 = unseen)
  std::vector<int> old_of;      // new index -> old tet
  std::vector<std::array<std::uint8_t, 4>> vmap;  // old tet -> relabelling
  std::vector<int> order;
  std::string candidate;
};

// Builds the key candidate for one (start, labelling) choice. Aborts and
// returns false as soon as the candidate is lexicographically worse than
// `best` (empty best = keep everything).
bool component_candidate(const Triangulation& tri,
                         const std::vector<int>& members, int start,
                         const std::array<std::uint8_t, 4>& labelling,
                         KeyScratch& s, const std::string& best) {
  bool bounded = !best.empty();
  bool decided_better = false;
  auto push = [&](char byte) {
    std::size_t pos = s.candidate.size();
    s.candidate.push_back(byte);
    if (bounded && !decided_better) {
      if (byte > best[pos]) return false;
      if (byte < best[pos]) decided_better = true;
    }
    return true;
  };
  for (int m : members) s.new_of[static_cast<std::size_t>(m)] = -1;
  s.order.clear();
  s.candidate.clear();

  s.new_of[static_cast<std::size_t>(start)] = 0;
  s.old_of[0] = start;
  s.vmap[static_cast<std::size_t>(start)] = labelling;
  s.order.push_back(start);

  for (std::size_t qi = 0; qi < s.order.size(); ++qi) {
    int x = s.order[qi];
    const auto& vm = s.vmap[static_cast<std::size_t>(x)];
    // Old face index for each new face of x.
    std::array<int, 4> old_face{};
    for (int ff = 0; ff < 4; ++ff) {
      const auto& fv = kFaceVertices[static_cast<std::size_t>(ff)];
      int mask = 0;
      for (int v : fv) mask |= 1 << vm[static_cast<std::size_t>(v)];
      old_face[static_cast<std::size_t>(face_of_vertex_set(mask))] = ff;
    }
    for (int nf = 0; nf < 4; ++nf) {
      int ff = old_face[static_cast<std::size_t>(nf)];
      const auto& g = tri.gluing(x, ff);
      if (!g) {
        if (!push('\0')) return false;
        continue;
      }
      int target = g->tet;
      if (s.new_of[static_cast<std::size_t>(target)] < 0) {
        // Forced labelling of the target: images inherit the source's new
        // labels, the leftover vertex gets the leftover label.
        std::array<std::uint8_t, 4> tvm{};
        std::array<bool, 4> assigned{};
        const auto& fv = kFaceVertices[static_cast<std::size_t>(ff)];
        for (int i = 0; i < 3; ++i) {
          int src = fv[static_cast<std::size_t>(i)];
          int dst = g->image[static_cast<std::size_t>(i)];
          tvm[static_cast<std::size_t>(dst)] =
              vm[static_cast<std::size_t>(src)];
          assigned[static_cast<std::size_t>(dst)] = true;
        }
        int left = 0 + 1 + 2 + 3;
        int free_old = -1;
        for (int v = 0; v < 4; ++v) {
          if (assigned[static_cast<std::size_t>(v)])
            left -= tvm[static_cast<std::size_t>(v)];
          else
            free_old = v;
        }
        tvm[static_cast<std::size_t>(free_old)] =
            static_cast<std::uint8_t>(left);
        int idx = static_cast<int>(s.order.size());
        s.new_of[static_cast<std::size_t>(target)] = idx;
        s.old_of[static_cast<std::size_t>(idx)] = target;
        s.vmap[static_cast<std::size_t>(target)] = tvm;
        s.order.push_back(target);
      }
      // Encode target new index plus the new images of the new face's
      // vertices in ascending order.
      const auto& tvm = s.vmap[static_cast<std::size_t>(target)];
      std::array<std::uint8_t, 3> pairs_src{};
      std::array<std::uint8_t, 3> pairs_dst{};
      const auto& fv = kFaceVertices[static_cast<std::size_t>(ff)];
      for (int i = 0; i < 3; ++i) {
        pairs_src[static_cast<std::size_t>(i)] = vm[static_cast<std::size_t>(
            fv[static_cast<std::size_t>(i)])];
        pairs_dst[static_cast<std::size_t>(i)] = tvm[static_cast<std::size_t>(
            g->image[static_cast<std::size_t>(i)])];
      }
      // Sort by the new source labels.
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (pairs_src[static_cast<std::size_t>(j)] <
              pairs_src[static_cast<std::size_t>(i)]) {
            std::swap(pairs_src[static_cast<std::size_t>(i)],
                      pairs_src[static_cast<std::size_t>(j)]);
            std::swap(pairs_dst[static_cast<std::size_t>(i)],
                      pairs_dst[static_cast<std::size_t>(j)]);
          }
      if (!push(static_cast<char>(
              1 + s.new_of[static_cast<std::size_t>(target)])))
        return false;
      for (int i = 0; i < 3; ++i)
        if (!push(static_cast<char>(
                1 + pairs_dst[static_cast<std::size_t>(i)])))
          return false;
    }
  }
  return true;
}

std::string component_key(const Triangulation& tri,
                          const std::vector<int>& members, KeyScratch& s) {
  std::string best;
  for (int start : members) {
    std::array<std::uint8_t, 4> labelling = {0, 1, 2, 3};
    do {
      if (component_candidate(tri, members, start, labelling, s, best) &&
          (best.empty() || s.candidate < best))
        best = s.candidate;
    } while (std::next_permutation(labelling.begin(), labelling.end()));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive gluing search for the connected census.

// Union-find with parity and an undo trail, no path compression, so the
// search can backtrack cheaply.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n)
      : parent_(n), rank_(n, 0), parity_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<std::size_t, int> find(std::size_t x) const {
    int par = 0;
    while (parent_[x] != x) {
      par ^= parity_[x];
      x = parent_[x];
    }
    return {x, par};
  }

  bool unite(std::size_t a, std::size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    trail_.push_back({rb, rank_[ra]});
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

  std::size_t mark() const { return trail_.size(); }

  void rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [child, old_rank] = trail_.back();
      trail_.pop_back();
      auto [root, par] = find(child);
      (void)par;
      rank_[root] = old_rank;
      parent_[child] = child;
      parity_[child] = 0;
    }
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
  std::vector<int> parity_;
  struct Entry {
    std::size_t child;
    int old_rank;
  };
  std::vector<Entry> trail_;
};

struct SearchState {
  int n;
  struct Cell {
    int target = -1;
    int face = -1;
    std::array<std::uint8_t, 3> image{};
    bool glued = false;
  };
  std::vector<std::array<Cell, 4>> cells;
  int used = 1;
  RollbackUnionFind edges;
  std::set<std::string>* seen;
  std::vector<Triangulation>* out;
  KeyScratch scratch;

  SearchState(int n_, std::set<std::string>* seen_,
              std::vector<Triangulation>* out_)
      : n(n_),
        cells(static_cast<std::size_t>(n_)),
        edges(static_cast<std::size_t>(n_) * kEdgesPerTet),
        seen(seen_),
        out(out_) {
    scratch.new_of.assign(static_cast<std::size_t>(n_), -1);
    scratch.old_of.assign(static_cast<std::size_t>(n_), 0);
    scratch.vmap.assign(static_cast<std::size_t>(n_), {});
  }
};

bool apply_edges(SearchState& st, int t, int f,
                 const std::array<std::uint8_t, 3>& image, int target) {
  const auto& fv = kFaceVertices[static_cast<std::size_t>(f)];
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      int u = fv[static_cast<std::size_t>(i)];
      int v = fv[static_cast<std::size_t>(j)];
      int iu = image[static_cast<std::size_t>(i)];
      int iv = image[static_cast<std::size_t>(j)];
      int e = kEdgeIndex[static_cast<std::size_t>(u)]
                        [static_cast<std::size_t>(v)];
      int ie = kEdgeIndex[static_cast<std::size_t>(iu)]
                         [static_cast<std::size_t>(iv)];
      if (!st.edges.unite(
              static_cast<std::size_t>(t * kEdgesPerTet + e),
              static_cast<std::size_t>(target * kEdgesPerTet + ie),
              iu < iv ? 0 : 1))
        return false;
    }
  }
  return true;
}

Triangulation to_triangulation(const SearchState& st) {
  Triangulation tri(st.n);
  for (int t = 0; t < st.n; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& cell = st.cells[static_cast<std::size_t>(t)]
                                 [static_cast<std::size_t>(f)];
      if (!cell.glued || std::make_pair(cell.target, cell.face) <
                             std::make_pair(t, f))
        continue;
      tri.set_gluing(t, f, cell.target, cell.image);
    }
  return tri;
}

// Self-gluings of face 012 that are minimal in their orbit under the 24
// relabellings of the tetrahedron. Any triangulation whose search starts
// with a tet-0 self-gluing is isomorphic to one starting with a
// representative, so other first moves can be skipped.
const std::set<std::pair<int, std::array<std::uint8_t, 3>>>&
canonical_first_self_gluings() {
  static const auto reps = [] {
    using Move = std::pair<int, std::array<std::uint8_t, 3>>;  // face, image
    std::set<Move> result;
    std::array<std::uint8_t, 4> rho = {0, 1, 2, 3};
    std::vector<std::array<std::uint8_t, 4>> perms;
    do {
      perms.push_back(rho);
    } while (std::next_permutation(rho.begin(), rho.end()));

    for (int tf = 1; tf < 4; ++tf) {
      for (const auto& image : face_images(tf)) {
        // Orbit of the unordered pair (face 012 -> face tf via image).
        Move best{5, {}};
        for (const auto& p : perms) {
          // Transform both directions of the pair and normalise to a move
          // whose source face is 012.
          for (int dir = 0; dir < 2; ++dir) {
            std::array<std::uint8_t, 3> src{}, dst{};
            if (dir == 0) {
              src = {0, 1, 2};
              dst = image;
            } else {
              const auto& tv = kFaceVertices[static_cast<std::size_t>(tf)];
              // Inverse direction: target face's ascending vertices map
              // back into face 012.
              for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j)
                  if (image[static_cast<std::size_t>(j)] ==
                      tv[static_cast<std::size_t>(i)])
                    dst[static_cast<std::size_t>(i)] =
                        static_cast<std::uint8_t>(j);
              }
              src = {static_cast<std::uint8_t>(tv[0]),
                     static_cast<std::uint8_t>(tv[1]),
                     static_cast<std::uint8_t>(tv[2])};
            }
            std::array<std::uint8_t, 3> rsrc{}, rdst{};
            for (int i = 0; i < 3; ++i) {
              rsrc[static_cast<std::size_t>(i)] =
                  p[static_cast<std::size_t>(src[static_cast<std::size_t>(i)])];
              rdst[static_cast<std::size_t>(i)] =
                  p[static_cast<std::size_t>(dst[static_cast<std::size_t>(i)])];
            }
            // The relabelled source face must be 012.
            if (face_of_images(rsrc) != 0) continue;
            // Order by ascending source vertex.
            for (int i = 0; i < 3; ++i)
              for (int j = i + 1; j < 3; ++j)
                if (rsrc[static_cast<std::size_t>(j)] <
                    rsrc[static_cast<std::size_t>(i)]) {
                  std::swap(rsrc[static_cast<std::size_t>(i)],
                            rsrc[static_cast<std::size_t>(j)]);
                  std::swap(rdst[static_cast<std::size_t>(i)],
                            rdst[static_cast<std::size_t>(j)]);
                }
            Move candidate{face_of_images(rdst), rdst};
            best = std::min(best, candidate);
          }
        }
        result.insert(best);
      }
    }
    return result;
  }();
  return reps;
}

void search(SearchState& st, bool first_move) {
  int t = -1, f = -1;
  for (int tt = 0; tt < st.used && t < 0; ++tt)
    for (int ff = 0; ff < 4; ++ff)
      if (!st.cells[static_cast<std::size_t>(tt)]
                   [static_cast<std::size_t>(ff)]
                       .glued) {
        t = tt;
        f = ff;
        break;
      }
  if (t < 0) {
    if (st.used == st.n) {
      Triangulation tri = to_triangulation(st);
      std::vector<int> members(static_cast<std::size_t>(st.n));
      for (int i = 0; i < st.n; ++i) members[static_cast<std::size_t>(i)] = i;
      std::string key = component_key(tri, members, st.scratch);
      if (st.seen->insert(key).second) st.out->push_back(std::move(tri));
    }
    return;
  }

  auto try_gluing = [&](int target, const std::array<std::uint8_t, 3>& image,
                        bool fresh) {
    int tf = face_of_images(image);
    auto& here =
        st.cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
    auto& there = st.cells[static_cast<std::size_t>(target)]
                          [static_cast<std::size_t>(tf)];
    if (there.glued) return;
    if (target == t && tf == f) return;
    std::size_t mark = st.edges.mark();
    if (!apply_edges(st, t, f, image, target)) {
      st.edges.rollback(mark);
      return;
    }
    here = {target, tf, image, true};
    Gluing fwd{target, image};
    Gluing inv = fwd.inverse(t, f);
    there = {t, f, inv.image, true};
    if (fresh) ++st.used;
    search(st, false);
    if (fresh) --st.used;
    here = {};
    there = {};
    st.edges.rollback(mark);
  };

  for (int target = t; target < st.used; ++target)
    for (int tf = 0; tf < 4; ++tf) {
      if (std::make_pair(target, tf) <= std::make_pair(t, f)) continue;
      for (const auto& image : face_images(tf)) {
        if (first_move && target == 0 &&
            !canonical_first_self_gluings().count({tf, image}))
          continue;
        try_gluing(target, image, false);
      }
    }
  // Introduce the next fresh tetrahedron; its labelling freedom is spent by
  // fixing the gluing to face 012 with the identity ordering.
  if (st.used < st.n) try_gluing(st.used, {0, 1, 2}, true);
}

}  // namespace

std::string canonical_key(const Triangulation& tri) {
  const int n = tri.tet_count();
  if (n == 0) return std::string();

  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    int id = static_cast<int>(components.size());
    std::vector<int> member{s};
    comp[static_cast<std::size_t>(s)] = id;
    for (std::size_t qi = 0; qi < member.size(); ++qi) {
      int x = member[qi];
      for (int ff = 0; ff < 4; ++ff) {
        const auto& g = tri.gluing(x, ff);
        if (g && comp[static_cast<std::size_t>(g->tet)] < 0) {
          comp[static_cast<std::size_t>(g->tet)] = id;
          member.push_back(g->tet);
        }
      }
    }
    components.push_back(std::move(member));
  }

  KeyScratch scratch;
  scratch.new_of.assign(static_cast<std::size_t>(n), -1);
  scratch.old_of.assign(static_cast<std::size_t>(n), 0);
  scratch.vmap.assign(static_cast<std::size_t>(n), {});

  std::vector<std::string> keys;
  for (const auto& members : components)
    keys.push_back(component_key(tri, members, scratch));
  std::sort(keys.begin(), keys.end());
  std::string joined;
  for (const auto& k : keys) {
    joined += k;
    joined += '\xff';
  }
  return joined;
}

std::vector<Triangulation> connected_closed_census(int n) {
  std::set<std::string> seen;
  std::vector<Triangulation> out;
  if (n <= 0) return out;
  SearchState st(n, &seen, &out);
  search(st, true);
  return out;
}

std::vector<Triangulation> closed_census_up_to(int max_tets) {
  std::vector<std::vector<Triangulation>> connected(
      static_cast<std::size_t>(max_tets) + 1);
  for (int n = 1; n <= max_tets; ++n)
    connected[static_cast<std::size_t>(n)] = connected_closed_census(n);

  std::vector<Triangulation> out;
  std::set<std::string> seen;

  struct Chooser {
    const std::vector<std::vector<Triangulation>>& connected;
    std::vector<Triangulation>& out;
    std::set<std::string>& seen;

    void emit(const std::vector<const Triangulation*>& parts) {
      int total = 0;
      for (const auto* p : parts) total += p->tet_count();
      Triangulation joined(total);
      int offset = 0;
      for (const auto* p : parts) {
        for (int t = 0; t < p->tet_count(); ++t)
          for (int f = 0; f < 4; ++f) {
            const auto& g = p->gluing(t, f);
            if (!g || std::make_pair(g->tet, g->target_face()) <
                          std::make_pair(t, f))
              continue;
            joined.set_gluing(offset + t, f, offset + g->tet, g->image);
          }
        offset += p->tet_count();
      }
      if (seen.insert(canonical_key(joined)).second)
        out.push_back(std::move(joined));
    }

    // Components chosen with (size, index) nondecreasing so each multiset
    // appears once.
    void recurse(std::vector<const Triangulation*>& parts, int budget,
                 int min_size, std::size_t min_index) {
      if (!parts.empty()) emit(parts);
      for (int size = min_size; size <= budget; ++size) {
        const auto& pool = connected[static_cast<std::size_t>(size)];
        for (std::size_t i = (size == min_size ? min_index : 0);
             i < pool.size(); ++i) {
          parts.push_back(&pool[i]);
          recurse(parts, budget - size, size, i);
          parts.pop_back();
        }
      }
    }
  };

  Chooser chooser{connected, out, seen};
  std::vector<const Triangulation*> parts;
  chooser.recurse(parts, max_tets, 1, 0);
  return out;
}

}  // namespace tautkit::testsupport
