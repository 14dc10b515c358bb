#include "tautkit/taut.hpp"

#include <algorithm>

#include "tautkit/layout.hpp"

namespace tautkit {

std::string to_string(const TautStructure& taut) {
  std::string s;
  s.reserve(taut.choices.size());
  for (auto c : taut.choices) s.push_back(static_cast<char>('0' + c));
  return s;
}

TautStructure taut_from_string(const std::string& digits) {
  TautStructure taut;
  taut.choices.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '2')
      throw UsageError("taut structure digits must be in {0,1,2}");
    taut.choices.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return taut;
}

std::vector<int> edge_mark_counts(const Skeleton& skel,
                                  const TautStructure& taut) {
  std::vector<int> counts(skel.edge_classes.size(), 0);
  for (int t = 0; t < static_cast<int>(taut.choices.size()); ++t) {
    for (int e : kPairEdges[taut.choices[static_cast<std::size_t>(t)]])
      ++counts[static_cast<std::size_t>(skel.edge_class_of(t, e))];
  }
  return counts;
}

bool is_taut(const Triangulation& tri, const Skeleton& skel,
             const TautStructure& taut) {
  if (static_cast<int>(taut.choices.size()) != tri.tet_count())
    throw UsageError("choice vector length does not match tetrahedron count");
  for (auto c : taut.choices)
    if (c > 2) throw UsageError("choice out of range");
  auto counts = edge_mark_counts(skel, taut);
  for (const auto& cls : skel.edge_classes) {
    int m = counts[static_cast<std::size_t>(cls.id)];
    if (cls.is_boundary ? m > 2 : m != 2) return false;
  }
  return true;
}

namespace {

struct EnumerationContext {
  const Skeleton* skel;
  std::vector<int> order;                    // processing order of tets
  std::vector<std::vector<int>> finish_at;   // classes finishing per step
  std::vector<int> counts;                   // marks per class so far
  std::vector<std::uint8_t> choices;         // by tetrahedron index
  std::vector<TautStructure> results;
};

void backtrack(EnumerationContext& ctx, std::size_t step) {
  if (step == ctx.order.size()) {
    ctx.results.push_back(TautStructure{ctx.choices});
    return;
  }
  int tet = ctx.order[step];
  for (std::uint8_t choice = 0; choice < 3; ++choice) {
    bool ok = true;
    std::array<int, 2> touched{};
    for (int i = 0; i < 2; ++i) {
      int cls = ctx.skel->edge_class_of(tet, kPairEdges[choice]
                                                       [static_cast<std::size_t>(i)]);
      touched[static_cast<std::size_t>(i)] = cls;
      if (++ctx.counts[static_cast<std::size_t>(cls)] > 2) ok = false;
    }
    if (ok) {
      for (int cls : ctx.finish_at[step]) {
        int m = ctx.counts[static_cast<std::size_t>(cls)];
        const auto& ec = ctx.skel->edge_classes[static_cast<std::size_t>(cls)];
        if (ec.is_boundary ? m > 2 : m != 2) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      ctx.choices[static_cast<std::size_t>(tet)] = choice;
      backtrack(ctx, step + 1);
    }
    for (int i = 1; i >= 0; --i)
      --ctx.counts[static_cast<std::size_t>(
          touched[static_cast<std::size_t>(i)])];
  }
}

}  // namespace

std::vector<TautStructure> enumerate_taut(const Triangulation& tri,
                                          const Skeleton& skel,
                                          std::optional<std::size_t> limit) {
  const int n = tri.tet_count();
  EnumerationContext ctx;
  ctx.skel = &skel;
  // A narrow layout keeps edge classes short-lived, so the completed-class
  // prune fires early. Enumeration output is sorted afterwards, so the
  // order does not leak into the results.
  ctx.order = heuristic_layout(build_fpg(tri)).order;
  ctx.counts.assign(skel.edge_classes.size(), 0);
  ctx.choices.assign(static_cast<std::size_t>(n), 0);
  ctx.finish_at.assign(static_cast<std::size_t>(std::max(n, 1)), {});

  // An edge class is checked at the step that processes its last slot.
  std::vector<int> pos(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    pos[static_cast<std::size_t>(ctx.order[static_cast<std::size_t>(i)])] = i;
  for (const auto& cls : skel.edge_classes) {
    int last = 0;
    for (const auto& slot : cls.slots)
      last = std::max(last, pos[static_cast<std::size_t>(slot.tet)]);
    if (n > 0) ctx.finish_at[static_cast<std::size_t>(last)].push_back(cls.id);
  }

  if (n == 0) {
    // One vacuous structure: nothing to mark.
    return {TautStructure{}};
  }

  backtrack(ctx, 0);
  std::sort(ctx.results.begin(), ctx.results.end());
  if (limit && ctx.results.size() > *limit) ctx.results.resize(*limit);
  return ctx.results;
}

std::array<int, 3> BoundaryTorus::edge_classes(const Skeleton& skel) const {
  std::array<int, 3> out{};
  const std::array<std::array<int, 2>, 3> slots = {{
      {{faces[0].a_edge, faces[1].a_edge}},
      {{faces[0].b_edge, faces[1].b_edge}},
      {{faces[0].c_edge, faces[1].c_edge}},
  }};
  for (int i = 0; i < 3; ++i) {
    int c0 = skel.edge_class_of(faces[0].tet,
                                slots[static_cast<std::size_t>(i)][0]);
    int c1 = skel.edge_class_of(faces[1].tet,
                                slots[static_cast<std::size_t>(i)][1]);
    if (c0 != c1)
      throw UsageError("torus faces disagree on an edge class");
    out[static_cast<std::size_t>(i)] = c0;
  }
  return out;
}

void BoundaryTorus::validate(const Triangulation& tri,
                             const Skeleton& skel) const {
  for (const auto& f : faces) {
    if (!tri.is_boundary_face(f.tet, f.face))
      throw UsageError("torus face is not a boundary face");
    // The typed edges must be the three edges of the face.
    int mask = 0;
    for (int e : {f.a_edge, f.b_edge, f.c_edge}) {
      const auto& fv = kFaceVertices[static_cast<std::size_t>(f.face)];
      bool on_face =
          std::count(fv.begin(), fv.end(),
                     kEdgeVertices[static_cast<std::size_t>(e)][0]) &&
          std::count(fv.begin(), fv.end(),
                     kEdgeVertices[static_cast<std::size_t>(e)][1]);
      if (!on_face) throw UsageError("typed edge does not lie on torus face");
      mask |= 1 << e;
    }
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 3)
      throw UsageError("typed edges of torus face not distinct");
  }
  edge_classes(skel);  // the two faces share all three edge classes

  int vc = skel.vertex_class_of(
      faces[0].tet, kFaceVertices[static_cast<std::size_t>(faces[0].face)][0]);
  for (const auto& f : faces)
    for (int v : kFaceVertices[static_cast<std::size_t>(f.face)])
      if (skel.vertex_class_of(f.tet, v) != vc)
        throw UsageError("torus faces span more than one vertex class");
}

BoundaryPattern boundary_pattern(const TautStructure& taut,
                                 const BoundaryTorus& torus,
                                 const Triangulation& tri,
                                 const Skeleton& skel) {
  for (const auto& f : torus.faces)
    if (!tri.is_boundary_face(f.tet, f.face))
      throw UsageError("boundary_pattern: torus face is not a boundary face");
  auto classes = torus.edge_classes(skel);
  auto counts = edge_mark_counts(skel, taut);
  return BoundaryPattern{counts[static_cast<std::size_t>(classes[0])],
                         counts[static_cast<std::size_t>(classes[1])],
                         counts[static_cast<std::size_t>(classes[2])]};
}

bool check_extension(const TautStructure& small,
                     const std::vector<int>& injection, int big_tet_count,
                     const TautStructure& big) {
  if (injection.size() != small.choices.size())
    throw UsageError("injection length does not match subcomplex size");
  for (std::size_t i = 0; i < injection.size(); ++i) {
    int target = injection[i];
    if (target < 0 || target >= big_tet_count)
      throw UsageError("injection out of range");
    if (big.choices[static_cast<std::size_t>(target)] != small.choices[i])
      return false;
  }
  return true;
}

}  // namespace tautkit
