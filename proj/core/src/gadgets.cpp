#include "tautkit/gadgets.hpp"

#include <algorithm>

namespace tautkit {

std::string to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::variable: return "variable";
    case GadgetKind::fork: return "fork";
    case GadgetKind::clause: return "clause";
  }
  return "?";
}

namespace {

struct TableEntry {
  int target;  // -1 = boundary
  std::array<std::uint8_t, 3> image;
};

constexpr TableEntry B{-1, {0, 0, 0}};

// The fork gadget: the annular prism triangulation with the upper and
// lower annuli identified. Faces in 012, 013, 023, 123 order.
constexpr TableEntry kForkTable[21][4] = {
    {{17, {2, 0, 1}}, {12, {2, 0, 1}}, {17, {2, 1, 3}}, {3, {1, 2, 3}}},
    {{6, {2, 3, 1}}, {19, {2, 3, 1}}, {19, {2, 0, 1}}, {10, {1, 2, 3}}},
    {{18, {2, 0, 1}}, {7, {2, 3, 1}}, {15, {2, 1, 0}}, B},
    {B, {8, {0, 1, 3}}, B, {0, {1, 2, 3}}},
    {{15, {2, 3, 1}}, {14, {2, 1, 0}}, {18, {2, 1, 3}}, B},
    {B, {11, {2, 3, 1}}, {20, {2, 0, 1}}, {14, {3, 2, 1}}},
    {B, {10, {0, 2, 1}}, {7, {0, 2, 3}}, {1, {2, 0, 1}}},
    {{13, {2, 1, 3}}, {13, {2, 1, 0}}, {6, {0, 2, 3}}, {2, {3, 0, 1}}},
    {{16, {1, 0, 2}}, {3, {0, 1, 3}}, {16, {1, 2, 3}}, {9, {1, 2, 3}}},
    {{12, {2, 1, 3}}, {10, {0, 1, 3}}, {10, {0, 2, 3}}, {8, {1, 2, 3}}},
    {{6, {0, 3, 1}}, {9, {0, 1, 3}}, {9, {0, 2, 3}}, {1, {1, 2, 3}}},
    {{20, {3, 1, 2}}, {12, {0, 1, 3}}, {12, {0, 2, 3}}, {5, {3, 0, 1}}},
    {{0, {1, 3, 0}}, {11, {0, 1, 3}}, {11, {0, 2, 3}}, {9, {1, 0, 2}}},
    {{7, {3, 1, 0}}, {14, {0, 1, 3}}, {14, {0, 2, 3}}, {7, {1, 0, 2}}},
    {{4, {3, 1, 0}}, {13, {0, 1, 3}}, {13, {0, 2, 3}}, {5, {3, 2, 1}}},
    {{2, {3, 2, 0}}, {16, {0, 1, 3}}, {16, {0, 2, 3}}, {4, {2, 0, 1}}},
    {{8, {1, 0, 2}}, {15, {0, 1, 3}}, {15, {0, 2, 3}}, {8, {0, 2, 3}}},
    {{0, {1, 2, 0}}, {18, {0, 1, 3}}, {18, {0, 2, 3}}, {0, {2, 0, 3}}},
    {{2, {1, 2, 0}}, {17, {0, 1, 3}}, {17, {0, 2, 3}}, {4, {2, 0, 3}}},
    {{1, {2, 3, 0}}, {20, {0, 1, 3}}, {20, {0, 2, 3}}, {1, {3, 0, 1}}},
    {{5, {2, 3, 0}}, {19, {0, 1, 3}}, {19, {0, 2, 3}}, {11, {1, 2, 0}}},
};

// Builds a triangulation from a gluing table, verifying that the table is
// mutually inverse entry by entry (a transcription guard).
Triangulation build_from_table(const TableEntry (*table)[4], int n) {
  Triangulation tri(n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < kFacesPerTet; ++f) {
      const TableEntry& entry = table[t][f];
      if (entry.target < 0) continue;
      const auto& existing = tri.gluing(t, f);
      if (existing) {
        if (existing->tet != entry.target || existing->image != entry.image)
          throw std::logic_error("gadget table is not mutually inverse");
        continue;
      }
      tri.set_gluing(t, f, entry.target, entry.image);
    }
  }
  return tri;
}

// Vertex type masks for a typed face: for each face vertex (in ascending
// order), the set of types (a=1, b=2, c=4) of its two incident typed edges.
std::array<int, 3> vertex_type_masks(const TorusFace& f) {
  const auto& fv = kFaceVertices[static_cast<std::size_t>(f.face)];
  auto type_of = [&](int e) -> int {
    if (e == f.a_edge) return 1;
    if (e == f.b_edge) return 2;
    if (e == f.c_edge) return 4;
    throw std::logic_error("face edge carries no type");
  };
  std::array<int, 3> masks{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      int e = kEdgeIndex[static_cast<std::size_t>(
          fv[static_cast<std::size_t>(i)])][static_cast<std::size_t>(
          fv[static_cast<std::size_t>(j)])];
      masks[static_cast<std::size_t>(i)] |= type_of(e);
    }
  }
  return masks;
}

// Glues face `from` onto face `to` so that the a/b/c edge types match; the
// vertex correspondence is forced because each face vertex is named by the
// pair of types meeting there.
void glue_typed(Triangulation& tri, const TorusFace& from,
                const TorusFace& to) {
  auto from_masks = vertex_type_masks(from);
  auto to_masks = vertex_type_masks(to);
  const auto& to_fv = kFaceVertices[static_cast<std::size_t>(to.face)];
  std::array<std::uint8_t, 3> image{};
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (int j = 0; j < 3; ++j) {
      if (to_masks[static_cast<std::size_t>(j)] ==
          from_masks[static_cast<std::size_t>(i)]) {
        image[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
            to_fv[static_cast<std::size_t>(j)]);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("edge-type mismatch in attachment");
  }
  tri.set_gluing(from.tet, from.face, to.tet, image);
}

TorusFace offset_face(const TorusFace& f, int offset) {
  TorusFace out = f;
  out.tet += offset;
  return out;
}

BoundaryTorus offset_torus(const BoundaryTorus& t, int offset) {
  return BoundaryTorus{
      {offset_face(t.faces[0], offset), offset_face(t.faces[1], offset)}};
}

// Face pairing for attachments: torus face 0 onto the site's first face.
// A two-face torus carries an involution swapping its faces and preserving
// the edge types, so the mirrored pairing yields an isomorphic result.
void attach_two_faces(Triangulation& tri, const BoundaryTorus& torus,
                      const BoundaryTorus& site) {
  glue_typed(tri, torus.faces[0], site.faces[0]);
  glue_typed(tri, torus.faces[1], site.faces[1]);
}

}  // namespace

GadgetBlock build_variable_gadget() {
  GadgetBlock block;
  block.kind = GadgetKind::variable;
  block.tri = Triangulation(2);
  // One-tetrahedron solid torus: fold faces 013 and 123 of tet 0 together,
  // then layer tet 1 over the two remaining faces.
  block.tri.set_gluing(0, 1, 0, {1, 3, 2});
  block.tri.set_gluing(0, 0, 1, {0, 1, 3});
  block.tri.set_gluing(0, 2, 1, {1, 2, 3});
  block.sites.push_back(BoundaryTorus{{
      TorusFace{1, 0, /*a=*/0, /*b=*/3, /*c=*/1},
      TorusFace{1, 2, /*a=*/5, /*b=*/2, /*c=*/1},
  }});
  return block;
}

Triangulation build_fork_prism() {
  TableEntry prism[21][4];
  for (int t = 0; t < 21; ++t)
    for (int f = 0; f < 4; ++f) prism[t][f] = kForkTable[t][f];
  // Unglue the upper and lower annuli.
  prism[5][3] = B;
  prism[8][0] = B;
  prism[8][2] = B;
  prism[14][3] = B;
  prism[16][0] = B;
  prism[16][3] = B;
  return build_from_table(prism, 21);
}

std::vector<AnnulusGluing> fork_annulus_identification() {
  return {
      {5, 3, 14, {3, 2, 1}},
      {8, 0, 16, {1, 0, 2}},
      {8, 2, 16, {1, 2, 3}},
  };
}

GadgetBlock build_fork_gadget() {
  GadgetBlock block;
  block.kind = GadgetKind::fork;
  block.tri = build_from_table(kForkTable, 21);
  // Outer right side (attachment site consuming an existing torus).
  block.sites.push_back(BoundaryTorus{{
      TorusFace{3, 2, /*a=*/2, /*b=*/5, /*c=*/1},
      TorusFace{4, 3, /*a=*/3, /*b=*/5, /*c=*/4},
  }});
  // Outer left side: the new torus Theta'' once the right side is glued.
  block.sites.push_back(BoundaryTorus{{
      TorusFace{3, 0, /*a=*/0, /*b=*/3, /*c=*/1},
      TorusFace{2, 3, /*a=*/5, /*b=*/3, /*c=*/4},
  }});
  // Inner torus Theta'. The horizontal edge is type c; the vertical (a)
  // versus diagonal (b) assignment is pinned by the gadget's four taut
  // structures (the vertical edge is the one marked twice whenever the
  // outer diagonal right edge is).
  block.sites.push_back(BoundaryTorus{{
      TorusFace{5, 0, /*a=*/1, /*b=*/0, /*c=*/3},
      TorusFace{6, 0, /*a=*/3, /*b=*/0, /*c=*/1},
  }});
  return block;
}

GadgetBlock build_clause_gadget() {
  GadgetBlock block;
  block.kind = GadgetKind::clause;
  block.tri = Triangulation(4);
  // Cone a two-face torus (square ABCD, diagonal AC) to a point: tets
  // 0 = ABCX and 1 = ACDX, with the side faces joined according to the
  // torus identifications and the diagonal faces ACX joined to each other.
  block.tri.set_gluing(0, 1, 1, {2, 1, 3});  // ABX <-> DCX
  block.tri.set_gluing(0, 3, 1, {0, 2, 3});  // BCX <-> ADX
  block.tri.set_gluing(0, 2, 1, {0, 1, 3});  // ACX <-> ACX
  // One new tetrahedron over each remaining face of the cone.
  block.tri.set_gluing(0, 0, 2, {0, 1, 2});
  block.tri.set_gluing(1, 0, 3, {0, 1, 2});
  // The six boundary faces form a torus, presented as a hexagon split into
  // three rectangles; each rectangle pairs one face around each apex, with
  // the rectangle diagonal carrying type a.
  block.sites.push_back(BoundaryTorus{{
      TorusFace{2, 2, /*a=*/1, /*b=*/5, /*c=*/2},
      TorusFace{3, 1, /*a=*/0, /*b=*/2, /*c=*/4},
  }});
  block.sites.push_back(BoundaryTorus{{
      TorusFace{2, 1, /*a=*/0, /*b=*/2, /*c=*/4},
      TorusFace{3, 3, /*a=*/3, /*b=*/4, /*c=*/5},
  }});
  block.sites.push_back(BoundaryTorus{{
      TorusFace{2, 3, /*a=*/3, /*b=*/4, /*c=*/5},
      TorusFace{3, 2, /*a=*/1, /*b=*/5, /*c=*/2},
  }});
  return block;
}

int Assembly::open_torus_count() const {
  int count = 0;
  for (const auto& t : tori_)
    if (!t.consumed) ++count;
  return count;
}

bool Assembly::is_consumed(int torus_id) const {
  if (torus_id < 0 || torus_id >= static_cast<int>(tori_.size()))
    throw UsageError("torus id out of range");
  return tori_[static_cast<std::size_t>(torus_id)].consumed;
}

const BoundaryTorus& Assembly::torus(int torus_id) const {
  if (torus_id < 0 || torus_id >= static_cast<int>(tori_.size()))
    throw UsageError("torus id out of range");
  return tori_[static_cast<std::size_t>(torus_id)].torus;
}

int Assembly::register_torus(const BoundaryTorus& torus) {
  torus.validate(tri_, skel_);
  tori_.push_back(OpenTorus{torus, false});
  return static_cast<int>(tori_.size()) - 1;
}

const BoundaryTorus& Assembly::consume(int torus_id) {
  if (torus_id < 0 || torus_id >= static_cast<int>(tori_.size()))
    throw UsageError("torus id out of range");
  auto& entry = tori_[static_cast<std::size_t>(torus_id)];
  if (entry.consumed)
    throw UsageError("torus " + std::to_string(torus_id) +
                     " already consumed");
  entry.consumed = true;
  return entry.torus;
}

void Assembly::append_block(const GadgetBlock& block, TetProvenance prov,
                            int* offset) {
  *offset = tri_.add_tetrahedra(block.tri.tet_count());
  for (int t = 0; t < block.tri.tet_count(); ++t) {
    provenance_.push_back(prov);
    for (int f = 0; f < kFacesPerTet; ++f) {
      const auto& g = block.tri.gluing(t, f);
      if (!g || std::make_pair(g->tet, g->target_face()) <
                    std::make_pair(t, f))
        continue;
      tri_.set_gluing(*offset + t, f, *offset + g->tet, g->image);
    }
  }
}

int Assembly::add_variable_gadget(int variable_index) {
  GadgetBlock block = build_variable_gadget();
  current_variable_ = variable_index;
  int offset = 0;
  append_block(block,
               TetProvenance{GadgetKind::variable, variable_index,
                             variable_index},
               &offset);
  skel_ = compute_skeleton(tri_);
  return register_torus(offset_torus(block.sites[0], offset));
}

std::pair<int, int> Assembly::attach_fork(int torus_id) {
  const BoundaryTorus target = consume(torus_id);
  GadgetBlock block = build_fork_gadget();
  int offset = 0;
  append_block(block,
               TetProvenance{GadgetKind::fork, fork_instances_++,
                             current_variable_},
               &offset);
  attach_two_faces(tri_, target, offset_torus(block.sites[0], offset));
  skel_ = compute_skeleton(tri_);
  int theta_prime = register_torus(offset_torus(block.sites[2], offset));
  int theta_double_prime =
      register_torus(offset_torus(block.sites[1], offset));
  return {theta_prime, theta_double_prime};
}

void Assembly::attach_clause(int t1, int t2, int t3, int clause_index) {
  if (t1 == t2 || t1 == t3 || t2 == t3)
    throw UsageError("attach_clause requires three distinct tori");
  const BoundaryTorus a = consume(t1);
  const BoundaryTorus b = consume(t2);
  const BoundaryTorus c = consume(t3);
  GadgetBlock block = build_clause_gadget();
  int offset = 0;
  append_block(block, TetProvenance{GadgetKind::clause, clause_index, -1},
               &offset);
  attach_two_faces(tri_, a, offset_torus(block.sites[0], offset));
  attach_two_faces(tri_, b, offset_torus(block.sites[1], offset));
  attach_two_faces(tri_, c, offset_torus(block.sites[2], offset));
  skel_ = compute_skeleton(tri_);
}

ReductionResult reduce_sat(const SatInstance& inst) {
  for (const auto& clause : inst.clauses) {
    for (int v : clause)
      if (v < 0 || v >= inst.variable_count)
        throw UsageError("variable index out of range");
    if (clause[0] == clause[1] || clause[0] == clause[2] ||
        clause[1] == clause[2])
      throw UsageError("repeated variable in clause");
  }

  ReductionResult result;
  auto occurrences = inst.occurrences();
  std::vector<int> remap(static_cast<std::size_t>(inst.variable_count), -1);
  int used = 0;
  for (int v = 0; v < inst.variable_count; ++v) {
    if (occurrences[static_cast<std::size_t>(v)] == 0)
      result.dropped_variables.push_back(v);
    else
      remap[static_cast<std::size_t>(v)] = used++;
  }

  Assembly assembly;
  // One torus copy per occurrence of each variable: the chain of forks
  // exposes its inner torus at every step and the final outer torus.
  std::vector<std::vector<int>> copies(static_cast<std::size_t>(used));
  for (int v = 0; v < inst.variable_count; ++v) {
    int idx = remap[static_cast<std::size_t>(v)];
    if (idx < 0) continue;
    int needed = occurrences[static_cast<std::size_t>(v)];
    int chain = assembly.add_variable_gadget(idx);
    auto& list = copies[static_cast<std::size_t>(idx)];
    for (int k = 0; k < needed - 1; ++k) {
      auto [inner, outer] = assembly.attach_fork(chain);
      list.push_back(inner);
      chain = outer;
    }
    list.push_back(chain);
  }

  std::vector<std::size_t> next_copy(static_cast<std::size_t>(used), 0);
  for (int c = 0; c < inst.clause_count(); ++c) {
    std::array<int, 3> ids{};
    for (int s = 0; s < 3; ++s) {
      int v = remap[static_cast<std::size_t>(
          inst.clauses[static_cast<std::size_t>(c)][static_cast<std::size_t>(
              s)])];
      ids[static_cast<std::size_t>(s)] =
          copies[static_cast<std::size_t>(v)]
                [next_copy[static_cast<std::size_t>(v)]++];
    }
    assembly.attach_clause(ids[0], ids[1], ids[2], c);
  }

  result.tri = assembly.triangulation();
  result.provenance = assembly.provenance();

  const int t = used;
  const int c = inst.clause_count();
  if (result.tri.tet_count() != 67 * c - 19 * t)
    throw std::logic_error("reduction size mismatch");
  if (!result.tri.boundary_faces().empty())
    throw std::logic_error("reduction output has boundary faces");
  return result;
}

}  // namespace tautkit
