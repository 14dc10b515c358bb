#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautkit/base.hpp"
#include "tautkit/errors.hpp"

namespace tautkit {

// One side of a face gluing: the i-th vertex (ascending) of the source face
// maps to vertex image[i] of tetrahedron tet.
struct Gluing {
  int tet = -1;
  std::array<std::uint8_t, 3> image = {0, 0, 0};

  int target_face() const;
  Gluing inverse(int source_tet, int source_face) const;

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

// A generalized 3-manifold triangulation: n abstract tetrahedra whose faces
// are either glued in pairs (affinely, via a vertex correspondence) or left
// as boundary faces. Gluings are kept mutually inverse at all times and a
// face is never glued to itself.
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(int tet_count);

  int tet_count() const { return static_cast<int>(gluings_.size()); }

  // Appends `count` unglued tetrahedra; returns the index of the first one.
  int add_tetrahedra(int count);

  const std::optional<Gluing>& gluing(int tet, int face) const;
  bool is_boundary_face(int tet, int face) const;

  // Glues (tet,face) to the face of `target` spanned by `image`, and records
  // the inverse gluing on the other side. Throws ValidityError on a face
  // glued to itself or an already-glued face, UsageError on bad indices.
  void set_gluing(int tet, int face, int target,
                  std::array<std::uint8_t, 3> image);

  std::vector<std::pair<int, int>> boundary_faces() const;

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

 private:
  void check_face(int tet, int face, const char* what) const;

  std::vector<std::array<std::optional<Gluing>, 4>> gluings_;
};

// Parses the line-oriented triangulation file format:
//
//   tri 1
//   tets <n>
//   tet <i>: <g012> <g013> <g023> <g123>
//
// where each <gF> is `bdry` or `<j>:<abc>` with <abc> the images, in order,
// of face F's vertices listed ascending. `#` starts a comment. Exactly one
// `tet` line per index is required (none for n = 0).
Triangulation parse_triangulation(const std::string& text);

// Canonical serialization: header, then one `tet` line per tetrahedron in
// index order with faces in 012, 013, 023, 123 order.
std::string serialize_triangulation(const Triangulation& tri);

}  // namespace tautkit
