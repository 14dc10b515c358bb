#pragma once

#include <vector>

#include "tautkit/triangulation.hpp"

namespace tautkit {

// One tetrahedron edge inside an edge class, with its orientation (+1/-1)
// relative to the class representative. Orientations compare the low-to-high
// vertex direction of each slot.
struct EdgeSlot {
  int tet;
  int edge;
  int orientation;

  friend bool operator==(const EdgeSlot&, const EdgeSlot&) = default;
};

// An edge of the triangulation: the equivalence class of tetrahedron edges
// identified by the face gluings.
struct EdgeClass {
  int id = -1;
  std::vector<EdgeSlot> slots;
  bool is_boundary = false;  // true iff some slot lies on a boundary face

  int degree() const { return static_cast<int>(slots.size()); }
};

struct VertexSlot {
  int tet;
  int vertex;

  friend bool operator==(const VertexSlot&, const VertexSlot&) = default;
};

// A vertex of the triangulation.
struct VertexClass {
  int id = -1;
  std::vector<VertexSlot> slots;

  int degree() const { return static_cast<int>(slots.size()); }
};

// The edge and vertex identifications induced by a triangulation's face
// gluings. Class ids are assigned in order of first slot encountered
// scanning (tet, slot index) lexicographically, so skeletons are
// reproducible across runs.
struct Skeleton {
  std::vector<EdgeClass> edge_classes;
  std::vector<VertexClass> vertex_classes;
  std::vector<std::pair<int, int>> boundary_faces;

  // Flattened lookups: slot (tet, edge) or (tet, vertex) -> class id.
  std::vector<int> edge_class_of_slot;    // size 6n
  std::vector<int> vertex_class_of_slot;  // size 4n

  int edge_class_of(int tet, int edge) const {
    return edge_class_of_slot[static_cast<std::size_t>(tet * kEdgesPerTet +
                                                       edge)];
  }
  int vertex_class_of(int tet, int vertex) const {
    return vertex_class_of_slot[static_cast<std::size_t>(
        tet * kVerticesPerTet + vertex)];
  }
};

// Union-find over all 6n edge slots (with orientation tracking) and all 4n
// vertex slots. Throws ValidityError if some edge is identified with itself
// in reverse.
Skeleton compute_skeleton(const Triangulation& tri);

// Euler characteristic of each vertex link, for triangulations with or
// without boundary faces (links of boundary vertices are surfaces with
// boundary). Indexed by vertex class id.
std::vector<int> link_euler_characteristics(const Triangulation& tri,
                                            const Skeleton& skel);

// The closed-triangulation special case: every link is a closed surface.
// Throws UsageError if the triangulation has boundary faces.
std::vector<int> vertex_link_euler(const Triangulation& tri,
                                   const Skeleton& skel);

}  // namespace tautkit
