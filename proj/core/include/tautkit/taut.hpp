#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautkit/skeleton.hpp"
#include "tautkit/triangulation.hpp"

namespace tautkit {

// A candidate taut angle structure: per tetrahedron, which opposite-edge
// pair carries the two pi angles. Choice p marks the edges of kPairEdges[p],
// i.e. 0 = (01,23), 1 = (02,13), 2 = (03,12).
struct TautStructure {
  std::vector<std::uint8_t> choices;

  friend bool operator==(const TautStructure&, const TautStructure&) = default;
  friend auto operator<=>(const TautStructure&,
                          const TautStructure&) = default;
};

std::string to_string(const TautStructure& taut);
TautStructure taut_from_string(const std::string& digits);

// Marks per edge class under `taut`, indexed by class id.
std::vector<int> edge_mark_counts(const Skeleton& skel,
                                  const TautStructure& taut);

// True iff every internal edge class is marked exactly twice and every
// boundary edge class at most twice. Throws UsageError when the choice
// vector length differs from the tetrahedron count.
bool is_taut(const Triangulation& tri, const Skeleton& skel,
             const TautStructure& taut);

// All taut angle structures, in lexicographic choice order, found by
// backtracking over the tetrahedra in a layout-aware order with pruning on
// overfull and unfillable edge classes. Equivalent to filtering all 3^n
// choice vectors through is_taut. `limit` truncates the (sorted) output.
std::vector<TautStructure> enumerate_taut(
    const Triangulation& tri, const Skeleton& skel,
    std::optional<std::size_t> limit = std::nullopt);

// Two boundary faces forming a torus, with the a/b/c edge types recorded as
// local edge indices on each face. The same layout describes the clause
// gadget's attachment rectangles (which only become tori in context), so
// full torus validation is separate.
struct TorusFace {
  int tet;
  int face;
  int a_edge;
  int b_edge;
  int c_edge;
};

struct BoundaryTorus {
  std::array<TorusFace, 2> faces;

  // Resolved edge classes (a, b, c) in a given skeleton. Throws UsageError
  // if the two faces disagree on a class.
  std::array<int, 3> edge_classes(const Skeleton& skel) const;

  // Checks the two-face torus invariants: both faces are boundary faces,
  // they share all three edge classes and a single vertex class.
  void validate(const Triangulation& tri, const Skeleton& skel) const;
};

// Mark counts (m_a, m_b, m_c) on a boundary torus's edge types.
struct BoundaryPattern {
  int a = 0;
  int b = 0;
  int c = 0;

  friend bool operator==(const BoundaryPattern&,
                         const BoundaryPattern&) = default;
  friend auto operator<=>(const BoundaryPattern&,
                          const BoundaryPattern&) = default;
};

// Requires the torus faces to be boundary faces of the triangulation.
BoundaryPattern boundary_pattern(const TautStructure& taut,
                                 const BoundaryTorus& torus,
                                 const Triangulation& tri,
                                 const Skeleton& skel);

// True iff `big` assigns the same pair choices as `small` on the shared
// tetrahedra, where tetrahedron i of the subcomplex is tetrahedron
// injection[i] of the supercomplex.
bool check_extension(const TautStructure& small,
                     const std::vector<int>& injection, int big_tet_count,
                     const TautStructure& big);

}  // namespace tautkit
