#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tautkit/layout.hpp"
#include "tautkit/skeleton.hpp"
#include "tautkit/taut.hpp"
#include "tautkit/treedec.hpp"
#include "tautkit/triangulation.hpp"

namespace tautkit {

struct DpStats {
  std::size_t max_table_size = 0;   // largest stored pattern set
  std::size_t peak_active_edges = 0;  // widest boundary marking pattern
  int parameter_width = 0;          // layout width / decomposition width
  std::size_t state_bound = 0;      // ceil(3k/2) resp. 6(k+1)
  bool state_bound_ok = true;       // peak_active_edges <= state_bound
};

struct DpResult {
  bool has_taut = false;
  std::optional<TautStructure> witness;
  DpStats stats;
};

// Dynamic programming over a cutwidth layout: processes tetrahedra in
// layout order, storing the set of boundary marking patterns of each prefix
// sub-triangulation; decides existence and optionally reconstructs one
// structure via back-pointers. Requires a triangulation with no boundary
// faces and a layout covering all tetrahedra.
DpResult solve_cutwidth(const Triangulation& tri, const Skeleton& skel,
                        const Layout& layout, bool want_witness = false);

// Dynamic programming over a rooted tree decomposition of the face pairing
// graph, leaves to root: child pattern sets are combined (summing marks on
// repeated edges), extended over the node's new tetrahedra, and filtered.
// Requires a triangulation with no boundary faces and a decomposition that
// validates against build_fpg(tri).
DpResult solve_treewidth(const Triangulation& tri, const Skeleton& skel,
                         const TreeDecomposition& td,
                         bool want_witness = false);

struct ScalingRow {
  int length = 0;
  int tet_count = 0;
  int decomposition_width = 0;
  double wall_ms = 0.0;
  std::size_t max_table_size = 0;
  std::size_t peak_active_edges = 0;
};

// Runs the treewidth solver (heuristic decompositions, no witness) on
// family(L) for each L in lengths, recording size, wall time and table
// statistics. Entries < 1 are skipped.
std::vector<ScalingRow> measure_scaling(
    const std::function<Triangulation(int)>& family,
    const std::vector<int>& lengths);

std::string scaling_csv(const std::vector<ScalingRow>& rows);

}  // namespace tautkit
