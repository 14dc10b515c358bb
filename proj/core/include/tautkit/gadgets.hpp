#pragma once

#include <string>
#include <vector>

#include "tautkit/sat.hpp"
#include "tautkit/skeleton.hpp"
#include "tautkit/taut.hpp"
#include "tautkit/triangulation.hpp"

namespace tautkit {

enum class GadgetKind { variable, fork, clause };

std::string to_string(GadgetKind kind);

// A gadget triangulation with its attachment surfaces. Sites are two-face
// patches typed a/b/c:
//  - variable: sites[0] is the boundary torus.
//  - fork: sites[0] = outer-cylinder right side (glued over an existing
//    torus), sites[1] = outer left side (the new torus Theta''),
//    sites[2] = inner torus (the new Theta').
//  - clause: sites[0..2] are the three attachment rectangles of the
//    hexagonal boundary torus.
struct GadgetBlock {
  GadgetKind kind;
  Triangulation tri;
  std::vector<BoundaryTorus> sites;
};

// The (1,3,4) layered solid torus on two tetrahedra: one boundary torus,
// exactly two taut angle structures with boundary patterns (2,0,0) and
// (0,2,0).
GadgetBlock build_variable_gadget();

// The 21-tetrahedron hollow solid torus that duplicates boundary patterns;
// exactly four taut angle structures.
GadgetBlock build_fork_gadget();

// Four tetrahedra: a two-face torus coned to an ideal point plus one
// tetrahedron over each remaining face; six boundary faces forming a torus
// exposed as three rectangles. Supports an extension of surrounding taut
// structures iff exactly one attached pattern is (2,0,0).
GadgetBlock build_clause_gadget();

// The annular prism of 21 tetrahedra, before the upper and lower annuli are
// identified; gluing them yields the fork gadget.
Triangulation build_fork_prism();
// The three gluings that identify the prism's upper annulus with its lower
// annulus (source tet, source face, target tet, images).
struct AnnulusGluing {
  int tet;
  int face;
  int target;
  std::array<std::uint8_t, 3> image;
};
std::vector<AnnulusGluing> fork_annulus_identification();

struct TetProvenance {
  GadgetKind kind = GadgetKind::variable;
  int instance = 0;   // per-kind instance counter
  int variable = -1;  // owning variable, -1 for clause gadgets
};

// A growing triangulation assembled from gadget blocks, with labelled open
// boundary tori available for attachment. Every attachment recomputes and
// revalidates the skeleton.
class Assembly {
 public:
  const Triangulation& triangulation() const { return tri_; }
  const Skeleton& skeleton() const { return skel_; }
  const std::vector<TetProvenance>& provenance() const { return provenance_; }

  int open_torus_count() const;
  bool is_consumed(int torus_id) const;
  const BoundaryTorus& torus(int torus_id) const;

  // Adds a variable gadget; returns the id of its boundary torus.
  int add_variable_gadget(int variable_index);

  // Attaches a fork gadget over the given open torus (consuming it) and
  // returns the ids of the two new tori: {theta_prime (inner copy),
  // theta_double_prime (outer side, used for chaining)}.
  std::pair<int, int> attach_fork(int torus_id);

  // Attaches a clause gadget over three distinct open tori, consuming them.
  void attach_clause(int t1, int t2, int t3, int clause_index);

 private:
  int register_torus(const BoundaryTorus& torus);
  const BoundaryTorus& consume(int torus_id);
  void append_block(const GadgetBlock& block, TetProvenance prov, int* offset);

  Triangulation tri_;
  Skeleton skel_;
  std::vector<TetProvenance> provenance_;
  struct OpenTorus {
    BoundaryTorus torus;
    bool consumed = false;
  };
  std::vector<OpenTorus> tori_;
  int fork_instances_ = 0;
  int current_variable_ = -1;
};

struct ReductionResult {
  Triangulation tri;
  std::vector<TetProvenance> provenance;
  std::vector<int> dropped_variables;  // original 0-based indices
};

// The full reduction from monotone 1-in-3-SAT: one variable gadget per
// used variable, n_i - 1 chained fork gadgets to duplicate its torus, and
// one clause gadget per clause. The output is closed with exactly
// 67c - 19t tetrahedra (counted after unused variables are dropped).
ReductionResult reduce_sat(const SatInstance& inst);

}  // namespace tautkit
