#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tautkit/errors.hpp"

namespace tautkit {

// A monotone 1-in-3-SAT instance: t boolean variables (0-based internally)
// and clauses of three distinct variables, satisfied when exactly one of
// the three is true.
struct SatInstance {
  int variable_count = 0;
  std::vector<std::array<int, 3>> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  // Occurrence counts n_i; their sum is 3c.
  std::vector<int> occurrences() const;
};

// File format: `p m1in3 <t> <c>` then c lines of three 1-based variable
// indices. `#` starts a comment.
SatInstance parse_sat(const std::string& text);
std::string serialize_sat(const SatInstance& inst);

struct SatResult {
  bool solvable = false;
  std::optional<std::vector<bool>> assignment;
};

// Exhaustive sweep over all 2^t assignments; requires t <= 30. Returns the
// first witnessing assignment in mask order when solvable.
SatResult sat_oracle(const SatInstance& inst);

// True iff the assignment makes exactly one variable true in every clause.
bool satisfies_one_in_three(const SatInstance& inst,
                            const std::vector<bool>& assignment);

}  // namespace tautkit
