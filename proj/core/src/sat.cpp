#include "tautkit/sat.hpp"

#include <sstream>

namespace tautkit {

std::vector<int> SatInstance::occurrences() const {
  std::vector<int> n(static_cast<std::size_t>(variable_count), 0);
  for (const auto& clause : clauses)
    for (int v : clause) ++n[static_cast<std::size_t>(v)];
  return n;
}

SatInstance parse_sat(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  SatInstance inst;
  int declared_clauses = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header_seen) {
      std::string tag;
      if (first != "p" || !(ls >> tag) || tag != "m1in3")
        throw ParseError("expected 'p m1in3 <t> <c>' header", lineno, 1);
      if (!(ls >> inst.variable_count >> declared_clauses) ||
          inst.variable_count < 0 || declared_clauses < 0)
        throw ParseError("bad variable/clause counts", lineno, 1);
      header_seen = true;
      continue;
    }
    std::istringstream cs(line);
    std::array<int, 3> clause{};
    if (!(cs >> clause[0] >> clause[1] >> clause[2]))
      throw ParseError("clause arity != 3", lineno, 1);
    int extra;
    if (cs >> extra) throw ParseError("clause arity != 3", lineno, 1);
    for (int& v : clause) {
      if (v < 1 || v > inst.variable_count)
        throw ParseError("variable index out of range", lineno, 1);
      v -= 1;
    }
    if (clause[0] == clause[1] || clause[0] == clause[2] ||
        clause[1] == clause[2])
      throw ParseError("repeated variable in a clause", lineno, 1);
    inst.clauses.push_back(clause);
  }
  if (!header_seen) throw ParseError("missing 'p m1in3' header", 1, 1);
  if (static_cast<int>(inst.clauses.size()) != declared_clauses)
    throw ParseError("clause count does not match header", lineno, 1);
  return inst;
}

std::string serialize_sat(const SatInstance& inst) {
  std::ostringstream out;
  out << "p m1in3 " << inst.variable_count << ' ' << inst.clause_count()
      << "\n";
  for (const auto& clause : inst.clauses)
    out << clause[0] + 1 << ' ' << clause[1] + 1 << ' ' << clause[2] + 1
        << "\n";
  return out.str();
}

bool satisfies_one_in_three(const SatInstance& inst,
                            const std::vector<bool>& assignment) {
  for (const auto& clause : inst.clauses) {
    int trues = 0;
    for (int v : clause)
      if (assignment[static_cast<std::size_t>(v)]) ++trues;
    if (trues != 1) return false;
  }
  return true;
}

SatResult sat_oracle(const SatInstance& inst) {
  if (inst.variable_count > 30)
    throw UsageError("sat_oracle: exhaustive mode requires t <= 30");
  const int t = inst.variable_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    std::vector<bool> assignment(static_cast<std::size_t>(t));
    for (int v = 0; v < t; ++v)
      assignment[static_cast<std::size_t>(v)] = (mask >> v) & 1;
    if (satisfies_one_in_three(inst, assignment))
      return SatResult{true, assignment};
  }
  return SatResult{false, std::nullopt};
}

}  // namespace tautkit
