#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tautkit/dp.hpp"
#include "tautkit/errors.hpp"
#include "tautkit/fpg.hpp"
#include "tautkit/gadgets.hpp"
#include "tautkit/layout.hpp"
#include "tautkit/sat.hpp"
#include "tautkit/skeleton.hpp"
#include "tautkit/taut.hpp"
#include "tautkit/treedec.hpp"
#include "tautkit/triangulation.hpp"

namespace {

using nlohmann::json;
using namespace tautkit;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write file: " + path);
  out << content;
}

std::optional<std::uint64_t> env_seed() {
  const char* value = std::getenv("TAUTKIT_SEED");
  if (!value || !*value) return std::nullopt;
  return std::strtoull(value, nullptr, 10);
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

json stats_json(const DpStats& stats) {
  return json{{"max_table_size", stats.max_table_size},
              {"peak_active_edges", stats.peak_active_edges},
              {"parameter_width", stats.parameter_width},
              {"state_bound", stats.state_bound},
              {"state_bound_ok", stats.state_bound_ok}};
}

// The SAT chain family used by `bench scaling`: L clauses in a row, where
// consecutive clauses share one variable, so the face pairing graph is a
// path of gadget blocks of fixed width.
SatInstance chain_instance(int length) {
  SatInstance inst;
  inst.variable_count = 2 * length + 1;
  for (int i = 0; i < length; ++i)
    inst.clauses.push_back({i, i + 1, length + 1 + i});
  return inst;
}

int cmd_tri_validate(const std::string& file, bool as_json) {
  Triangulation tri = parse_triangulation(read_file(file));
  Skeleton skel = compute_skeleton(tri);
  if (as_json) {
    json report{{"tool", "tautkit"},
                {"command", "tri validate"},
                {"input", {{"file", file}}},
                {"result",
                 {{"valid", true},
                  {"tets", tri.tet_count()},
                  {"boundary_faces", skel.boundary_faces.size()}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "valid: " << tri.tet_count() << " tetrahedra, "
              << skel.boundary_faces.size() << " boundary faces\n";
  }
  return kExitYes;
}

int cmd_tri_skeleton(const std::string& file, bool as_json) {
  Triangulation tri = parse_triangulation(read_file(file));
  Skeleton skel = compute_skeleton(tri);
  std::vector<int> chi;
  if (skel.boundary_faces.empty()) chi = vertex_link_euler(tri, skel);
  if (as_json) {
    json edges = json::array();
    for (const auto& cls : skel.edge_classes)
      edges.push_back({{"id", cls.id},
                       {"degree", cls.degree()},
                       {"boundary", cls.is_boundary}});
    json vertices = json::array();
    for (const auto& cls : skel.vertex_classes) {
      json v{{"id", cls.id}, {"degree", cls.degree()}};
      if (!chi.empty()) v["link_euler"] = chi[static_cast<std::size_t>(cls.id)];
      vertices.push_back(v);
    }
    json report{{"tool", "tautkit"},
                {"command", "tri skeleton"},
                {"input", {{"file", file}, {"tets", tri.tet_count()}}},
                {"result",
                 {{"edges", edges},
                  {"vertices", vertices},
                  {"boundary_faces", skel.boundary_faces.size()}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << tri.tet_count() << " tetrahedra, "
              << skel.edge_classes.size() << " edges, "
              << skel.vertex_classes.size() << " vertices, "
              << skel.boundary_faces.size() << " boundary faces\n";
    for (const auto& cls : skel.edge_classes) {
      std::cout << "edge " << cls.id << ": degree " << cls.degree()
                << (cls.is_boundary ? " (boundary)" : "") << " slots";
      for (const auto& s : cls.slots)
        std::cout << ' ' << s.tet << ':' << s.edge
                  << (s.orientation > 0 ? '+' : '-');
      std::cout << "\n";
    }
    for (const auto& cls : skel.vertex_classes) {
      std::cout << "vertex " << cls.id << ": degree " << cls.degree();
      if (!chi.empty())
        std::cout << ", link euler "
                  << chi[static_cast<std::size_t>(cls.id)];
      std::cout << "\n";
    }
  }
  return kExitYes;
}

int cmd_fpg_export(const std::string& file, const std::string& dot,
                   const std::string& layout_out,
                   const std::string& treedec_out) {
  Triangulation tri = parse_triangulation(read_file(file));
  FacePairingGraph g = build_fpg(tri);
  if (!dot.empty()) write_file(dot, fpg_to_dot(g));
  if (!layout_out.empty())
    write_file(layout_out, serialize_layout(heuristic_layout(g, env_seed())));
  if (!treedec_out.empty())
    write_file(treedec_out,
               serialize_treedec(heuristic_treedec(g), g.node_count));
  return kExitYes;
}

int cmd_taut_enumerate(const std::string& file, std::optional<std::size_t> limit,
                       bool verbose, bool as_json) {
  Triangulation tri = parse_triangulation(read_file(file));
  Skeleton skel = compute_skeleton(tri);
  auto structures = enumerate_taut(tri, skel, limit);
  if (as_json) {
    json list = json::array();
    for (const auto& taut : structures) list.push_back(to_string(taut));
    json report{{"tool", "tautkit"},
                {"command", "taut enumerate"},
                {"input", {{"file", file}, {"tets", tri.tet_count()}}},
                {"result",
                 {{"count", structures.size()}, {"structures", list}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& taut : structures) {
      std::cout << to_string(taut);
      if (verbose) {
        auto counts = edge_mark_counts(skel, taut);
        std::cout << "  marks";
        for (std::size_t i = 0; i < counts.size(); ++i)
          std::cout << ' ' << i << ':' << counts[i];
      }
      std::cout << "\n";
    }
  }
  return kExitYes;
}

int cmd_taut_solve(const std::string& file, const std::string& method,
                   const std::string& layout_file,
                   const std::string& treedec_file, bool witness, bool stats,
                   bool as_json) {
  Timer timer;
  Triangulation tri = parse_triangulation(read_file(file));
  Skeleton skel = compute_skeleton(tri);

  bool has_taut = false;
  std::optional<TautStructure> found;
  std::optional<DpStats> dp_stats;

  if (method == "brute") {
    auto structures = enumerate_taut(tri, skel, std::size_t{1});
    has_taut = !structures.empty();
    if (has_taut && witness) found = structures.front();
  } else if (method == "cutwidth") {
    FacePairingGraph g = build_fpg(tri);
    Layout layout = layout_file.empty()
                        ? heuristic_layout(g, env_seed())
                        : parse_layout(g, read_file(layout_file));
    DpResult r = solve_cutwidth(tri, skel, layout, witness);
    has_taut = r.has_taut;
    found = std::move(r.witness);
    dp_stats = r.stats;
  } else if (method == "treewidth") {
    FacePairingGraph g = build_fpg(tri);
    TreeDecomposition td = treedec_file.empty()
                               ? heuristic_treedec(g)
                               : parse_treedec(g, read_file(treedec_file));
    DpResult r = solve_treewidth(tri, skel, td, witness);
    has_taut = r.has_taut;
    found = std::move(r.witness);
    dp_stats = r.stats;
  } else {
    throw UsageError("unknown method: " + method);
  }

  if (as_json) {
    json report{{"tool", "tautkit"},
                {"command", "taut solve"},
                {"input",
                 {{"file", file},
                  {"tets", tri.tet_count()},
                  {"method", method}}},
                {"result", {{"has_taut_structure", has_taut}}}};
    if (found) report["result"]["witness"] = to_string(*found);
    if (dp_stats) report["stats"] = stats_json(*dp_stats);
    report["timings"] = {{"total_ms", timer.elapsed_ms()}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << (has_taut ? "taut structure exists" : "no taut structure")
              << "\n";
    if (found) std::cout << "witness " << to_string(*found) << "\n";
    if (stats && dp_stats) {
      std::cout << "max table size " << dp_stats->max_table_size
                << ", peak active edges " << dp_stats->peak_active_edges
                << ", width " << dp_stats->parameter_width << ", bound "
                << dp_stats->state_bound
                << (dp_stats->state_bound_ok ? " (ok)" : " (VIOLATED)")
                << "\n";
    }
  }
  return has_taut ? kExitYes : kExitNo;
}

int cmd_gadget(const std::string& kind, const std::string& out) {
  GadgetBlock block;
  if (kind == "variable") {
    block = build_variable_gadget();
  } else if (kind == "fork") {
    block = build_fork_gadget();
  } else if (kind == "clause") {
    block = build_clause_gadget();
  } else {
    throw UsageError("unknown gadget kind: " + kind);
  }
  write_file(out, serialize_triangulation(block.tri));
  return kExitYes;
}

int cmd_reduce(const std::string& sat_file, const std::string& out,
               const std::string& provenance_file, bool as_json) {
  SatInstance inst = parse_sat(read_file(sat_file));
  ReductionResult result = reduce_sat(inst);
  write_file(out, serialize_triangulation(result.tri));
  json prov{{"tets", json::array()},
            {"dropped_variables", result.dropped_variables}};
  for (std::size_t i = 0; i < result.provenance.size(); ++i) {
    const auto& p = result.provenance[i];
    json entry{{"tet", i},
               {"gadget", to_string(p.kind)},
               {"instance", p.instance}};
    if (p.variable >= 0) entry["variable"] = p.variable;
    prov["tets"].push_back(entry);
  }
  if (!provenance_file.empty()) write_file(provenance_file, prov.dump(2));
  if (as_json) {
    json report{{"tool", "tautkit"},
                {"command", "reduce"},
                {"input", {{"file", sat_file}}},
                {"result",
                 {{"tets", result.tri.tet_count()},
                  {"dropped_variables", result.dropped_variables}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "reduced to " << result.tri.tet_count() << " tetrahedra\n";
  }
  return kExitYes;
}

int cmd_sat_solve(const std::string& file, bool witness, bool as_json) {
  SatInstance inst = parse_sat(read_file(file));
  SatResult result = sat_oracle(inst);
  if (as_json) {
    json report{{"tool", "tautkit"},
                {"command", "sat solve"},
                {"input",
                 {{"file", file},
                  {"variables", inst.variable_count},
                  {"clauses", inst.clause_count()}}},
                {"result", {{"solvable", result.solvable}}}};
    if (result.solvable && witness) {
      std::string bits;
      for (bool b : *result.assignment) bits.push_back(b ? '1' : '0');
      report["result"]["assignment"] = bits;
    }
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << (result.solvable ? "solvable" : "unsolvable") << "\n";
    if (result.solvable && witness) {
      std::cout << "assignment";
      for (std::size_t v = 0; v < result.assignment->size(); ++v)
        std::cout << ' ' << 'x' << v + 1 << '='
                  << ((*result.assignment)[v] ? "true" : "false");
      std::cout << "\n";
    }
  }
  return result.solvable ? kExitYes : kExitNo;
}

int cmd_bench_scaling(const std::vector<int>& lengths,
                      const std::string& out) {
  auto family = [](int length) {
    return reduce_sat(chain_instance(length)).tri;
  };
  auto rows = measure_scaling(family, lengths);
  write_file(out.empty() ? "-" : out, scaling_csv(rows));
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taut angle structure toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a structured JSON report");

  // tri
  auto* tri = app.add_subcommand("tri", "triangulation inspection");
  tri->fallthrough();
  tri->require_subcommand(1);
  std::string tri_file;
  auto* tri_validate = tri->add_subcommand("validate", "check a file");
  tri_validate->fallthrough();
  tri_validate->add_option("file", tri_file)->required();
  auto* tri_skeleton =
      tri->add_subcommand("skeleton", "edge and vertex classes");
  tri_skeleton->fallthrough();
  tri_skeleton->add_option("file", tri_file)->required();

  // fpg
  auto* fpg = app.add_subcommand("fpg", "face pairing graph tools");
  fpg->fallthrough();
  fpg->require_subcommand(1);
  std::string fpg_file, dot_out, layout_out, treedec_out;
  auto* fpg_export = fpg->add_subcommand("export", "export graph data");
  fpg_export->fallthrough();
  fpg_export->add_option("file", fpg_file)->required();
  fpg_export->add_option("--dot", dot_out, "write DOT multigraph");
  fpg_export->add_option("--layout", layout_out, "write a heuristic layout");
  fpg_export->add_option("--treedec", treedec_out,
                         "write a heuristic tree decomposition (PACE style)");

  // taut
  auto* taut = app.add_subcommand("taut", "taut angle structures");
  taut->fallthrough();
  taut->require_subcommand(1);
  std::string taut_file;
  std::size_t limit = 0;
  bool verbose = false;
  auto* taut_enum = taut->add_subcommand("enumerate", "list all structures");
  taut_enum->fallthrough();
  taut_enum->add_option("file", taut_file)->required();
  taut_enum->add_option("--limit", limit, "truncate the output");
  taut_enum->add_flag("--verbose", verbose, "print per-edge mark counts");

  std::string method = "treewidth", layout_file, treedec_file;
  bool witness = false, stats = false;
  auto* taut_solve = taut->add_subcommand("solve", "decide existence");
  taut_solve->fallthrough();
  taut_solve->add_option("file", taut_file)->required();
  taut_solve->add_option("--method", method)
      ->check(CLI::IsMember({"brute", "cutwidth", "treewidth"}));
  taut_solve->add_option("--layout", layout_file, "layout file (cutwidth)");
  taut_solve->add_option("--treedec", treedec_file,
                         "tree decomposition file (treewidth)");
  taut_solve->add_flag("--witness", witness, "reconstruct a structure");
  taut_solve->add_flag("--stats", stats, "print table statistics");

  // gadget
  auto* gadget = app.add_subcommand("gadget", "emit a gadget triangulation");
  gadget->fallthrough();
  std::string gadget_kind, gadget_out;
  gadget->add_option("kind", gadget_kind)
      ->required()
      ->check(CLI::IsMember({"variable", "fork", "clause"}));
  gadget->add_option("-o,--output", gadget_out)->required();

  // reduce
  auto* reduce = app.add_subcommand(
      "reduce", "build the triangulation of a monotone 1-in-3-SAT instance");
  reduce->fallthrough();
  std::string sat_file, reduce_out, provenance_out;
  reduce->add_option("file", sat_file)->required();
  reduce->add_option("-o,--output", reduce_out)->required();
  reduce->add_option("--provenance", provenance_out,
                     "write tetrahedron provenance JSON");

  // sat
  auto* sat = app.add_subcommand("sat", "monotone 1-in-3-SAT");
  sat->fallthrough();
  sat->require_subcommand(1);
  std::string sat_solve_file;
  bool sat_witness = false;
  auto* sat_solve = sat->add_subcommand("solve", "decide solvability");
  sat_solve->fallthrough();
  sat_solve->add_option("file", sat_solve_file)->required();
  sat_solve->add_flag("--witness", sat_witness, "print an assignment");

  // bench
  auto* bench = app.add_subcommand("bench", "measurements");
  bench->fallthrough();
  bench->require_subcommand(1);
  std::vector<int> lengths{5, 10, 20, 40};
  std::string bench_out;
  auto* bench_scaling =
      bench->add_subcommand("scaling", "chain-family scaling table");
  bench_scaling->fallthrough();
  bench_scaling->add_option("--lengths", lengths, "chain lengths");
  bench_scaling->add_option("-o,--output", bench_out, "CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (tri_validate->parsed()) return cmd_tri_validate(tri_file, as_json);
    if (tri_skeleton->parsed()) return cmd_tri_skeleton(tri_file, as_json);
    if (fpg_export->parsed())
      return cmd_fpg_export(fpg_file, dot_out, layout_out, treedec_out);
    if (taut_enum->parsed())
      return cmd_taut_enumerate(
          taut_file,
          limit == 0 ? std::nullopt : std::optional<std::size_t>(limit),
          verbose, as_json);
    if (taut_solve->parsed())
      return cmd_taut_solve(taut_file, method, layout_file, treedec_file,
                            witness, stats, as_json);
    if (gadget->parsed()) return cmd_gadget(gadget_kind, gadget_out);
    if (reduce->parsed())
      return cmd_reduce(sat_file, reduce_out, provenance_out, as_json);
    if (sat_solve->parsed())
      return cmd_sat_solve(sat_solve_file, sat_witness, as_json);
    if (bench_scaling->parsed()) return cmd_bench_scaling(lengths, bench_out);
    throw UsageError("unknown subcommand");
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
