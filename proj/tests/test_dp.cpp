#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/census.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tautkit/dp.hpp"
#include "tautkit/gadgets.hpp"

using namespace tautkit;
using namespace tautkit::testsupport;

namespace {

struct Solvers {
  Triangulation tri;
  Skeleton skel;
  FacePairingGraph g;

  explicit Solvers(Triangulation t)
      : tri(std::move(t)), skel(compute_skeleton(tri)), g(build_fpg(tri)) {}

  DpResult cutwidth(bool witness = false) {
    return solve_cutwidth(tri, skel, heuristic_layout(g), witness);
  }
  DpResult treewidth(bool witness = false) {
    return solve_treewidth(tri, skel, heuristic_treedec(g), witness);
  }
  bool brute() { return !brute_force_taut(tri, skel).empty(); }
};

}  // namespace

TEST_CASE("figure eight: both solvers say yes with sound witnesses") {
  Solvers s(figure_eight());
  for (auto result : {s.cutwidth(true), s.treewidth(true)}) {
    CHECK(result.has_taut);
    REQUIRE(result.witness.has_value());
    CHECK(is_taut(s.tri, s.skel, *result.witness));
  }
}

TEST_CASE("empty triangulation: yes with the empty witness") {
  Solvers s(Triangulation{0});
  auto c = s.cutwidth(true);
  CHECK(c.has_taut);
  CHECK(c.witness->choices.empty());
  auto t = s.treewidth(true);
  CHECK(t.has_taut);
  CHECK(t.witness->choices.empty());
}

TEST_CASE("solvers reject triangulations with boundary faces") {
  Triangulation tri = one_tet_solid_torus();
  Skeleton skel = compute_skeleton(tri);
  FacePairingGraph g = build_fpg(tri);
  CHECK_THROWS_AS(solve_cutwidth(tri, skel, heuristic_layout(g)), UsageError);
  CHECK_THROWS_AS(solve_treewidth(tri, skel, heuristic_treedec(g)),
                  UsageError);
}

TEST_CASE("solve_cutwidth rejects invalid layouts") {
  Triangulation tri = figure_eight();
  Skeleton skel = compute_skeleton(tri);
  CHECK_THROWS_AS(solve_cutwidth(tri, skel, Layout{{0, 0}, 0}), UsageError);
}

TEST_CASE("a sphere-link triangulation has no taut structure") {
  Solvers s(doubled_tetrahedron());
  auto chi = vertex_link_euler(s.tri, s.skel);
  CHECK(std::count(chi.begin(), chi.end(), 0) == 0);
  CHECK_FALSE(s.brute());
  CHECK_FALSE(s.cutwidth().has_taut);
  CHECK_FALSE(s.treewidth().has_taut);
}

TEST_CASE("oracle equivalence on the 2-tetrahedron census") {
  for (const auto& tri : connected_closed_census(2)) {
    Solvers s(tri);
    bool expected = s.brute();
    CHECK(s.cutwidth().has_taut == expected);
    CHECK(s.treewidth().has_taut == expected);
  }
}

TEST_CASE("oracle equivalence on random closed triangulations") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    Solvers s(random_closed_triangulation(3 + static_cast<int>(rng() % 4),
                                          rng));
    bool expected = s.brute();
    auto cw = s.cutwidth(expected);
    auto tw = s.treewidth(expected);
    CHECK(cw.has_taut == expected);
    CHECK(tw.has_taut == expected);
    if (expected) {
      CHECK(is_taut(s.tri, s.skel, *cw.witness));
      CHECK(is_taut(s.tri, s.skel, *tw.witness));
    }
    CHECK(cw.stats.state_bound_ok);
    CHECK(tw.stats.state_bound_ok);
  }
}

TEST_CASE("decisions are independent of the layout and decomposition") {
  std::mt19937 rng(31415);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Triangulation tri = random_closed_triangulation(n, rng);
    Skeleton skel = compute_skeleton(tri);
    FacePairingGraph g = build_fpg(tri);
    bool expected = !brute_force_taut(tri, skel).empty();

    // Every layout.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    do {
      Layout layout = validate_layout(g, order);
      CHECK(solve_cutwidth(tri, skel, layout).has_taut == expected);
    } while (std::next_permutation(order.begin(), order.end()));

    // Several valid decompositions: the heuristic one, a single bag, and a
    // path of bags accumulating nodes pairwise.
    CHECK(solve_treewidth(tri, skel, heuristic_treedec(g)).has_taut ==
          expected);
    RawTreeDecomposition single;
    single.bags.push_back(order);
    CHECK(solve_treewidth(tri, skel, validate_treedec(g, single)).has_taut ==
          expected);
    if (n >= 2) {
      RawTreeDecomposition path;
      for (int i = 0; i + 1 < n; ++i) {
        path.bags.push_back({i, i + 1});
        if (i > 0) path.tree_edges.emplace_back(i - 1, i);
      }
      // Arcs between non-consecutive nodes may be uncovered; only use this
      // decomposition when it validates.
      try {
        TreeDecomposition td = validate_treedec(g, path);
        CHECK(solve_treewidth(tri, skel, td).has_taut == expected);
      } catch (const ValidityError&) {
      }
    }
  }
}

TEST_CASE("cutwidth state bound holds on the figure eight run") {
  Solvers s(figure_eight());
  auto result = s.cutwidth();
  CHECK(result.stats.parameter_width == 4);
  CHECK(result.stats.state_bound == 6);
  CHECK(result.stats.peak_active_edges <= 6);
  CHECK(result.stats.state_bound_ok);
}

TEST_CASE("unsolvable reduction answers no by both programs") {
  // The four clauses over four variables with every triple: unsolvable.
  SatInstance inst;
  inst.variable_count = 4;
  inst.clauses = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  REQUIRE_FALSE(sat_oracle(inst).solvable);
  Solvers s(reduce_sat(inst).tri);
  CHECK_FALSE(s.treewidth().has_taut);
  CHECK_FALSE(s.cutwidth().has_taut);
}

TEST_CASE("measure_scaling emits one row per positive length") {
  auto family = [](int length) { return layered_chain(length); };
  auto rows = measure_scaling(family, {0});
  CHECK(rows.empty());
  rows = measure_scaling(family, {});
  CHECK(rows.empty());
}

TEST_CASE("measure_scaling table sizes stay flat on layered chains") {
  // layered_chain has boundary faces, so scale the closed chain reduction.
  auto family = [](int length) {
    return reduce_sat(chain_instance(length)).tri;
  };
  auto rows = measure_scaling(family, {2, 4});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].tet_count == 29 * 2 - 19);
  CHECK(rows[1].tet_count == 29 * 4 - 19);
  CHECK(rows[0].max_table_size == rows[1].max_table_size);
}
