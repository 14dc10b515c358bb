#pragma once

#include <algorithm>
#include <random>
#include <string>

#include "tautkit/sat.hpp"
#include "tautkit/skeleton.hpp"
#include "tautkit/triangulation.hpp"

namespace tautkit::testsupport {

// Thurston's two-tetrahedron ideal triangulation of the figure eight knot
// complement: ABC<->FGE, ABD<->HEF, ACD<->HEG, BCD<->GHF with
// A..D = 0..3 of tet 0 and E..H = 0..3 of tet 1.
inline Triangulation figure_eight() {
  Triangulation tri(2);
  tri.set_gluing(0, 0, 1, {1, 2, 0});
  tri.set_gluing(0, 1, 1, {3, 0, 1});
  tri.set_gluing(0, 2, 1, {3, 0, 2});
  tri.set_gluing(0, 3, 1, {2, 3, 1});
  return tri;
}

inline std::string figure_eight_file() {
  return "# figure eight knot complement\n"
         "tri 1\n"
         "tets 2\n"
         "tet 0: 1:120 1:301 1:302 1:231\n"
         "tet 1: 0:201 0:130 0:230 0:312\n";
}

// The one-tetrahedron solid torus: faces 013 and 123 identified.
inline Triangulation one_tet_solid_torus() {
  Triangulation tri(1);
  tri.set_gluing(0, 1, 0, {1, 3, 2});
  return tri;
}

// Two tetrahedra glued to each other along all four faces by the identity;
// every vertex link is a sphere.
inline Triangulation doubled_tetrahedron() {
  Triangulation tri(2);
  for (int f = 0; f < 4; ++f) {
    const auto& fv = kFaceVertices[static_cast<std::size_t>(f)];
    tri.set_gluing(0, f, 1,
                   {static_cast<std::uint8_t>(fv[0]),
                    static_cast<std::uint8_t>(fv[1]),
                    static_cast<std::uint8_t>(fv[2])});
  }
  return tri;
}

// A chain of layered one-tetrahedron blocks: tet i is glued to tet i+1
// along two faces, so the face pairing graph is a path with doubled arcs.
inline Triangulation layered_chain(int length) {
  Triangulation tri(length);
  for (int i = 0; i + 1 < length; ++i) {
    tri.set_gluing(i, 0, i + 1, {0, 1, 3});
    tri.set_gluing(i, 2, i + 1, {1, 2, 3});
  }
  return tri;
}

// Monotone 1-in-3-SAT chain: clause i shares one variable with clause i+1.
inline SatInstance chain_instance(int length) {
  SatInstance inst;
  inst.variable_count = 2 * length + 1;
  for (int i = 0; i < length; ++i)
    inst.clauses.push_back({i, i + 1, length + 1 + i});
  return inst;
}

// Random closed triangulation (possibly disconnected): a uniform perfect
// matching of the 4n faces with uniform vertex correspondences, retried
// until the gluings are valid.
inline Triangulation random_closed_triangulation(int n, std::mt19937& rng) {
  while (true) {
    std::vector<std::pair<int, int>> faces;
    for (int t = 0; t < n; ++t)
      for (int f = 0; f < kFacesPerTet; ++f) faces.emplace_back(t, f);
    std::shuffle(faces.begin(), faces.end(), rng);
    Triangulation tri(n);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < faces.size(); i += 2) {
      auto [t1, f1] = faces[i];
      auto [t2, f2] = faces[i + 1];
      const auto& fv = kFaceVertices[static_cast<std::size_t>(f2)];
      std::array<std::uint8_t, 3> image = {
          static_cast<std::uint8_t>(fv[0]), static_cast<std::uint8_t>(fv[1]),
          static_cast<std::uint8_t>(fv[2])};
      std::shuffle(image.begin(), image.end(), rng);
      try {
        tri.set_gluing(t1, f1, t2, image);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    try {
      compute_skeleton(tri);
    } catch (const Error&) {
      continue;
    }
    return tri;
  }
}

}  // namespace tautkit::testsupport
