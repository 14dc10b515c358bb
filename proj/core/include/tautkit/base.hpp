#pragma once

#include <array>
#include <cstdint>

// Fixed combinatorics of a single tetrahedron with vertices 0..3.
//
// Faces are named by their vertex triple in ascending order and indexed
//   0 = 012, 1 = 013, 2 = 023, 3 = 123.
// Edges are indexed
//   0 = 01, 1 = 02, 2 = 03, 3 = 12, 4 = 13, 5 = 23,
// so edge e and edge 5-e are opposite. The three opposite-edge pairs are
//   pair 0 = (01,23), pair 1 = (02,13), pair 2 = (03,12).

namespace tautkit {

inline constexpr int kFacesPerTet = 4;
inline constexpr int kEdgesPerTet = 6;
inline constexpr int kVerticesPerTet = 4;
inline constexpr int kOppositePairs = 3;

inline constexpr std::array<std::array<int, 3>, 4> kFaceVertices = {{
    {{0, 1, 2}},
    {{0, 1, 3}},
    {{0, 2, 3}},
    {{1, 2, 3}},
}};

inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices = {{
    {{0, 1}}, {{0, 2}}, {{0, 3}}, {{1, 2}}, {{1, 3}}, {{2, 3}},
}};

// kEdgeIndex[u][v] = edge joining vertices u != v.
inline constexpr std::array<std::array<int, 4>, 4> kEdgeIndex = {{
    {{-1, 0, 1, 2}},
    {{0, -1, 3, 4}},
    {{1, 3, -1, 5}},
    {{2, 4, 5, -1}},
}};

// The two faces containing each edge.
inline constexpr std::array<std::array<int, 2>, 6> kFacesOfEdge = {{
    {{0, 1}},  // 01
    {{0, 2}},  // 02
    {{1, 2}},  // 03
    {{0, 3}},  // 12
    {{1, 3}},  // 13
    {{2, 3}},  // 23
}};

// kPairEdges[p] = the two opposite edges marked by choice p.
inline constexpr std::array<std::array<int, 2>, 3> kPairEdges = {{
    {{0, 5}},
    {{1, 4}},
    {{2, 3}},
}};

// kFaceOfTriple[bitmask of vertices] = face index, or -1.
inline constexpr int face_of_vertex_set(int mask) {
  switch (mask) {
    case 0b0111: return 0;
    case 0b1011: return 1;
    case 0b1101: return 2;
    case 0b1110: return 3;
    default: return -1;
  }
}

}  // namespace tautkit
