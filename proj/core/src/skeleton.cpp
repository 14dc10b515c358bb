#include "tautkit/skeleton.hpp"

#include <numeric>
#include <string>

namespace tautkit {

namespace {

// Union-find with a parity bit per element (orientation relative to the
// parent). unite() reports a conflict when the two elements are already in
// one class with a different relative parity than requested.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n)
      : parent_(n), rank_(n, 0), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, par] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] ^= par;
    return {root, parity_[x]};
  }

  // Requires parity(a) xor parity(b) == rel; returns false on conflict.
  bool unite(std::size_t a, std::size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

  int parity_of(std::size_t x) { return find(x).second; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
  std::vector<int> parity_;
};

class PlainUnionFind {
 public:
  explicit PlainUnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Skeleton compute_skeleton(const Triangulation& tri) {
  const int n = tri.tet_count();
  ParityUnionFind edges(static_cast<std::size_t>(n) * kEdgesPerTet);
  PlainUnionFind vertices(static_cast<std::size_t>(n) * kVerticesPerTet);

  auto eslot = [](int t, int e) {
    return static_cast<std::size_t>(t * kEdgesPerTet + e);
  };
  auto vslot = [](int t, int v) {
    return static_cast<std::size_t>(t * kVerticesPerTet + v);
  };

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < kFacesPerTet; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      const auto& fv = kFaceVertices[static_cast<std::size_t>(f)];
      for (int i = 0; i < 3; ++i) {
        int u = fv[static_cast<std::size_t>(i)];
        int iu = g->image[static_cast<std::size_t>(i)];
        vertices.unite(vslot(t, u), vslot(g->tet, iu));
        for (int j = i + 1; j < 3; ++j) {
          int v = fv[static_cast<std::size_t>(j)];
          int iv = g->image[static_cast<std::size_t>(j)];
          int e = kEdgeIndex[static_cast<std::size_t>(u)]
                            [static_cast<std::size_t>(v)];
          int ie = kEdgeIndex[static_cast<std::size_t>(iu)]
                             [static_cast<std::size_t>(iv)];
          // u < v by construction; the identification is orientation
          // preserving iff the images are in the same relative order.
          int rel = (iu < iv) ? 0 : 1;
          if (!edges.unite(eslot(t, e), eslot(g->tet, ie), rel))
            throw ValidityError(
                "edge identified with itself in reverse (tet " +
                std::to_string(t) + " face " + std::to_string(f) + ", edge " +
                std::to_string(e) + ")");
        }
      }
    }
  }

  Skeleton skel;
  skel.boundary_faces = tri.boundary_faces();
  skel.edge_class_of_slot.assign(static_cast<std::size_t>(n) * kEdgesPerTet,
                                 -1);
  skel.vertex_class_of_slot.assign(
      static_cast<std::size_t>(n) * kVerticesPerTet, -1);

  std::vector<bool> edge_on_boundary(static_cast<std::size_t>(n) *
                                         kEdgesPerTet,
                                     false);
  for (auto [t, f] : skel.boundary_faces) {
    const auto& fv = kFaceVertices[static_cast<std::size_t>(f)];
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        edge_on_boundary[eslot(
            t, kEdgeIndex[static_cast<std::size_t>(
                   fv[static_cast<std::size_t>(i)])]
                         [static_cast<std::size_t>(
                             fv[static_cast<std::size_t>(j)])])] = true;
  }

  // Assign ids in lexicographic first-slot order; slot orientations are
  // re-based so the first slot of each class is +1.
  std::vector<int> root_to_id(static_cast<std::size_t>(n) * kEdgesPerTet, -1);
  std::vector<int> first_parity(static_cast<std::size_t>(n) * kEdgesPerTet, 0);
  for (int t = 0; t < n; ++t) {
    for (int e = 0; e < kEdgesPerTet; ++e) {
      auto [root, par] = edges.find(eslot(t, e));
      int id = root_to_id[root];
      if (id < 0) {
        id = static_cast<int>(skel.edge_classes.size());
        root_to_id[root] = id;
        first_parity[root] = par;
        skel.edge_classes.push_back(EdgeClass{id, {}, false});
      }
      auto& cls = skel.edge_classes[static_cast<std::size_t>(id)];
      cls.slots.push_back(
          EdgeSlot{t, e, (par ^ first_parity[root]) == 0 ? 1 : -1});
      cls.is_boundary = cls.is_boundary || edge_on_boundary[eslot(t, e)];
      skel.edge_class_of_slot[eslot(t, e)] = id;
    }
  }

  std::vector<int> vroot_to_id(static_cast<std::size_t>(n) * kVerticesPerTet,
                               -1);
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < kVerticesPerTet; ++v) {
      std::size_t root = vertices.find(vslot(t, v));
      int id = vroot_to_id[root];
      if (id < 0) {
        id = static_cast<int>(skel.vertex_classes.size());
        vroot_to_id[root] = id;
        skel.vertex_classes.push_back(VertexClass{id, {}});
      }
      skel.vertex_classes[static_cast<std::size_t>(id)].slots.push_back(
          VertexSlot{t, v});
      skel.vertex_class_of_slot[vslot(t, v)] = id;
    }
  }

  return skel;
}

std::vector<int> link_euler_characteristics(const Triangulation& tri,
                                            const Skeleton& skel) {
  // The link of a vertex class v is a surface assembled from one corner
  // triangle per (tet, vertex) slot of v. Faces F(v) = slot count; unmatched
  // triangle sides b(v) come from corners on boundary faces; link vertices
  // correspond to edge-class sides ending at v. Then
  //   chi(v) = sides(v) - F(v)/2 - b(v)/2.
  const std::size_t vc = skel.vertex_classes.size();
  std::vector<int> sides(vc, 0), corners(vc, 0), boundary_sides(vc, 0);

  for (const auto& cls : skel.edge_classes) {
    // Orientation consistency means each class has exactly two sides; the
    // representative slot names their vertex classes.
    const EdgeSlot& rep = cls.slots.front();
    int lo = kEdgeVertices[static_cast<std::size_t>(rep.edge)][0];
    int hi = kEdgeVertices[static_cast<std::size_t>(rep.edge)][1];
    ++sides[static_cast<std::size_t>(skel.vertex_class_of(rep.tet, lo))];
    ++sides[static_cast<std::size_t>(skel.vertex_class_of(rep.tet, hi))];
  }
  for (const auto& v : skel.vertex_classes)
    corners[static_cast<std::size_t>(v.id)] = v.degree();
  for (auto [t, f] : skel.boundary_faces)
    for (int corner : kFaceVertices[static_cast<std::size_t>(f)])
      ++boundary_sides[static_cast<std::size_t>(
          skel.vertex_class_of(t, corner))];

  std::vector<int> chi(vc, 0);
  for (std::size_t i = 0; i < vc; ++i) {
    if ((corners[i] + boundary_sides[i]) % 2 != 0)
      throw ValidityError("vertex link is not a surface");
    chi[i] = sides[i] - (corners[i] + boundary_sides[i]) / 2;
  }
  (void)tri;
  return chi;
}

std::vector<int> vertex_link_euler(const Triangulation& tri,
                                   const Skeleton& skel) {
  if (!skel.boundary_faces.empty())
    throw UsageError(
        "vertex_link_euler requires a triangulation with no boundary faces");
  return link_euler_characteristics(tri, skel);
}

}  // namespace tautkit
