#ifndef NORMTRI_SKELETON_HPP
#define NORMTRI_SKELETON_HPP

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "triangulation.hpp"

namespace normtri {

/// Disjoint-set forest over 0..n-1.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  /// Unites the two sets; the smaller root survives so roots are canonical.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// One appearance of an edge class inside a tetrahedron. verts[0], verts[1]
/// are the edge's endpoints (in the class's orientation); verts[2], verts[3]
/// are the other two vertices, ordered so that walking from this embedding
/// through the face opposite verts[2] reaches the next embedding.
struct EdgeEmbedding {
  int tet;
  Perm4 verts;
  int edge() const { return edge_number(verts[0], verts[1]); }
};

struct EdgeClass {
  std::vector<EdgeEmbedding> embeddings;  // in walking order
  bool boundary = false;
  int degree() const { return static_cast<int>(embeddings.size()); }
};

enum class LinkType { Sphere, Torus, Disc, Other };

inline const char* to_string(LinkType t) {
  switch (t) {
    case LinkType::Sphere: return "sphere";
    case LinkType::Torus: return "torus";
    case LinkType::Disc: return "disc";
    case LinkType::Other: return "other";
  }
  return "?";
}

struct VertexLink {
  int vertex;
  int triangles;
  int euler_characteristic;
  bool orientable;
  bool closed;
  LinkType type;
};

/// A boundary triangle: face `face` of tetrahedron `tet`.
struct BoundaryTriangle {
  int tet;
  int face;
  bool operator==(const BoundaryTriangle&) const = default;
};

struct BoundaryComponent {
  std::vector<BoundaryTriangle> triangles;  // in order of discovery from the lowest (tet, face)
  std::vector<int> edges;                   // skeleton edge classes, in first-appearance order
  int vertices = 0;
  int euler_characteristic = 0;
};

/// Edge, vertex and face classes of a triangulation.
class Skeleton {
 public:
  explicit Skeleton(const Triangulation& t) : tri_(&t) {
    const int n = static_cast<int>(t.size());
    edge_of_.assign(n, {});
    edge_sign_.assign(n, {});
    for (auto& r : edge_of_) r.fill(-1);
    build_edges(n);
    build_vertices(n);
    build_faces(n);
  }

  const Triangulation& triangulation() const { return *tri_; }

  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_reps_.size()); }
  int face_count() const { return static_cast<int>(face_reps_.size()); }

  const EdgeClass& edge(int e) const { return edges_[e]; }
  const std::vector<EdgeClass>& edges() const { return edges_; }

  /// Edge class of edge number `e` (0..5) of tetrahedron `tet`.
  int edge_of(int tet, int e) const { return edge_of_[tet][e]; }
  int edge_of(int tet, int a, int b) const { return edge_of_[tet][edge_number(a, b)]; }
  /// +1 if tet's edge a->b (a < b) runs along the class orientation, -1 otherwise.
  int edge_sign(int tet, int e) const { return edge_sign_[tet][e]; }

  int vertex_of(int tet, int v) const { return vertex_of_[tet][v]; }
  int face_of(int tet, int f) const { return face_of_[tet][f]; }
  bool face_boundary(int face_class) const { return face_boundary_[face_class]; }

  /// The lowest (tet, vertex) of each vertex class.
  const std::vector<std::pair<int, int>>& vertex_representatives() const { return vertex_reps_; }
  const std::vector<std::pair<int, int>>& face_representatives() const { return face_reps_; }

  std::vector<int> edge_degrees() const {
    std::vector<int> d;
    for (auto& e : edges_) d.push_back(e.degree());
    return d;
  }

  std::vector<VertexLink> vertex_links() const {
    const Triangulation& t = *tri_;
    const int n = static_cast<int>(t.size());
    // Link vertices are (tet, v, u) with u != v: the end of edge vu at v.
    UnionFind uf(static_cast<std::size_t>(n) * 16);
    auto id = [](int tet, int v, int u) { return static_cast<std::size_t>(tet) * 16 + v * 4 + u; };
    for (int tet = 0; tet < n; ++tet)
      for (int f = 0; f < 4; ++f) {
        const auto& g = t.adjacent(tet, f);
        if (!g) continue;
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          for (int u = 0; u < 4; ++u)
            if (u != v && u != f) uf.unite(id(tet, v, u), id(g->tet, g->perm[v], g->perm[u]));
        }
      }
    std::vector<int> nv(vertex_count(), 0), ntri(vertex_count(), 0), nedge2(vertex_count(), 0), nbdry(vertex_count(), 0);
    std::vector<bool> seen(static_cast<std::size_t>(n) * 16, false);
    for (int tet = 0; tet < n; ++tet)
      for (int v = 0; v < 4; ++v) {
        int vc = vertex_of_[tet][v];
        ++ntri[vc];
        for (int u = 0; u < 4; ++u) {
          if (u == v) continue;
          auto r = uf.find(id(tet, v, u));
          if (!seen[r]) {
            seen[r] = true;
            ++nv[vc];
          }
          // Link edge opposite link-vertex u lies in face u.
          if (t.is_boundary(tet, u)) {
            nedge2[vc] += 2;
            ++nbdry[vc];
          } else {
            nedge2[vc] += 1;
          }
        }
      }
    auto orient = link_orientable();
    std::vector<VertexLink> out;
    for (int vc = 0; vc < vertex_count(); ++vc) {
      VertexLink l{};
      l.vertex = vc;
      l.triangles = ntri[vc];
      l.euler_characteristic = nv[vc] - nedge2[vc] / 2 + ntri[vc];
      l.orientable = orient[vc];
      l.closed = nbdry[vc] == 0;
      if (l.closed && l.euler_characteristic == 2)
        l.type = LinkType::Sphere;
      else if (l.closed && l.orientable && l.euler_characteristic == 0)
        l.type = LinkType::Torus;
      else if (!l.closed && l.euler_characteristic == 1)
        l.type = LinkType::Disc;
      else
        l.type = LinkType::Other;
      out.push_back(l);
    }
    return out;
  }

  /// For boundary triangle (tet, face) and one of its edges (a, b), the
  /// neighbouring boundary triangle across that edge, together with the
  /// images of a, b and of the triangle's third vertex.
  struct BoundaryNeighbour {
    BoundaryTriangle tri;
    int a, b, c;
  };
  BoundaryNeighbour boundary_neighbour(int tet, int face, int a, int b) const {
    const Triangulation& t = *tri_;
    int c = 6 - face - a - b;  // third vertex of the face
    int x = c, y = face;
    int cur = tet;
    for (std::size_t guard = 0; guard <= 6 * t.size() + 6; ++guard) {
      const auto& g = t.adjacent(cur, x);
      if (!g) return {{cur, x}, a, b, y};
      int nx = g->perm[y];
      int ny = g->perm[x];
      a = g->perm[a];
      b = g->perm[b];
      cur = g->tet;
      x = nx;
      y = ny;
    }
    throw Error(ErrorCode::InvalidEdgeIdentification, "boundary walk did not terminate");
  }

  std::vector<BoundaryComponent> boundary_components() const {
    const Triangulation& t = *tri_;
    const int n = static_cast<int>(t.size());
    std::vector<int> comp_of(static_cast<std::size_t>(n) * 4, -1);
    std::vector<BoundaryComponent> out;
    for (int tet = 0; tet < n; ++tet)
      for (int f = 0; f < 4; ++f) {
        if (!t.is_boundary(tet, f) || comp_of[tet * 4 + f] >= 0) continue;
        BoundaryComponent bc;
        int cid = static_cast<int>(out.size());
        std::vector<BoundaryTriangle> queue{{tet, f}};
        comp_of[tet * 4 + f] = cid;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          auto [ct, cf] = queue[qi];
          bc.triangles.push_back(queue[qi]);
          auto fv = face_vertices(cf);
          for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
              auto nb = boundary_neighbour(ct, cf, fv[i], fv[j]);
              int key = nb.tri.tet * 4 + nb.tri.face;
              if (comp_of[key] < 0) {
                comp_of[key] = cid;
                queue.push_back(nb.tri);
              }
            }
        }
        std::vector<bool> have_edge(edges_.size(), false), have_vertex(vertex_reps_.size(), false);
        int nverts = 0;
        for (auto [ct, cf] : bc.triangles) {
          auto fv = face_vertices(cf);
          for (int i = 0; i < 3; ++i) {
            int vc = vertex_of_[ct][fv[i]];
            if (!have_vertex[vc]) {
              have_vertex[vc] = true;
              ++nverts;
            }
            for (int j = i + 1; j < 3; ++j) {
              int ec = edge_of(ct, fv[i], fv[j]);
              if (!have_edge[ec]) {
                have_edge[ec] = true;
                bc.edges.push_back(ec);
              }
            }
          }
        }
        bc.vertices = nverts;
        bc.euler_characteristic =
            nverts - static_cast<int>(bc.edges.size()) + static_cast<int>(bc.triangles.size());
        out.push_back(std::move(bc));
      }
    return out;
  }

 private:
  void build_edges(int n) {
    const Triangulation& t = *tri_;
    for (int tet = 0; tet < n; ++tet)
      for (int e = 0; e < 6; ++e) {
        if (edge_of_[tet][e] >= 0) continue;
        int cls = static_cast<int>(edges_.size());
        EdgeClass ec;
        int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
        int c = -1, d = -1;
        for (int v = 0; v < 4; ++v)
          if (v != a && v != b) (c < 0 ? c : d) = v;
        // Pick (c, d) so that the start embedding has the orientation of
        // an even permutation; the walk order is unaffected otherwise.
        Perm4 start(a, b, c, d);
        if (start.sign() < 0) start = Perm4(a, b, d, c);

        // Walk forward through faces opposite verts[2].
        std::vector<EdgeEmbedding> fwd{{tet, start}};
        bool closed_loop = false;
        Perm4 p = start;
        int cur = tet;
        while (true) {
          const auto& g = t.adjacent(cur, p[2]);
          if (!g) break;
          Perm4 q(g->perm[p[0]], g->perm[p[1]], g->perm[p[3]], g->perm[p[2]]);
          cur = g->tet;
          p = q;
          if (cur == tet && p.edge_like(start)) {
            if (p[0] != start[0])
              throw Error(ErrorCode::InvalidEdgeIdentification,
                          "edge identified with itself in reverse (tet " + std::to_string(tet) + ")");
            closed_loop = true;
            break;
          }
          fwd.push_back({cur, p});
          if (fwd.size() > 6 * static_cast<std::size_t>(n) + 1)
            throw Error(ErrorCode::InvalidEdgeIdentification, "edge walk did not close");
        }
        std::vector<EdgeEmbedding> bwd;
        if (!closed_loop) {
          ec.boundary = true;
          p = start;
          cur = tet;
          while (true) {
            const auto& g = t.adjacent(cur, p[3]);
            if (!g) break;
            Perm4 q(g->perm[p[0]], g->perm[p[1]], g->perm[p[3]], g->perm[p[2]]);
            cur = g->tet;
            p = q;
            bwd.push_back({cur, p});
            if (bwd.size() > 6 * static_cast<std::size_t>(n) + 1)
              throw Error(ErrorCode::InvalidEdgeIdentification, "edge walk did not close");
          }
        }
        for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) ec.embeddings.push_back(*it);
        for (auto& x : fwd) ec.embeddings.push_back(x);
        for (auto& emb : ec.embeddings) {
          int en = emb.edge();
          int sgn = emb.verts[0] < emb.verts[1] ? 1 : -1;
          if (edge_of_[emb.tet][en] == cls) {
            if (edge_sign_[emb.tet][en] != sgn)
              throw Error(ErrorCode::InvalidEdgeIdentification,
                          "edge identified with itself in reverse (tet " + std::to_string(emb.tet) + ")");
            continue;
          }
          edge_of_[emb.tet][en] = cls;
          edge_sign_[emb.tet][en] = sgn;
        }
        edges_.push_back(std::move(ec));
      }
  }

  void build_vertices(int n) {
    const Triangulation& t = *tri_;
    UnionFind uf(static_cast<std::size_t>(n) * 4);
    for (int tet = 0; tet < n; ++tet)
      for (int f = 0; f < 4; ++f)
        if (const auto& g = t.adjacent(tet, f))
          for (int v = 0; v < 4; ++v)
            if (v != f) uf.unite(tet * 4 + v, g->tet * 4 + g->perm[v]);
    vertex_of_.assign(n, {});
    std::map<std::size_t, int> ids;
    for (int tet = 0; tet < n; ++tet)
      for (int v = 0; v < 4; ++v) {
        auto r = uf.find(tet * 4 + v);
        auto [it, inserted] = ids.emplace(r, static_cast<int>(ids.size()));
        if (inserted) vertex_reps_.emplace_back(tet, v);
        vertex_of_[tet][v] = it->second;
      }
  }

  void build_faces(int n) {
    const Triangulation& t = *tri_;
    face_of_.assign(n, {});
    for (auto& r : face_of_) r.fill(-1);
    for (int tet = 0; tet < n; ++tet)
      for (int f = 0; f < 4; ++f) {
        if (face_of_[tet][f] >= 0) continue;
        int id = static_cast<int>(face_reps_.size());
        face_reps_.emplace_back(tet, f);
        face_of_[tet][f] = id;
        const auto& g = t.adjacent(tet, f);
        face_boundary_.push_back(!g.has_value());
        if (g) face_of_[g->tet][g->perm[f]] = id;
      }
  }

  std::vector<bool> link_orientable() const {
    const Triangulation& t = *tri_;
    const int n = static_cast<int>(t.size());
    std::vector<std::array<int, 4>> sign(n, {0, 0, 0, 0});
    std::vector<bool> ok(vertex_reps_.size(), true);
    for (int tet = 0; tet < n; ++tet)
      for (int v = 0; v < 4; ++v) {
        if (sign[tet][v] != 0) continue;
        sign[tet][v] = 1;
        std::vector<std::pair<int, int>> stack{{tet, v}};
        while (!stack.empty()) {
          auto [ct, cv] = stack.back();
          stack.pop_back();
          for (int f = 0; f < 4; ++f) {
            if (f == cv) continue;
            const auto& g = t.adjacent(ct, f);
            if (!g) continue;
            int nv = g->perm[cv];
            int restr = g->perm.sign() * (((cv + nv) % 2 == 0) ? 1 : -1);
            int want = -sign[ct][cv] * restr;
            int& s = sign[g->tet][nv];
            if (s == 0) {
              s = want;
              stack.emplace_back(g->tet, nv);
            } else if (s != want) {
              ok[vertex_of_[ct][cv]] = false;
            }
          }
        }
      }
    return ok;
  }

  const Triangulation* tri_;
  std::vector<EdgeClass> edges_;
  std::vector<std::array<int, 6>> edge_of_;
  std::vector<std::array<int, 6>> edge_sign_;
  std::vector<std::array<int, 4>> vertex_of_;
  std::vector<std::pair<int, int>> vertex_reps_;
  std::vector<std::array<int, 4>> face_of_;
  std::vector<std::pair<int, int>> face_reps_;
  std::vector<bool> face_boundary_;
};

inline std::vector<VertexLink> vertex_links(const Triangulation& t) { return Skeleton(t).vertex_links(); }

inline std::vector<BoundaryComponent> boundary_components(const Triangulation& t) {
  return Skeleton(t).boundary_components();
}

/// Per-tetrahedron orientation signs making every gluing orientation
/// reversing. Throws NotOrientable when no such choice exists.
inline std::vector<int> orient(const Triangulation& t) {
  const int n = static_cast<int>(t.size());
  std::vector<int> sign(n, 0);
  for (int s = 0; s < n; ++s) {
    if (sign[s] != 0) continue;
    sign[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = t.adjacent(cur, f);
        if (!g) continue;
        int want = -sign[cur] * g->perm.sign();
        if (sign[g->tet] == 0) {
          sign[g->tet] = want;
          stack.push_back(g->tet);
        } else if (sign[g->tet] != want) {
          throw Error(ErrorCode::NotOrientable, "gluing of tet " + std::to_string(cur) + " face " +
                                                    std::to_string(f) + " closes an orientation-reversing cycle");
        }
      }
    }
  }
  return sign;
}

inline bool is_orientable(const Triangulation& t) {
  try {
    orient(t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Returns a copy relabelled so that every tetrahedron is positively
/// oriented (odd-signed tetrahedra get vertices 2 and 3 swapped).
inline Triangulation oriented_copy(const Triangulation& t) {
  auto sign = orient(t);
  std::vector<int> tets(t.size());
  std::iota(tets.begin(), tets.end(), 0);
  std::vector<Perm4> maps(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (sign[i] < 0) maps[i] = Perm4(0, 1, 3, 2);
  return t.relabel(tets, maps);
}

}  // namespace normtri

#endif  // NORMTRI_SKELETON_HPP
