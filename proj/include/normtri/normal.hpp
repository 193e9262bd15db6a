#ifndef NORMTRI_NORMAL_HPP
#define NORMTRI_NORMAL_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

using Coord = std::int64_t;

enum class CoordSystem { Standard, Quad };

inline const char* to_string(CoordSystem s) { return s == CoordSystem::Standard ? "std" : "quad"; }

inline constexpr int kStdPerTet = 7;
inline constexpr int kQuadPerTet = 3;

inline int coords_per_tet(CoordSystem s) { return s == CoordSystem::Standard ? kStdPerTet : kQuadPerTet; }

/// Per tetrahedron: t0 t1 t2 t3 q01/23 q02/13 q03/12 (standard) or the three
/// quads alone (quad coordinates).
struct NormalSurfaceVector {
  CoordSystem system = CoordSystem::Standard;
  std::vector<Coord> coords;

  NormalSurfaceVector() = default;
  NormalSurfaceVector(CoordSystem s, std::vector<Coord> c) : system(s), coords(std::move(c)) {}
  static NormalSurfaceVector zero(const Triangulation& t, CoordSystem s = CoordSystem::Standard) {
    return {s, std::vector<Coord>(t.size() * coords_per_tet(s), 0)};
  }

  std::size_t tet_count() const { return coords.size() / coords_per_tet(system); }

  Coord tri(int tet, int v) const { return coords[kStdPerTet * tet + v]; }
  Coord& tri(int tet, int v) { return coords[kStdPerTet * tet + v]; }
  Coord quad(int tet, int q) const {
    return coords[coords_per_tet(system) * tet + (system == CoordSystem::Standard ? 4 : 0) + q];
  }
  Coord& quad(int tet, int q) {
    return coords[coords_per_tet(system) * tet + (system == CoordSystem::Standard ? 4 : 0) + q];
  }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](Coord c) { return c == 0; });
  }

  bool operator==(const NormalSurfaceVector&) const = default;
  auto operator<=>(const NormalSurfaceVector& o) const { return coords <=> o.coords; }

  std::string str() const {
    std::string s = std::string(to_string(system)) + "[";
    int per = coords_per_tet(system);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i && i % per == 0) s += " |";
      s += " " + std::to_string(coords[i]);
    }
    return s + " ]";
  }
};

namespace normal_detail {

inline Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "coordinate overflow");
  return r;
}
inline Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "coordinate overflow");
  return r;
}

inline void require_standard(const NormalSurfaceVector& v, const Triangulation& t) {
  if (v.system != CoordSystem::Standard) throw Error(ErrorCode::InvalidParameter, "standard coordinates required");
  if (v.coords.size() != t.size() * kStdPerTet)
    throw Error(ErrorCode::InvalidParameter, "vector length does not match triangulation");
}

/// The vertex pair {0, q+1} on one side of quad type q.
inline bool on_zero_side(int q, int v) { return v == 0 || v == q + 1; }

}  // namespace normal_detail

/// Number of normal arcs cutting off vertex a in face f of tet.
inline Coord arc_count(const NormalSurfaceVector& v, int tet, int face, int a) {
  return v.tri(tet, a) + v.quad(tet, quad_separating(a, face));
}

/// Rows of the matching equations as plain integer vectors.
inline std::vector<std::vector<Coord>> matching_rows(const Triangulation& t, CoordSystem sys) {
  std::vector<std::vector<Coord>> rows;
  const int n = static_cast<int>(t.size());
  if (sys == CoordSystem::Standard) {
    for (int tet = 0; tet < n; ++tet)
      for (int f = 0; f < 4; ++f) {
        const auto& g = t.adjacent(tet, f);
        if (!g) continue;
        // Each face once, from the side with the smaller (tet, face).
        if (g->tet < tet || (g->tet == tet && g->perm[f] < f)) continue;
        for (int a = 0; a < 4; ++a) {
          if (a == f) continue;
          std::vector<Coord> row(n * kStdPerTet, 0);
          row[tet * kStdPerTet + a] += 1;
          row[tet * kStdPerTet + 4 + quad_separating(a, f)] += 1;
          int b = g->perm[a], h = g->perm[f];
          row[g->tet * kStdPerTet + b] -= 1;
          row[g->tet * kStdPerTet + 4 + quad_separating(b, h)] -= 1;
          rows.push_back(std::move(row));
        }
      }
    return rows;
  }
  // Quad equations: one per interior edge class. Walking around the edge,
  // the quads on the two sides of each embedding contribute with opposite
  // signs.
  Skeleton sk(t);
  for (const auto& e : sk.edges()) {
    if (e.boundary) continue;
    std::vector<Coord> row(n * kQuadPerTet, 0);
    for (const auto& emb : e.embeddings) {
      const Perm4& p = emb.verts;
      row[emb.tet * kQuadPerTet + quad_separating(p[0], p[2])] += 1;
      row[emb.tet * kQuadPerTet + quad_separating(p[0], p[3])] -= 1;
    }
    if (std::any_of(row.begin(), row.end(), [](Coord c) { return c != 0; })) rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matching_matrix(const Triangulation& t, CoordSystem sys) {
  auto rows = matching_rows(t, sys);
  IntMatrix m(rows.size(), t.size() * coords_per_tet(sys));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline bool satisfies_matching(const Triangulation& t, const NormalSurfaceVector& v) {
  for (const auto& row : matching_rows(t, v.system)) {
    Coord s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j]) s = normal_detail::checked_add(s, normal_detail::checked_mul(row[j], v.coords[j]));
    if (s != 0) return false;
  }
  return true;
}

/// At most one nonzero quad type per tetrahedron.
inline bool quads_compatible(const NormalSurfaceVector& v) {
  for (std::size_t tet = 0; tet < v.tet_count(); ++tet) {
    int nz = 0;
    for (int q = 0; q < 3; ++q)
      if (v.quad(static_cast<int>(tet), q) != 0) ++nz;
    if (nz > 1) return false;
  }
  return true;
}

inline bool is_admissible(const Triangulation& t, const NormalSurfaceVector& v) {
  if (v.coords.size() != t.size() * coords_per_tet(v.system)) return false;
  if (std::any_of(v.coords.begin(), v.coords.end(), [](Coord c) { return c < 0; })) return false;
  return quads_compatible(v) && satisfies_matching(t, v);
}

/// Quad coordinates of a standard vector.
inline NormalSurfaceVector quad_projection(const NormalSurfaceVector& v) {
  if (v.system == CoordSystem::Quad) return v;
  NormalSurfaceVector r(CoordSystem::Quad, std::vector<Coord>(v.tet_count() * kQuadPerTet));
  for (std::size_t tet = 0; tet < v.tet_count(); ++tet)
    for (int q = 0; q < 3; ++q) r.quad(static_cast<int>(tet), q) = v.quad(static_cast<int>(tet), q);
  return r;
}

/// Lifts a quad-coordinate solution to standard coordinates with the fewest
/// triangles: triangle counts are propagated around each vertex link and
/// shifted so the smallest is zero. Throws InconsistentWeights if the quad
/// vector does not satisfy the quad matching equations.
inline NormalSurfaceVector standard_from_quad(const Triangulation& t, const NormalSurfaceVector& v) {
  if (v.system == CoordSystem::Standard) return v;
  const int n = static_cast<int>(t.size());
  NormalSurfaceVector r = NormalSurfaceVector::zero(t);
  for (int tet = 0; tet < n; ++tet)
    for (int q = 0; q < 3; ++q) r.quad(tet, q) = v.quad(tet, q);
  std::vector<std::array<std::optional<Coord>, 4>> val(n);
  for (int tet = 0; tet < n; ++tet)
    for (int a = 0; a < 4; ++a) {
      if (val[tet][a]) continue;
      std::vector<std::pair<int, int>> comp{{tet, a}};
      val[tet][a] = 0;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        auto [ct, ca] = comp[i];
        for (int f = 0; f < 4; ++f) {
          if (f == ca) continue;
          const auto& g = t.adjacent(ct, f);
          if (!g) continue;
          int nt = g->tet, na = g->perm[ca], nf = g->perm[f];
          Coord want = *val[ct][ca] + r.quad(ct, quad_separating(ca, f)) - r.quad(nt, quad_separating(na, nf));
          if (!val[nt][na]) {
            val[nt][na] = want;
            comp.emplace_back(nt, na);
          } else if (*val[nt][na] != want) {
            throw Error(ErrorCode::InconsistentWeights, "quad vector fails the matching equations");
          }
        }
      }
      Coord lo = std::numeric_limits<Coord>::max();
      for (auto [ct, ca] : comp) lo = std::min(lo, *val[ct][ca]);
      for (auto [ct, ca] : comp) r.tri(ct, ca) = *val[ct][ca] - lo;
    }
  return r;
}

/// Weight of each edge class. Every incidence is checked against the first.
inline std::vector<Coord> edge_weights(const Triangulation& t, const NormalSurfaceVector& sv) {
  NormalSurfaceVector v = standard_from_quad(t, sv);
  Skeleton sk(t);
  std::vector<Coord> w(sk.edge_count(), -1);
  for (int tet = 0; tet < static_cast<int>(t.size()); ++tet)
    for (int e = 0; e < 6; ++e) {
      int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
      int c = -1, d = -1;
      for (int x = 0; x < 4; ++x)
        if (x != a && x != b) (c < 0 ? c : d) = x;
      // Quads separating a from b: those pairing a with c or with d.
      Coord here = v.tri(tet, a) + v.tri(tet, b) + v.quad(tet, quad_separating(a, c)) + v.quad(tet, quad_separating(a, d));
      int cls = sk.edge_of(tet, e);
      if (w[cls] < 0)
        w[cls] = here;
      else if (w[cls] != here)
        throw Error(ErrorCode::InconsistentWeights, "edge class " + std::to_string(cls) + " has weights " +
                                                        std::to_string(w[cls]) + " and " + std::to_string(here));
    }
  return w;
}

/// Euler characteristic of the cell decomposition cut out by the
/// triangulation: edge points minus arcs (one per face class) plus discs.
inline Coord euler_characteristic(const Triangulation& t, const NormalSurfaceVector& sv) {
  NormalSurfaceVector v = standard_from_quad(t, sv);
  if (!is_admissible(t, v)) throw Error(ErrorCode::NotAdmissible, "euler_characteristic needs an admissible vector");
  Coord chi = 0;
  for (Coord w : edge_weights(t, v)) chi += w;
  const int n = static_cast<int>(t.size());
  for (int tet = 0; tet < n; ++tet)
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(tet, f);
      if (g && (g->tet < tet || (g->tet == tet && g->perm[f] < f))) continue;
      for (int a = 0; a < 4; ++a)
        if (a != f) chi -= arc_count(v, tet, f, a);
    }
  for (Coord c : v.coords) chi += c;
  return chi;
}

/// wa * a + wb * b. Both weights must be positive and the vectors must not
/// carry different quad types in any tetrahedron.
inline NormalSurfaceVector haken_sum(const NormalSurfaceVector& a, const NormalSurfaceVector& b, Coord wa = 1,
                                     Coord wb = 1) {
  if (wa <= 0 || wb <= 0) throw Error(ErrorCode::InvalidParameter, "Haken sum weights must be positive");
  if (a.system != b.system || a.coords.size() != b.coords.size())
    throw Error(ErrorCode::InvalidParameter, "Haken sum of vectors over different spaces");
  for (std::size_t tet = 0; tet < a.tet_count(); ++tet) {
    int qa = -1, qb = -1;
    for (int q = 0; q < 3; ++q) {
      if (a.quad(static_cast<int>(tet), q)) qa = q;
      if (b.quad(static_cast<int>(tet), q)) qb = q;
    }
    if (qa >= 0 && qb >= 0 && qa != qb)
      throw Error(ErrorCode::IncompatibleQuadTypes, "different quad types in tet " + std::to_string(tet));
  }
  NormalSurfaceVector r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    r.coords[i] = normal_detail::checked_add(normal_detail::checked_mul(wa, a.coords[i]),
                                             normal_detail::checked_mul(wb, b.coords[i]));
  return r;
}

// ---------------------------------------------------------------------------
// Explicit normal discs. Discs of one type are stacked; triangle copy i is
// the i-th closest to its vertex, quad copy j the j-th closest to the side
// holding vertex 0. Arcs cutting off vertex a in a face are ordered by
// distance from a: the triangles at a first, then the quads.
// ---------------------------------------------------------------------------

struct NormalDisc {
  int tet;
  int type;  // 0..3 triangle at that vertex, 4..6 quad type (type - 4)
  Coord copy;
};

class DiscIndex {
 public:
  DiscIndex(const Triangulation& t, const NormalSurfaceVector& v) : v_(v) {
    normal_detail::require_standard(v, t);
    if (!quads_compatible(v)) throw Error(ErrorCode::NotAdmissible, "two quad types in one tetrahedron");
    base_.resize(v.coords.size() + 1, 0);
    for (std::size_t i = 0; i < v.coords.size(); ++i) base_[i + 1] = base_[i] + v.coords[i];
  }

  Coord size() const { return base_.back(); }
  Coord id(int tet, int type, Coord copy) const { return base_[tet * kStdPerTet + type] + copy; }
  NormalDisc disc(Coord id) const {
    auto it = std::upper_bound(base_.begin(), base_.end(), id);
    std::size_t slot = static_cast<std::size_t>(it - base_.begin()) - 1;
    return {static_cast<int>(slot / kStdPerTet), static_cast<int>(slot % kStdPerTet), id - base_[slot]};
  }

  /// Disc owning the arc at position pos (from vertex a) in face f.
  Coord arc_disc(int tet, int face, int a, Coord pos) const {
    Coord ta = v_.tri(tet, a);
    if (pos < ta) return id(tet, a, pos);
    int q = quad_separating(a, face);
    Coord nq = v_.quad(tet, q);
    Coord j = pos - ta;
    return id(tet, 4 + q, normal_detail::on_zero_side(q, a) ? j : nq - 1 - j);
  }

  /// Disc owning the point at position pos (from a) on edge ab.
  Coord edge_disc(int tet, int a, int b, Coord pos) const {
    Coord ta = v_.tri(tet, a);
    if (pos < ta) return id(tet, a, pos);
    pos -= ta;
    int c = -1, d = -1;
    for (int x = 0; x < 4; ++x)
      if (x != a && x != b) (c < 0 ? c : d) = x;
    for (int q : {quad_separating(a, c), quad_separating(a, d)}) {
      Coord nq = v_.quad(tet, q);
      if (nq == 0) continue;
      if (pos < nq) return id(tet, 4 + q, normal_detail::on_zero_side(q, a) ? pos : nq - 1 - pos);
      pos -= nq;
    }
    return id(tet, b, v_.tri(tet, b) - 1 - pos);
  }

 private:
  const NormalSurfaceVector& v_;
  std::vector<Coord> base_;
};

struct SurfaceComponent {
  Coord discs = 0;
  Coord euler_characteristic = 0;
  bool orientable = true;  // two-sided; equals orientable inside an orientable manifold
  bool closed = true;
  bool vertex_linking = false;
};

struct SurfaceAnalysis {
  std::vector<SurfaceComponent> components;
  Coord euler_characteristic = 0;
  std::size_t component_count() const { return components.size(); }
};

/// Connected components of the surface with Euler characteristic,
/// closedness and two-sidedness of each. Components are ordered by their
/// lowest disc.
inline SurfaceAnalysis analyze_surface(const Triangulation& t, const NormalSurfaceVector& sv) {
  NormalSurfaceVector v = standard_from_quad(t, sv);
  if (!is_admissible(t, v)) throw Error(ErrorCode::NotAdmissible, "analyze_surface needs an admissible vector");
  DiscIndex idx(t, v);
  const Coord nd = idx.size();
  // Union-find with parity: parity[x] relates x's transverse orientation to its root's.
  std::vector<Coord> parent(nd);
  std::vector<int> parity(nd, 0);
  for (Coord i = 0; i < nd; ++i) parent[i] = i;
  std::vector<bool> one_sided_root(nd, false);
  auto find = [&](Coord x) {
    // Iterative find with path compression accumulating parity.
    std::vector<Coord> path;
    while (parent[x] != x) {
      path.push_back(x);
      x = parent[x];
    }
    Coord root = x;
    int acc = 0;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      acc ^= parity[*it];
      parity[*it] = acc;
      parent[*it] = root;
    }
    return root;
  };
  auto link = [&](Coord a, Coord b, int rel) {
    Coord ra = find(a), rb = find(b);
    int pa = parity[a] * (a != ra), pb = parity[b] * (b != rb);
    if (ra == rb) {
      if ((pa ^ pb) != rel) one_sided_root[ra] = true;
      return;
    }
    if (rb < ra) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent[rb] = ra;
    parity[rb] = pa ^ pb ^ rel;
    if (one_sided_root[rb]) one_sided_root[ra] = true;
  };
  // Side of a disc facing corner a: 0 if it is the disc's reference side.
  auto facing = [](int type, int a) {
    if (type < 4) return 0;
    return normal_detail::on_zero_side(type - 4, a) ? 0 : 1;
  };
  const int n = static_cast<int>(t.size());
  std::vector<char> boundary_disc(nd, 0);
  for (int tet = 0; tet < n; ++tet)
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(tet, f);
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        Coord cnt = arc_count(v, tet, f, a);
        for (Coord p = 0; p < cnt; ++p) {
          Coord d1 = idx.arc_disc(tet, f, a, p);
          if (!g) {
            boundary_disc[d1] = 1;
            continue;
          }
          if (g->tet < tet || (g->tet == tet && g->perm[f] < f)) continue;
          Coord d2 = idx.arc_disc(g->tet, g->perm[f], g->perm[a], p);
          int rel = facing(idx.disc(d1).type, a) ^ facing(idx.disc(d2).type, g->perm[a]);
          link(d1, d2, rel);
        }
      }
    }
  std::map<Coord, int> comp_id;
  SurfaceAnalysis out;
  std::vector<int> comp_of(nd);
  std::vector<bool> all_triangles;
  for (Coord d = 0; d < nd; ++d) {
    Coord r = find(d);
    auto [it, inserted] = comp_id.emplace(r, static_cast<int>(out.components.size()));
    if (inserted) {
      out.components.emplace_back();
      all_triangles.push_back(true);
    }
    int c = it->second;
    comp_of[d] = c;
    auto& sc = out.components[c];
    ++sc.discs;
    ++sc.euler_characteristic;
    if (boundary_disc[d]) sc.closed = false;
    if (idx.disc(d).type >= 4) all_triangles[c] = false;
  }
  for (auto [r, c] : comp_id) out.components[c].orientable = !one_sided_root[r];
  // Arcs, once per face class.
  for (int tet = 0; tet < n; ++tet)
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(tet, f);
      if (g && (g->tet < tet || (g->tet == tet && g->perm[f] < f))) continue;
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        Coord cnt = arc_count(v, tet, f, a);
        for (Coord p = 0; p < cnt; ++p) --out.components[comp_of[idx.arc_disc(tet, f, a, p)]].euler_characteristic;
      }
    }
  // Edge points, once per edge class.
  Skeleton sk(t);
  auto w = edge_weights(t, v);
  for (int e = 0; e < sk.edge_count(); ++e) {
    const auto& emb = sk.edge(e).embeddings.front();
    for (Coord p = 0; p < w[e]; ++p)
      ++out.components[comp_of[idx.edge_disc(emb.tet, emb.verts[0], emb.verts[1], p)]].euler_characteristic;
  }
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    out.components[c].vertex_linking = all_triangles[c];
    out.euler_characteristic += out.components[c].euler_characteristic;
  }
  return out;
}

}  // namespace normtri

#endif  // NORMTRI_NORMAL_HPP
