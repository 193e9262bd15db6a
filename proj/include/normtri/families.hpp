#ifndef NORMTRI_FAMILIES_HPP
#define NORMTRI_FAMILIES_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "curves.hpp"
#include "error.hpp"
#include "normal.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

namespace families_detail {

inline Perm4 face_map(const char* from, const char* to) {
  return Perm4::from_face_map({from[0] - '0', from[1] - '0', from[2] - '0'}, {to[0] - '0', to[1] - '0', to[2] - '0'});
}

inline int face_of(const char* verts) {
  int mask = 0;
  for (int i = 0; i < 3; ++i) mask |= 1 << (verts[i] - '0');
  for (int v = 0; v < 4; ++v)
    if (!(mask >> v & 1)) return v;
  return -1;
}

/// Glues face `from` of a to face `to` of b, vertex by vertex.
inline void glue(Triangulation& t, int a, const char* from, int b, const char* to) {
  t.join(a, face_of(from), b, face_map(from, to));
}

inline void require_odd(int v, const char* name) {
  if (v < 3 || v % 2 == 0)
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " must be odd and at least 3, got " + std::to_string(v));
}

/// Lays the chain T_m into tetrahedra off .. off+m-1 of t.
inline void layer_chain(Triangulation& t, int off, int m) {
  for (int j = 2; j <= m; ++j) {
    int cur = off + j - 1, prev = off + j - 2;
    glue(t, cur, "102", prev, "013");
    if (j % 2 == 0)
      glue(t, cur, "123", prev, "123");
    else
      glue(t, cur, "023", prev, "023");
  }
}

/// Where a tetrahedron of a replaced subcomplex went: its new index and the
/// map from its old vertex labels to the new ones.
struct Placement {
  int tet;
  Perm4 map;
};

/// Removes the tetrahedra in `drop` from t and inserts `r` in their place.
/// A gluing from a kept tetrahedron onto face f of a dropped tetrahedron x
/// is redirected to place(x, f), with tetrahedron numbers of r. Kept
/// tetrahedra keep their relative order and come first.
inline Triangulation replace_subcomplex(const Triangulation& t, const std::vector<int>& drop, const Triangulation& r,
                                        const std::function<Placement(int, int)>& place) {
  std::vector<int> new_index(t.size(), -1);
  int kept = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (std::find(drop.begin(), drop.end(), static_cast<int>(i)) == drop.end()) new_index[i] = kept++;
  Triangulation out(kept);
  int off = out.append(r);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (new_index[i] < 0) continue;
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(static_cast<int>(i), f);
      if (!g) continue;
      if (new_index[g->tet] >= 0) {
        out.join(new_index[i], f, new_index[g->tet], g->perm);
        continue;
      }
      Placement pl = place(g->tet, g->perm[f]);
      out.join(new_index[i], f, off + pl.tet, pl.map * g->perm);
    }
  }
  return out;
}

/// The subcomplex spanned by `tets`, renumbered in the given order.
inline Triangulation induced(const Triangulation& t, const std::vector<int>& tets) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < tets.size(); ++i) idx[tets[i]] = static_cast<int>(i);
  Triangulation out(tets.size());
  for (std::size_t i = 0; i < tets.size(); ++i)
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(tets[i], f);
      if (g && idx.count(g->tet)) out.join(static_cast<int>(i), f, idx[g->tet], g->perm);
    }
  return out;
}

}  // namespace families_detail

// ---------------------------------------------------------------------------
// Solid tori T_m
// ---------------------------------------------------------------------------

struct MarkedSolidTorus {
  Triangulation tri;
  int m = 0;
  int longitude_edge = -1;              // edge class of Delta_1(01)
  std::vector<int> boundary_edges;      // boundary edge classes, first-appearance order
  std::string note;
};

/// The m-tetrahedron solid torus T_m. Delta_j is tetrahedron j-1.
inline MarkedSolidTorus solid_torus_tm(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "m must be at least 1");
  MarkedSolidTorus s;
  s.m = m;
  s.tri = Triangulation(m);
  families_detail::layer_chain(s.tri, 0, m);
  Skeleton sk(s.tri);
  s.longitude_edge = sk.edge_of(0, 0, 1);
  auto bc = sk.boundary_components();
  if (!bc.empty()) s.boundary_edges = bc.front().edges;
  if (m == 1)
    s.note = "single free tetrahedron; the solid torus is obtained by identifying edge 03 with edge 12";
  return s;
}

/// Solves one layer of a normal surface inside tetrahedron `tet`, given the
/// arc counts already fixed on two of its faces. Free choices prefer
/// triangles over the quad parallel to the shared edge.
inline std::optional<std::array<Coord, 7>> solve_layer(int f1, int f2, const std::array<Coord, 4>& arcs1,
                                                       const std::array<Coord, 4>& arcs2) {
  auto v1 = face_vertices(f1);
  Coord bound = 0;
  for (int i = 0; i < 4; ++i) bound = std::max({bound, arcs1[i], arcs2[i]});
  for (int qt = 0; qt < 3; ++qt)
    for (Coord c = 0; c <= bound; ++c) {
      std::array<Coord, 7> x{};
      x[4 + qt] = c;
      std::array<Coord, 4> tri{-1, -1, -1, -1};
      bool ok = true;
      auto want = [&](int face, int a, Coord arcs) {
        Coord need = arcs - (quad_separating(a, face) == qt ? c : 0);
        if (need < 0 || (tri[a] >= 0 && tri[a] != need)) ok = false;
        tri[a] = need;
      };
      for (int a : v1) want(f1, a, arcs1[a]);
      for (int a : face_vertices(f2)) want(f2, a, arcs2[a]);
      if (!ok) continue;
      for (int a = 0; a < 4; ++a) x[a] = std::max<Coord>(tri[a], 0);
      return x;
    }
  return std::nullopt;
}

/// The meridian disc of T_m, traced layer by layer from a single quad of
/// type q03/12 in Delta_1.
inline NormalSurfaceVector meridian_disc(const MarkedSolidTorus& s) {
  const Triangulation& t = s.tri;
  auto v = NormalSurfaceVector::zero(t);
  v.coords[4 + 2] = 1;
  for (int j = 1; j < s.m; ++j) {
    // Tetrahedron j is glued to j-1 along two faces; read the arcs there.
    std::vector<int> faces;
    std::array<std::array<Coord, 4>, 2> arcs{};
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(j, f);
      if (!g || g->tet != j - 1) continue;
      int k = static_cast<int>(faces.size());
      faces.push_back(f);
      for (int a : face_vertices(f)) arcs[k][a] = arc_count(v, j - 1, g->perm[f], g->perm[a]);
    }
    if (faces.size() != 2) throw Error(ErrorCode::InvalidParameter, "not a layered chain");
    auto x = solve_layer(faces[0], faces[1], arcs[0], arcs[1]);
    if (!x) throw Error(ErrorCode::InconsistentWeights, "meridian disc does not continue into layer " + std::to_string(j));
    for (int i = 0; i < 7; ++i) v.coords[j * 7 + i] = (*x)[i];
  }
  return v;
}

/// The surface with exactly one quad per tetrahedron obtained by
/// propagating quad type `quad` in tetrahedron `tet` across all gluings, or
/// nothing if the propagation is inconsistent.
inline std::optional<NormalSurfaceVector> quad_surface_from_seed(const Triangulation& t, int tet, int quad) {
  std::vector<int> type(t.size(), -1);
  type[tet] = quad;
  std::vector<int> stack{tet};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    int q = type[cur];
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(cur, f);
      if (!g) continue;
      // The quad's arc on face f sits at the corner paired with f.
      int a = -1;
      for (int x = 0; x < 4; ++x)
        if (x != f && quad_separating(x, f) == q) a = x;
      int nq = quad_separating(g->perm[a], g->perm[f]);
      if (type[g->tet] < 0) {
        type[g->tet] = nq;
        stack.push_back(g->tet);
      } else if (type[g->tet] != nq) {
        return std::nullopt;
      }
    }
  }
  auto v = NormalSurfaceVector::zero(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (type[i] >= 0) v.coords[i * 7 + 4 + type[i]] = 1;
  return v;
}

/// F1, F2, F3 of T_m: seeded by q01/23, q02/13, q03/12 in Delta_1.
inline std::array<NormalSurfaceVector, 3> quad_surfaces_tm(const MarkedSolidTorus& s) {
  std::array<NormalSurfaceVector, 3> out;
  for (int q = 0; q < 3; ++q) {
    auto v = quad_surface_from_seed(s.tri, 0, q);
    if (!v) throw Error(ErrorCode::InconsistentWeights, "quad propagation failed");
    out[q] = *v;
  }
  return out;
}

/// Framing of the boundary of T_m: lambda is the edge Delta_1(01) and mu is
/// the edge path pushed off the meridian disc's boundary curve, oriented so
/// that mu . lambda = +1 in the induced boundary orientation. With this
/// choice the one-quad surfaces of T_m (m odd) have slopes (m+1)lambda + mu
/// and (m-1)lambda + mu.
inline FramedTorusBoundary framing_tm(const MarkedSolidTorus& s) {
  BoundarySurface bs(s.tri, 0);
  auto curves = bs.curves(meridian_disc(s));
  if (curves.size() != 1) throw Error(ErrorCode::InconsistentWeights, "meridian boundary is not a single curve");
  FramedTorusBoundary f;
  f.component = 0;
  f.edges = bs.edges();
  f.lambda = EdgeChain{{s.longitude_edge, 1}};
  f.mu = curves.front().path;
  // lambda . mu = -(mu's cocycle on lambda).
  Coord d = -curves.front().evaluate(f.lambda);
  if (d != 1 && d != -1) throw Error(ErrorCode::InconsistentWeights, "meridian does not meet the longitude once");
  if (d > 0)
    for (auto& [e, k] : f.mu) k = -k;
  f.lambda_dot_mu = -1;
  return f;
}

// ---------------------------------------------------------------------------
// T_{k,n}
// ---------------------------------------------------------------------------

/// T_k and T_n glued along their boundaries. Tetrahedra 0..k-1 form T_k,
/// tetrahedra k..k+n-1 form T_n.
inline Triangulation t_kn(int k, int n) {
  using namespace families_detail;
  require_odd(k, "k");
  require_odd(n, "n");
  Triangulation t(k + n);
  layer_chain(t, 0, k);
  layer_chain(t, k, n);
  glue(t, 0, "012", k, "120");
  glue(t, k - 1, "013", k, "032");
  glue(t, 0, "023", k + n - 1, "321");
  glue(t, k - 1, "123", k + n - 1, "130");
  return t;
}

/// Edge classes e1..e4 of the gluing interface in t_kn(k, n).
inline std::array<int, 4> interface_edges(const Triangulation& t, int k) {
  Skeleton sk(t);
  return {sk.edge_of(0, 0, 1), sk.edge_of(0, 2, 3), sk.edge_of(k, 0, 1), sk.edge_of(0, 0, 3)};
}

// ---------------------------------------------------------------------------
// Cones and the three-cusped manifold
// ---------------------------------------------------------------------------

/// Cone over the boundary of t: one tetrahedron per boundary triangle, in
/// the order the boundary faces are met. The cone tetrahedron over face f of
/// tetrahedron x uses x's labels, with the apex taking label f, so its face
/// f is the base triangle. Returns the cone and the placement of each base.
struct Cone {
  Triangulation tri;
  std::map<std::pair<int, int>, int> base;  // (tet, face) -> cone tetrahedron
};

inline Cone cone_over_boundary(const Triangulation& t) {
  Skeleton sk(t);
  Cone c;
  for (std::size_t x = 0; x < t.size(); ++x)
    for (int f = 0; f < 4; ++f)
      if (t.is_boundary(static_cast<int>(x), f)) c.base[{static_cast<int>(x), f}] = static_cast<int>(c.base.size());
  c.tri = Triangulation(c.base.size());
  for (auto [key, ct] : c.base) {
    auto [x, f] = key;
    auto fv = face_vertices(f);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        int a = fv[i], b = fv[j], third = 6 - f - a - b;
        auto nb = sk.boundary_neighbour(x, f, a, b);
        int other = c.base.at({nb.tri.tet, nb.tri.face});
        // Face of the cone opposite `third` holds the apex and edge ab.
        std::array<int, 4> img{};
        img[a] = nb.a;
        img[b] = nb.b;
        img[f] = nb.tri.face;
        img[third] = nb.c;
        Perm4 p(img[0], img[1], img[2], img[3]);
        c.tri.join(ct, third, other, p);
      }
  }
  return c;
}

/// Replaces the tetrahedra `tets` of t by the cone over their boundary.
inline Triangulation cone_off(const Triangulation& t, const std::vector<int>& tets) {
  Cone c = cone_over_boundary(families_detail::induced(t, tets));
  return families_detail::replace_subcomplex(t, tets, c.tri, [&](int tet, int face) {
    int local = static_cast<int>(std::find(tets.begin(), tets.end(), tet) - tets.begin());
    return families_detail::Placement{c.base.at({local, face}), Perm4()};
  });
}

/// The eight-tetrahedron triangulation of the three-cusped link complement
/// N, as a literal gluing table.
inline Triangulation link_complement_n() {
  return parse_gluing_table(
      "0  2 (013)  7 (023)  1 (102)  1 (103)\n"
      "1  0 (203)  0 (213)  3 (123)  4 (120)\n"
      "2  6 (130)  0 (012)  3 (021)  3 (031)\n"
      "3  2 (032)  2 (132)  5 (231)  1 (023)\n"
      "4  1 (312)  6 (012)  5 (130)  5 (120)\n"
      "5  4 (312)  4 (302)  7 (123)  3 (302)\n"
      "6  4 (013)  2 (201)  7 (013)  7 (012)\n"
      "7  6 (123)  6 (023)  0 (013)  5 (023)\n");
}

/// Cusp marks of link_complement_n: the cusps obtained by drilling the cores
/// of the two solid tori. Returned as vertex classes (red, blue).
inline std::array<int, 2> link_complement_cusps(const Triangulation& n) {
  // The emphasised gluings of the table run between the two cones; tet 0's
  // vertex 3 and tet 4's vertex 3 are the two cone apexes.
  Skeleton sk(n);
  return {sk.vertex_of(0, 3), sk.vertex_of(4, 3)};
}

/// N built from t_kn by coning off both solid tori.
inline Triangulation link_complement_from_cones(int k, int n) {
  Triangulation t = t_kn(k, n);
  std::vector<int> first(k), second(n);
  std::iota(first.begin(), first.end(), 0);
  std::iota(second.begin(), second.end(), k);
  Triangulation a = cone_off(t, first);
  // After the first cone-off, T_n occupies the first n tetrahedra.
  std::vector<int> again(n);
  std::iota(again.begin(), again.end(), 0);
  return cone_off(a, again);
}

// ---------------------------------------------------------------------------
// T' and its framings
// ---------------------------------------------------------------------------

inline Triangulation t_prime_table() {
  return parse_gluing_table(
      "0   3 (012)   bdry      2 (023)   1 (123)\n"
      "1   5 (012)   3 (230)   4 (023)   0 (123)\n"
      "2   7 (012)   3 (321)   0 (023)   6 (123)\n"
      "3   0 (012)   bdry      1 (301)   2 (310)\n"
      "4   8 (012)   7 (230)   1 (023)   6 (023)\n"
      "5   1 (012)   7 (103)   9 (023)   6 (310)\n"
      "6   10 (012)  5 (321)   4 (123)   2 (123)\n"
      "7   2 (012)   5 (103)   4 (301)   11 (123)\n"
      "8   4 (012)   13 (013)  9 (021)   12 (123)\n"
      "9   8 (032)   10 (230)  5 (023)   13 (210)\n"
      "10  6 (012)   14 (013)  9 (301)   11 (120)\n"
      "11  10 (312)  12 (021)  14 (201)  7 (123)\n"
      "12  11 (031)  16 (013)  15 (023)  8 (123)\n"
      "13  9 (321)   8 (013)   14 (032)  16 (123)\n"
      "14  11 (230)  10 (013)  13 (032)  15 (210)\n"
      "15  14 (321)  bdry      12 (023)  16 (012)\n"
      "16  15 (123)  12 (013)  bdry      13 (123)\n");
}

struct TPrime {
  Triangulation tri;
  std::map<std::string, int> edges;  // "e0", "e2", "e4", "e18", "e19", "e20"
  FramedTorusBoundary d1, d2;
};

namespace families_detail {

/// Coefficients c with c0*e0 + c1*e1 + c2*e2 = 0 in the homology of a
/// one-vertex two-triangle torus, read off one boundary triangle.
inline std::map<int, int> triangle_relation(const Skeleton& sk, const BoundaryComponent& bc) {
  auto [tet, f] = bc.triangles.front();
  auto fv = face_vertices(f);
  std::map<int, int> rel;
  for (int i = 0; i < 3; ++i) {
    int a = fv[i], b = fv[(i + 1) % 3];
    int s = sk.edge_sign(tet, edge_number(a, b));
    rel[sk.edge_of(tet, a, b)] += (a < b) == (s > 0) ? 1 : -1;
  }
  return rel;
}

inline int component_with_edge(const Skeleton& sk, int e) {
  auto bcs = sk.boundary_components();
  for (std::size_t i = 0; i < bcs.size(); ++i)
    if (std::find(bcs[i].edges.begin(), bcs[i].edges.end(), e) != bcs[i].edges.end()) return static_cast<int>(i);
  throw Error(ErrorCode::EdgeNotOnBoundary, "edge " + std::to_string(e));
}

}  // namespace families_detail

/// T' from its gluing table with named edge classes and the framings of
/// both boundary tori.
inline TPrime t_prime() {
  TPrime tp;
  tp.tri = t_prime_table();
  Skeleton sk(tp.tri);
  tp.edges["e0"] = sk.edge_of(0, 0, 1);
  tp.edges["e2"] = sk.edge_of(0, 0, 3);
  tp.edges["e4"] = sk.edge_of(0, 1, 3);
  tp.edges["e18"] = sk.edge_of(16, 0, 3);
  tp.edges["e19"] = sk.edge_of(15, 0, 1);
  tp.edges["e20"] = sk.edge_of(16, 0, 2);
  int e0 = tp.edges["e0"], e2 = tp.edges["e2"], e4 = tp.edges["e4"];
  int e18 = tp.edges["e18"], e19 = tp.edges["e19"], e20 = tp.edges["e20"];
  auto bcs = sk.boundary_components();
  int c1 = families_detail::component_with_edge(sk, e2), c2 = families_detail::component_with_edge(sk, e19);

  // d1: e4 ~ mu^-1, e2 ~ mu lambda, e0 ~ mu^2 lambda. Over (e2, e4):
  // mu = -e4, lambda = s*e2 + e4 where s makes e0 parallel to 2mu + lambda.
  auto r1 = families_detail::triangle_relation(sk, bcs[c1]);
  Coord s1 = -r1.at(e2) * r1.at(e4);
  tp.d1 = framing_from_edge_basis(tp.tri, c1, {e0, e2, e4}, {e2, e4}, {0, -1}, {s1, 1});
  // d2: e18 ~ lambda, e19 ~ mu, e20 ~ mu^-1 lambda. Over (e18, e19):
  // lambda = e18, mu = s*e19 with -mu + lambda parallel to e20.
  auto r2 = families_detail::triangle_relation(sk, bcs[c2]);
  Coord s2 = -r2.at(e18) * r2.at(e19);
  tp.d2 = framing_from_edge_basis(tp.tri, c2, {e18, e19, e20}, {e18, e19}, {0, s2}, {1, 0});
  return tp;
}

// ---------------------------------------------------------------------------
// Layered solid tori and Dehn filling
// ---------------------------------------------------------------------------

struct LayeredSolidTorus {
  Triangulation tri;
  Coord j = 0, k = 0;
  // Boundary edge classes ordered by meridian-disc weight: j, k, j+k.
  std::array<int, 3> boundary_edges{};
  std::array<Coord, 3> weights{};
  std::optional<int> meridional_edge;    // weight 0, LST(0,1) only
  std::optional<int> longitudinal_edge;  // weight 1, LST(1,m) with m >= 2
};

namespace families_detail {

struct LstState {
  Triangulation tri;
  struct Rep {
    int tet, a, b;
    Coord weight;
  };
  std::vector<Rep> reps;  // the three boundary edges
};

inline LstState lst_base() {
  LstState s;
  s.tri = Triangulation(1);
  s.tri.join(0, 3, 0, Perm4(1, 2, 3, 0));
  // Edge classes {01,12,23}, {02,13}, {03}; meridian disc t0 + t3 + q01/23.
  s.reps = {{0, 0, 1, 1}, {0, 0, 2, 2}, {0, 0, 3, 3}};
  return s;
}

/// Layers a new tetrahedron on the boundary edge with the given weight.
inline void layer_on(LstState& s, Coord weight) {
  auto it = std::find_if(s.reps.begin(), s.reps.end(), [&](auto& r) { return r.weight == weight; });
  if (it == s.reps.end()) throw Error(ErrorCode::InvalidParameter, "no boundary edge of weight " + std::to_string(weight));
  Coord other = 0, diff = 0;
  {
    std::vector<Coord> w;
    for (auto& r : s.reps)
      if (&r != &*it) w.push_back(r.weight);
    other = w[0] + w[1];
    diff = w[0] > w[1] ? w[0] - w[1] : w[1] - w[0];
  }
  Coord new_weight = weight == diff ? other : diff;
  Skeleton sk(s.tri);
  int cls = sk.edge_of(it->tet, it->a, it->b);
  auto bc = sk.boundary_components().front();
  struct Side {
    int tet, face, u, v, w;
  };
  std::vector<Side> sides;
  for (auto [tet, f] : bc.triangles) {
    auto fv = face_vertices(f);
    for (int i = 0; i < 3; ++i)
      for (int k = i + 1; k < 3; ++k)
        if (sk.edge_of(tet, fv[i], fv[k]) == cls) {
          int lo = fv[i], hi = fv[k];
          bool fwd = sk.edge_sign(tet, edge_number(lo, hi)) > 0;
          int u = fwd ? lo : hi, v = fwd ? hi : lo;
          sides.push_back({tet, f, u, v, 6 - f - lo - hi});
        }
  }
  if (sides.size() != 2) throw Error(ErrorCode::InvalidParameter, "boundary is not a two-triangle torus");
  for (int order = 0; order < 2; ++order) {
    LstState trial = s;
    int n = trial.tri.add_tetrahedron();
    const Side& A = sides[order];
    const Side& B = sides[1 - order];
    std::array<int, 4> ia{A.u, A.v, A.w, A.face};
    std::array<int, 4> ib{B.u, B.v, B.face, B.w};
    trial.tri.join(n, 3, A.tet, Perm4(ia[0], ia[1], ia[2], ia[3]));
    trial.tri.join(n, 2, B.tet, Perm4(ib[0], ib[1], ib[2], ib[3]));
    try {
      if (!is_orientable(trial.tri)) continue;
    } catch (const Error&) {
      continue;
    }
    trial.reps.erase(trial.reps.begin() + (it - s.reps.begin()));
    trial.reps.push_back({n, 2, 3, new_weight});
    s = std::move(trial);
    return;
  }
  throw Error(ErrorCode::NotOrientable, "layering failed");
}

inline LstState lst_build(Coord j, Coord k) {
  if (j == 1 && k == 2) return lst_base();
  if (j == 1 && k == 1) {
    auto s = lst_base();
    layer_on(s, 3);
    return s;
  }
  if (j == 0 && k == 1) {
    auto s = lst_build(1, 1);
    layer_on(s, 2);
    return s;
  }
  // (j, k, j+k) comes from (min, max of j, k-j) by layering on weight k-j.
  Coord d = k - j;
  auto s = lst_build(std::min(j, d), std::max(j, d));
  layer_on(s, d);
  return s;
}

}  // namespace families_detail

/// The layered solid torus whose meridian disc meets the boundary edges
/// j, k and j+k times. The last tetrahedron layered becomes tetrahedron 0,
/// carrying both boundary faces as faces 0 and 1; when a weight-1 edge
/// exists it is Delta_0(03) = Delta_0(12) where possible.
inline LayeredSolidTorus lst(Coord j, Coord k) {
  if (j < 0 || k < 0) throw Error(ErrorCode::InvalidParameter, "negative LST parameter");
  if (j > k) std::swap(j, k);
  if (std::gcd(j, k) != 1) throw Error(ErrorCode::NotCoprime, "LST parameters must be coprime");
  auto s = families_detail::lst_build(j, k);
  const int n = static_cast<int>(s.tri.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = n - 1 - i;
  std::sort(s.reps.begin(), s.reps.end(), [](auto& a, auto& b) { return a.weight < b.weight; });
  Coord smallest = s.reps.front().weight;

  // Choose the labelling of tetrahedron 0: boundary faces 0 and 1, and the
  // smallest-weight edge on 03 and 12 if some labelling allows it.
  std::vector<Perm4> maps(n);
  std::optional<int> first, marked;
  for (int idx = 0; idx < 24 && !marked; ++idx) {
    maps[n - 1] = Perm4::ordered_s4(idx);
    Triangulation r = s.tri.relabel(order, maps);
    if (!r.is_boundary(0, 0) || !r.is_boundary(0, 1)) continue;
    if (!first) first = idx;
    Skeleton sk(r);
    auto rep = s.reps.front();
    int cls = sk.edge_of(order[rep.tet], maps[rep.tet][rep.a], maps[rep.tet][rep.b]);
    if (sk.edge_of(0, 0, 3) == cls && sk.edge_of(0, 1, 2) == cls) marked = idx;
  }
  if (!first) throw Error(ErrorCode::InvalidParameter, "could not place boundary faces");
  maps[n - 1] = Perm4::ordered_s4(marked ? *marked : *first);
  for (auto& rp : s.reps) {
    int a = maps[rp.tet][rp.a], b = maps[rp.tet][rp.b];
    rp.tet = order[rp.tet];
    rp.a = a;
    rp.b = b;
  }
  LayeredSolidTorus l;
  l.tri = s.tri.relabel(order, maps);
  l.j = j;
  l.k = k;
  Skeleton sk(l.tri);
  for (int i = 0; i < 3; ++i) {
    l.boundary_edges[i] = sk.edge_of(s.reps[i].tet, s.reps[i].a, s.reps[i].b);
    l.weights[i] = s.reps[i].weight;
  }
  if (smallest == 0) l.meridional_edge = l.boundary_edges[0];
  if (smallest == 1 && k >= 2) l.longitudinal_edge = l.boundary_edges[0];
  return l;
}

/// Glues l onto boundary component `component` of t (a one-vertex
/// two-triangle torus) so that each pair (lst edge class, t edge class) in
/// `matching` is identified. The third pair and the face maps are solved
/// for; when both pieces are orientable the result must be orientable.
/// Tetrahedra of l are appended after those of t.
inline Triangulation fill_boundary(const Triangulation& t, int component, const LayeredSolidTorus& l,
                                   const std::array<std::pair<int, int>, 2>& matching) {
  Skeleton st(t), sl(l.tri);
  auto tb = st.boundary_components();
  auto lb = sl.boundary_components();
  if (component < 0 || component >= static_cast<int>(tb.size()))
    throw Error(ErrorCode::IndexOutOfRange, "no boundary component " + std::to_string(component));
  const auto& T = tb[component];
  if (lb.size() != 1 || lb[0].triangles.size() != 2 || T.triangles.size() != 2 || T.vertices != 1 ||
      lb[0].vertices != 1)
    throw Error(ErrorCode::InvalidParameter, "both boundaries must be one-vertex two-triangle tori");
  for (auto [le, te] : matching) {
    if (std::find(lb[0].edges.begin(), lb[0].edges.end(), le) == lb[0].edges.end())
      throw Error(ErrorCode::EdgeNotOnBoundary, "LST edge " + std::to_string(le));
    if (std::find(T.edges.begin(), T.edges.end(), te) == T.edges.end())
      throw Error(ErrorCode::EdgeNotOnBoundary, "edge " + std::to_string(te));
  }
  const bool want_orientable = is_orientable(t) && is_orientable(l.tri);
  std::vector<Perm4> perms3;
  for (int i = 0; i < 24; ++i) {
    Perm4 p = Perm4::ordered_s4(i);
    if (p[3] == 3) perms3.push_back(p);
  }
  auto face_perm = [](int lf, int tf, const Perm4& p) {
    auto lv = face_vertices(lf), tv = face_vertices(tf);
    return Perm4::from_face_map(lv, {tv[p[0]], tv[p[1]], tv[p[2]]});
  };
  for (int s = 0; s < 2; ++s)
    for (const auto& p0 : perms3)
      for (const auto& p1 : perms3) {
        std::array<Perm4, 2> g{face_perm(lb[0].triangles[0].face, T.triangles[s].face, p0),
                               face_perm(lb[0].triangles[1].face, T.triangles[1 - s].face, p1)};
        // Edge classes must map consistently and honour the matching.
        std::map<int, int> emap;
        bool ok = true;
        for (int i = 0; i < 2 && ok; ++i) {
          auto [lt, lf] = lb[0].triangles[i];
          auto [tt, tf] = T.triangles[i == 0 ? s : 1 - s];
          auto fv = face_vertices(lf);
          for (int x = 0; x < 3 && ok; ++x)
            for (int y = x + 1; y < 3 && ok; ++y) {
              int le = sl.edge_of(lt, fv[x], fv[y]);
              int te = st.edge_of(tt, g[i][fv[x]], g[i][fv[y]]);
              auto [it, fresh] = emap.emplace(le, te);
              if (!fresh && it->second != te) ok = false;
            }
        }
        if (!ok) continue;
        for (auto [le, te] : matching)
          if (emap.at(le) != te) ok = false;
        if (!ok) continue;
        Triangulation r = t;
        int off = r.append(l.tri);
        try {
          for (int i = 0; i < 2; ++i) {
            auto [lt, lf] = lb[0].triangles[i];
            auto [tt, tf] = T.triangles[i == 0 ? s : 1 - s];
            r.join(off + lt, lf, tt, g[i]);
          }
          Skeleton check(r);
          if (check.edge_count() + 3 != st.edge_count() + sl.edge_count()) continue;
          if (want_orientable && !is_orientable(r)) continue;
        } catch (const Error&) {
          continue;
        }
        return r;
      }
  throw Error(ErrorCode::NoSimplicialMatching, "edge matching does not extend to the boundary tori");
}

/// T' with LST(1, k-1) filled into the first boundary torus and LST(1, n)
/// into the second. Weight-1 edges land on e2 and e19; the other edges
/// follow the weights (k-1, 1, k) on (e0, e2, e4) and (n+1, 1, n) on
/// (e18, e19, e20).
inline Triangulation t_prime_kn(int k, int n) {
  families_detail::require_odd(k, "k");
  families_detail::require_odd(n, "n");
  TPrime tp = t_prime();
  auto l1 = lst(1, k - 1);
  auto l2 = lst(1, n);
  // LST(1, 2) has weights (1, 2, 3): index 1 is the k-1 edge.
  Triangulation a = fill_boundary(tp.tri, tp.d1.component, l1,
                                  {{{l1.boundary_edges[0], tp.edges["e2"]}, {l1.boundary_edges[1], tp.edges["e0"]}}});
  // Filling does not renumber T' tetrahedra; locate the second torus again.
  Skeleton sk(a);
  int e19 = sk.edge_of(15, 0, 1), e18 = sk.edge_of(16, 0, 3);
  int comp = families_detail::component_with_edge(sk, e19);
  return fill_boundary(a, comp, l2, {{{l2.boundary_edges[0], e19}, {l2.boundary_edges[2], e18}}});
}

// ---------------------------------------------------------------------------
// U_{k,n}
// ---------------------------------------------------------------------------

inline Triangulation u_33_table() {
  return parse_gluing_table(
      "0  3 (012)  1 (102)  2 (023)  1 (123)\n"
      "1  0 (103)  4 (102)  4 (023)  0 (123)\n"
      "2  6 (012)  5 (013)  0 (023)  4 (301)\n"
      "3  0 (012)  4 (231)  6 (132)  5 (032)\n"
      "4  1 (103)  2 (231)  1 (023)  3 (301)\n"
      "5  7 (103)  2 (013)  3 (132)  7 (123)\n"
      "6  2 (012)  7 (320)  7 (201)  3 (032)\n"
      "7  6 (230)  5 (102)  6 (310)  5 (123)\n");
}

namespace families_detail {

// The two copies of T_3 inside the U_{3,3} table, as (Delta_1, Delta_2,
// Delta_3) with the maps from T_3 labels to table labels.
inline constexpr std::array<int, 3> kCopyA{0, 1, 4};
inline constexpr std::array<int, 3> kCopyB{5, 7, 6};
inline const std::array<Perm4, 3>& copy_b_maps() {
  static const std::array<Perm4, 3> m{Perm4(0, 1, 3, 2), Perm4(0, 1, 3, 2), Perm4(3, 2, 0, 1)};
  return m;
}

}  // namespace families_detail

/// The central two tetrahedra of U_{3,3} with T_k and T_n in place of the
/// two copies of T_3. Tetrahedra 0, 1 are central, then T_k, then T_n.
inline Triangulation u_kn(int k, int n) {
  using namespace families_detail;
  require_odd(k, "k");
  require_odd(n, "n");
  Triangulation u = u_33_table();
  Triangulation r(k + n);
  layer_chain(r, 0, k);
  layer_chain(r, k, n);
  std::vector<int> drop{0, 1, 4, 5, 6, 7};
  return replace_subcomplex(u, drop, r, [&](int tet, int) -> Placement {
    if (tet == kCopyA[0]) return {0, Perm4()};
    if (tet == kCopyA[2]) return {k - 1, Perm4()};
    if (tet == kCopyB[0]) return {k, copy_b_maps()[0].inverse()};
    if (tet == kCopyB[2]) return {k + n - 1, copy_b_maps()[2].inverse()};
    throw Error(ErrorCode::InvalidParameter, "interior tetrahedron of a solid torus met the centre");
  });
}

/// U with both solid tori replaced by cusps (ten tetrahedra).
inline Triangulation u_cusped() {
  Triangulation u = u_33_table();
  Triangulation a = cone_off(u, {0, 1, 4});
  // Remaining order: 2, 3, 5, 6, 7, then the cone.
  return cone_off(a, {2, 3, 4});
}

}  // namespace normtri

#endif  // NORMTRI_FAMILIES_HPP
