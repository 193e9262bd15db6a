#ifndef NORMTRI_ENUMERATION_HPP
#define NORMTRI_ENUMERATION_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "homology.hpp"
#include "normal.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

enum class SurfaceFilter { Closed, WithBoundary, All };

inline const char* to_string(SurfaceFilter f) {
  switch (f) {
    case SurfaceFilter::Closed: return "closed";
    case SurfaceFilter::WithBoundary: return "with-boundary";
    case SurfaceFilter::All: return "all";
  }
  return "?";
}

struct EnumerationLimits {
  std::size_t max_tets_vertex = 24;
  std::size_t max_tets_fundamental = 8;
  // Cap on vectors held at once by either algorithm.
  std::size_t budget = 2'000'000;
};

namespace enum_detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

/// Coordinates that may be nonzero under the filter. Closed surfaces avoid
/// every disc type meeting a boundary face.
inline std::vector<bool> allowed_coords(const Triangulation& t, CoordSystem sys, SurfaceFilter f) {
  const int per = coords_per_tet(sys);
  std::vector<bool> ok(t.size() * per, true);
  if (f != SurfaceFilter::Closed) return ok;
  for (std::size_t tet = 0; tet < t.size(); ++tet)
    for (int face = 0; face < 4; ++face) {
      if (t.adjacent(static_cast<int>(tet), face)) continue;
      for (int c = 0; c < per; ++c) {
        // Triangle at the vertex opposite the face misses it; all else meets it.
        bool misses = sys == CoordSystem::Standard && c == face;
        if (!misses) ok[tet * per + c] = false;
      }
    }
  return ok;
}

inline bool compatible(const std::vector<Coord>& v, CoordSystem sys) {
  const int per = coords_per_tet(sys), off = sys == CoordSystem::Standard ? 4 : 0;
  for (std::size_t tet = 0; tet * per < v.size(); ++tet) {
    int nz = 0;
    for (int q = 0; q < 3; ++q) nz += v[tet * per + off + q] != 0;
    if (nz > 1) return false;
  }
  return true;
}

inline void make_primitive(std::vector<Coord>& v) {
  Coord g = 0;
  for (Coord x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (Coord& x : v) x /= g;
}

inline Coord dot(const std::vector<Coord>& row, const std::vector<Coord>& v) {
  Coord s = 0;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] && v[j]) s = normal_detail::checked_add(s, normal_detail::checked_mul(row[j], v[j]));
  return s;
}

inline bool has_boundary(const Triangulation& t, const NormalSurfaceVector& v) {
  for (std::size_t tet = 0; tet < t.size(); ++tet)
    for (int f = 0; f < 4; ++f) {
      if (t.adjacent(static_cast<int>(tet), f)) continue;
      for (int a = 0; a < 4; ++a)
        if (a != f && arc_count(v, static_cast<int>(tet), f, a) > 0) return true;
    }
  return false;
}

inline std::vector<NormalSurfaceVector> finish(const Triangulation& t, CoordSystem sys, SurfaceFilter f,
                                               std::vector<std::vector<Coord>> rays) {
  std::vector<NormalSurfaceVector> out;
  for (auto& r : rays) {
    NormalSurfaceVector v(sys, std::move(r));
    if (v.is_zero()) continue;
    if (!is_admissible(t, v)) throw Error(ErrorCode::InconsistentWeights, "enumeration produced a non-solution");
    if (f == SurfaceFilter::WithBoundary && sys == CoordSystem::Standard && !has_boundary(t, v)) continue;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace enum_detail

/// Extreme rays of the admissible solution cone, as primitive integer
/// vectors in lexicographic order. Double description over the matching
/// equations; combinations carrying two quad types in one tetrahedron are
/// dropped as they appear.
inline std::vector<NormalSurfaceVector> vertex_surfaces(const Triangulation& t, CoordSystem sys = CoordSystem::Standard,
                                                        SurfaceFilter filter = SurfaceFilter::All,
                                                        const EnumerationLimits& lim = {}) {
  using namespace enum_detail;
  if (t.size() > lim.max_tets_vertex)
    throw Error(ErrorCode::LimitExceeded, std::to_string(t.size()) + " tetrahedra exceeds the vertex enumeration limit");
  const std::size_t n = t.size() * coords_per_tet(sys);
  auto ok = allowed_coords(t, sys, filter);
  struct Ray {
    std::vector<Coord> v;
    Bits zero;
  };
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) continue;
    Ray r{std::vector<Coord>(n, 0), Bits(n)};
    r.v[i] = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r.zero.set(j);
    rays.push_back(std::move(r));
  }
  for (const auto& row : matching_rows(t, sys)) {
    std::vector<Coord> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(row, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
      else
        next.push_back(rays[i]);
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t w = 0; w < rays.size() && adjacent; ++w)
          if (w != p && w != q && common.subset_of(rays[w].zero)) adjacent = false;
        if (!adjacent) continue;
        Ray r{std::vector<Coord>(n), Bits(n)};
        for (std::size_t j = 0; j < n; ++j) {
          r.v[j] = normal_detail::checked_add(normal_detail::checked_mul(val[p], rays[q].v[j]),
                                              normal_detail::checked_mul(-val[q], rays[p].v[j]));
          if (r.v[j] == 0) r.zero.set(j);
        }
        if (!compatible(r.v, sys)) continue;
        make_primitive(r.v);
        next.push_back(std::move(r));
        if (next.size() > lim.budget) throw Error(ErrorCode::BudgetExhausted, "vertex enumeration budget exhausted");
      }
    rays = std::move(next);
  }
  std::vector<std::vector<Coord>> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return finish(t, sys, filter, std::move(out));
}

/// Hilbert basis of the admissible solution cone: the admissible surfaces
/// that are not sums of two nonzero admissible surfaces. Equations are added
/// one at a time and each partial basis is completed by sums across the new
/// hyperplane.
inline std::vector<NormalSurfaceVector> fundamental_surfaces(const Triangulation& t,
                                                             CoordSystem sys = CoordSystem::Standard,
                                                             SurfaceFilter filter = SurfaceFilter::All,
                                                             const EnumerationLimits& lim = {}) {
  using namespace enum_detail;
  if (t.size() > lim.max_tets_fundamental)
    throw Error(ErrorCode::LimitExceeded,
                std::to_string(t.size()) + " tetrahedra exceeds the fundamental enumeration limit");
  const std::size_t n = t.size() * coords_per_tet(sys);
  auto ok = allowed_coords(t, sys, filter);
  std::vector<std::vector<Coord>> basis;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) continue;
    basis.emplace_back(n, 0);
    basis.back()[i] = 1;
  }
  auto leq = [](const std::vector<Coord>& a, const std::vector<Coord>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] > b[j]) return false;
    return true;
  };
  struct Item {
    std::vector<Coord> v;
    Coord h;
  };
  for (const auto& row : matching_rows(t, sys)) {
    std::vector<Item> zero, pos, neg;
    for (auto& b : basis) {
      Coord h = dot(row, b);
      (h == 0 ? zero : h > 0 ? pos : neg).push_back({std::move(b), h});
    }
    // y reduces s if y <= s and s - y stays on the same side.
    auto reducible = [&](const std::vector<Coord>& s, Coord hs) {
      for (const auto& y : zero)
        if (leq(y.v, s)) return true;
      if (hs > 0) {
        for (const auto& y : pos)
          if (y.h <= hs && leq(y.v, s)) return true;
      } else if (hs < 0) {
        for (const auto& y : neg)
          if (y.h >= hs && leq(y.v, s)) return true;
      }
      return false;
    };
    std::size_t pos_new = 0, neg_new = 0;
    while (true) {
      std::size_t pos_end = pos.size(), neg_end = neg.size();
      if (pos_new == pos_end && neg_new == neg_end) break;
      std::vector<Item> fresh;
      for (std::size_t i = 0; i < pos_end; ++i)
        for (std::size_t j = (i >= pos_new ? 0 : neg_new); j < neg_end; ++j) {
          std::vector<Coord> s(n);
          for (std::size_t k = 0; k < n; ++k) s[k] = normal_detail::checked_add(pos[i].v[k], neg[j].v[k]);
          if (!compatible(s, sys)) continue;
          fresh.push_back({std::move(s), pos[i].h + neg[j].h});
        }
      std::sort(fresh.begin(), fresh.end(), [](const Item& a, const Item& b) {
        Coord sa = std::accumulate(a.v.begin(), a.v.end(), Coord{0});
        Coord sb = std::accumulate(b.v.begin(), b.v.end(), Coord{0});
        return sa != sb ? sa < sb : a.v < b.v;
      });
      pos_new = pos_end;
      neg_new = neg_end;
      for (auto& s : fresh) {
        if (reducible(s.v, s.h)) continue;
        (s.h == 0 ? zero : s.h > 0 ? pos : neg).push_back(std::move(s));
        if (zero.size() + pos.size() + neg.size() > lim.budget)
          throw Error(ErrorCode::BudgetExhausted, "fundamental enumeration budget exhausted");
      }
    }
    basis.clear();
    std::sort(zero.begin(), zero.end(), [](const Item& a, const Item& b) { return a.v < b.v; });
    for (std::size_t i = 0; i < zero.size(); ++i) {
      bool minimal = i == 0 || zero[i - 1].v != zero[i].v;
      for (std::size_t j = 0; j < zero.size() && minimal; ++j)
        if (zero[j].v != zero[i].v && leq(zero[j].v, zero[i].v)) minimal = false;
      if (minimal) basis.push_back(zero[i].v);
    }
  }
  return finish(t, sys, filter, std::move(basis));
}

/// The admissible vector whose edge weights are the labels of c: per
/// tetrahedron the six labels select nothing, one triangle or one quad.
inline NormalSurfaceVector canonical_z2_representative(const Triangulation& t, const Z2Class& c) {
  Skeleton sk(t);
  if (c.labels.size() != static_cast<std::size_t>(sk.edge_count()))
    throw Error(ErrorCode::InvalidParameter, "class does not match the edge count");
  NormalSurfaceVector v = NormalSurfaceVector::zero(t);
  for (int tet = 0; tet < static_cast<int>(t.size()); ++tet) {
    std::array<int, 6> l{};
    for (int e = 0; e < 6; ++e) l[e] = c.labels[sk.edge_of(tet, e)];
    auto matches = [&](auto crossed) {
      for (int e = 0; e < 6; ++e)
        if (l[e] != crossed(kEdgeVertices[e][0], kEdgeVertices[e][1])) return false;
      return true;
    };
    if (matches([](int, int) { return 0; })) continue;
    bool found = false;
    for (int x = 0; x < 4 && !found; ++x)
      if (matches([x](int a, int b) { return int(a == x || b == x); })) {
        v.tri(tet, x) = 1;
        found = true;
      }
    for (int q = 0; q < 3 && !found; ++q)
      if (matches([q](int a, int b) { return int(normal_detail::on_zero_side(q, a) != normal_detail::on_zero_side(q, b)); })) {
        v.quad(tet, q) = 1;
        found = true;
      }
    if (!found) throw Error(ErrorCode::NoRepresentative, "labels on tetrahedron " + std::to_string(tet) + " fit no disc");
  }
  if (!is_admissible(t, v)) throw Error(ErrorCode::NoRepresentative, "discs do not match across faces");
  return v;
}

// ---------------------------------------------------------------------------
// Surfaces in a layered solid torus. Every normal surface there is fixed by
// its edge weights, and the buried edges are bounded by triangle
// inequalities working down from the boundary, so all surfaces with given
// boundary weights can be listed.
// ---------------------------------------------------------------------------

namespace enum_detail {

/// Disc counts in one tetrahedron from its six edge weights, if they come
/// from triangles and at most one quad type.
inline std::optional<std::array<Coord, 7>> discs_from_weights(std::array<Coord, 6> w) {
  // Opposite edge pairs: q01/23 leaves 01 and 23 uncrossed, and so on.
  std::array<Coord, 3> s{w[0] + w[5], w[1] + w[4], w[2] + w[3]};
  std::array<Coord, 7> d{};
  Coord lo = std::min({s[0], s[1], s[2]});
  int quad = -1;
  int above = 0;
  for (int q = 0; q < 3; ++q) above += s[q] != lo;
  if (above == 1) return std::nullopt;
  if (above == 2) {
    for (int q = 0; q < 3; ++q)
      if (s[q] == lo) quad = q;
    Coord hi = s[(quad + 1) % 3];
    if (s[(quad + 2) % 3] != hi || (hi - lo) % 2) return std::nullopt;
    d[4 + quad] = (hi - lo) / 2;
    for (int e = 0; e < 6; ++e) {
      int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
      if (normal_detail::on_zero_side(quad, a) != normal_detail::on_zero_side(quad, b)) w[e] -= d[4 + quad];
    }
  }
  for (int a = 0; a < 4; ++a) {
    int b = (a + 1) % 4, c = (a + 2) % 4;
    Coord twice = w[edge_number(a, b)] + w[edge_number(a, c)] - w[edge_number(b, c)];
    if (twice < 0 || twice % 2) return std::nullopt;
    d[a] = twice / 2;
  }
  for (int e = 0; e < 6; ++e)
    if (d[kEdgeVertices[e][0]] + d[kEdgeVertices[e][1]] != w[e]) return std::nullopt;
  return d;
}

}  // namespace enum_detail

/// All normal surfaces of t whose weights on the listed edge classes are
/// fixed, provided the other edges are bounded by triangle inequalities
/// from the fixed ones (true for layered solid tori).
inline std::vector<NormalSurfaceVector> surfaces_with_edge_weights(const Triangulation& t,
                                                                   const std::vector<std::pair<int, Coord>>& fixed) {
  Skeleton sk(t);
  const int ne = sk.edge_count();
  std::vector<Coord> w(ne, -1);
  for (auto [e, x] : fixed) w[e] = x;
  std::vector<NormalSurfaceVector> out;
  // Faces as edge-class triples.
  std::vector<std::array<int, 3>> faces;
  for (int tet = 0; tet < static_cast<int>(t.size()); ++tet)
    for (int f = 0; f < 4; ++f) {
      auto v = face_vertices(f);
      faces.push_back({sk.edge_of(tet, v[0], v[1]), sk.edge_of(tet, v[0], v[2]), sk.edge_of(tet, v[1], v[2])});
    }
  auto face_ok = [&](const std::array<int, 3>& f) {
    Coord a = w[f[0]], b = w[f[1]], c = w[f[2]];
    if (a < 0 || b < 0 || c < 0) return true;
    return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b;
  };
  for (const auto& f : faces)
    if (!face_ok(f)) return out;
  std::function<void()> rec = [&] {
    int pick = -1;
    Coord bound = -1;
    for (const auto& f : faces)
      for (int i = 0; i < 3; ++i) {
        int e = f[i], x = f[(i + 1) % 3], y = f[(i + 2) % 3];
        if (w[e] >= 0 || w[x] < 0 || w[y] < 0) continue;
        Coord b = w[x] + w[y];
        if (pick < 0 || b < bound || (e == pick && b < bound)) pick = e, bound = b;
      }
    if (pick < 0) {
      if (std::find(w.begin(), w.end(), Coord{-1}) != w.end())
        throw Error(ErrorCode::InvalidParameter, "edge weights are not bounded by the fixed edges");
      NormalSurfaceVector v = NormalSurfaceVector::zero(t);
      for (int tet = 0; tet < static_cast<int>(t.size()); ++tet) {
        std::array<Coord, 6> tw{};
        for (int e = 0; e < 6; ++e) tw[e] = w[sk.edge_of(tet, e)];
        auto d = enum_detail::discs_from_weights(tw);
        if (!d) return;
        for (int i = 0; i < 7; ++i) v.coords[tet * kStdPerTet + i] = (*d)[i];
      }
      if (is_admissible(t, v)) out.push_back(std::move(v));
      return;
    }
    for (Coord x = 0; x <= bound; ++x) {
      w[pick] = x;
      bool good = true;
      for (const auto& f : faces)
        if (!face_ok(f)) {
          good = false;
          break;
        }
      if (good) rec();
    }
    w[pick] = -1;
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

struct LstCatalogueEntry {
  std::array<Coord, 3> weights{};  // on boundary_edges, in LST weight order
  Coord euler_characteristic = 0;
  bool orientable = true;
  NormalSurfaceVector surface;
};

/// Connected surfaces of maximal χ with the given weights on the three
/// boundary edges of l (ordered as l.boundary_edges), if any exist.
inline std::optional<LstCatalogueEntry> extend_into_lst(const std::array<Coord, 3>& weights, const LayeredSolidTorus& l) {
  std::vector<std::pair<int, Coord>> fixed;
  for (int i = 0; i < 3; ++i) fixed.emplace_back(l.boundary_edges[i], weights[i]);
  std::optional<LstCatalogueEntry> best;
  for (auto& v : surfaces_with_edge_weights(l.tri, fixed)) {
    if (v.is_zero()) continue;
    auto a = analyze_surface(l.tri, v);
    if (a.component_count() != 1) continue;
    if (!best || a.euler_characteristic > best->euler_characteristic)
      best = LstCatalogueEntry{weights, a.euler_characteristic, a.components[0].orientable, v};
  }
  return best;
}

/// Maximal-χ connected surfaces in LST(1,m) for every boundary curve that
/// is connected, essential and crosses the longitudinal edge once. Sorted
/// by decreasing χ.
inline std::vector<LstCatalogueEntry> lst_essential_catalogue(const LayeredSolidTorus& l) {
  if (l.j != 1 || l.k < 2) throw Error(ErrorCode::InvalidParameter, "catalogue needs LST(1,m) with m >= 2");
  const Coord m = l.k;
  std::vector<LstCatalogueEntry> out;
  for (Coord x = 0; x <= m + 1; ++x)
    for (Coord y : {x - 1, x + 1}) {
      if (y < 0 || y > m + 1) continue;
      if (auto e = extend_into_lst({1, x, y}, l)) out.push_back(*e);
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.euler_characteristic != b.euler_characteristic ? a.euler_characteristic > b.euler_characteristic
                                                            : a.weights > b.weights;
  });
  return out;
}

}  // namespace normtri

#endif  // NORMTRI_ENUMERATION_HPP
