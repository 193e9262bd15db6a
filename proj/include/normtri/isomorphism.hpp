#ifndef NORMTRI_ISOMORPHISM_HPP
#define NORMTRI_ISOMORPHISM_HPP

#include <optional>
#include <vector>

#include "triangulation.hpp"

namespace normtri {

/// Tetrahedron i of the source goes to tet_map[i], vertex v to
/// vertex_maps[i][v]: source.relabel(tet_map, vertex_maps) == target.
struct Isomorphism {
  std::vector<int> tet_map;
  std::vector<Perm4> vertex_maps;
};

namespace iso_detail {

/// Extends tet `from` -> (`to`, p) across the component of `from`. Fills
/// the entries of `iso` for that component or returns false.
inline bool extend(const Triangulation& a, const Triangulation& b, int from, int to, Perm4 p, Isomorphism& iso,
                   std::vector<bool>& used) {
  std::vector<int> touched;
  auto fail = [&] {
    for (int x : touched) {
      used[iso.tet_map[x]] = false;
      iso.tet_map[x] = -1;
    }
    return false;
  };
  iso.tet_map[from] = to;
  iso.vertex_maps[from] = p;
  used[to] = true;
  touched.push_back(from);
  for (std::size_t qi = 0; qi < touched.size(); ++qi) {
    int x = touched[qi];
    int y = iso.tet_map[x];
    Perm4 px = iso.vertex_maps[x];
    for (int f = 0; f < 4; ++f) {
      const auto& ga = a.adjacent(x, f);
      const auto& gb = b.adjacent(y, px[f]);
      if (ga.has_value() != gb.has_value()) return fail();
      if (!ga) continue;
      // Vertex v of x sits at ga->perm[v] of the neighbour; its image must
      // be gb->perm[px[v]].
      Perm4 want = gb->perm * px * ga->perm.inverse();
      if (iso.tet_map[ga->tet] >= 0) {
        if (iso.tet_map[ga->tet] != gb->tet || !(iso.vertex_maps[ga->tet] == want)) return fail();
        continue;
      }
      if (used[gb->tet]) return fail();
      iso.tet_map[ga->tet] = gb->tet;
      iso.vertex_maps[ga->tet] = want;
      used[gb->tet] = true;
      touched.push_back(ga->tet);
    }
  }
  return true;
}

}  // namespace iso_detail

/// An isomorphism from a to b, if one exists.
inline std::optional<Isomorphism> is_isomorphic(const Triangulation& a, const Triangulation& b) {
  if (a.size() != b.size() || a.boundary_face_count() != b.boundary_face_count()) return std::nullopt;
  Isomorphism iso;
  iso.tet_map.assign(a.size(), -1);
  iso.vertex_maps.assign(a.size(), Perm4());
  std::vector<bool> used(b.size(), false);
  // A successful extension maps a whole component onto a whole component,
  // so components can be matched greedily.
  for (const auto& comp : a.components()) {
    bool placed = false;
    for (std::size_t to = 0; to < b.size() && !placed; ++to) {
      if (used[to]) continue;
      for (int idx = 0; idx < 24 && !placed; ++idx)
        placed = iso_detail::extend(a, b, comp.front(), static_cast<int>(to), Perm4::ordered_s4(idx), iso, used);
    }
    if (!placed) return std::nullopt;
  }
  return iso;
}

}  // namespace normtri

#endif  // NORMTRI_ISOMORPHISM_HPP
