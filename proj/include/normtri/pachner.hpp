#ifndef NORMTRI_PACHNER_HPP
#define NORMTRI_PACHNER_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "error.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

enum class MoveKind { TwoThree, ThreeTwo, FourFour, TwoZero };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::TwoThree: return "2-3";
    case MoveKind::ThreeTwo: return "3-2";
    case MoveKind::FourFour: return "4-4";
    case MoveKind::TwoZero: return "2-0";
  }
  return "?";
}

/// Where a move acts. 2-3: face `face` of tetrahedron `tet`. 3-2, 4-4, 2-0:
/// edge class `edge`. For 4-4, `option` (0 or 1) picks the new axis.
struct MoveLocation {
  int tet = -1;
  int face = -1;
  int edge = -1;
  int option = 0;
};

namespace pachner_detail {

/// An old tetrahedron with a local name for each of its vertices.
struct NamedTet {
  int tet;
  std::array<int, 4> name;
};

inline std::array<int, 3> face_key(const std::array<int, 4>& names, int f) {
  std::array<int, 3> k{};
  int i = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) k[i++] = names[v];
  std::sort(k.begin(), k.end());
  return k;
}

inline int index_of(const std::array<int, 4>& names, int n) {
  for (int v = 0; v < 4; ++v)
    if (names[v] == n) return v;
  return -1;
}

/// Replaces the ball formed by `old` with new tetrahedra given by vertex
/// names. Faces are matched by their name sets: a name set on exactly one
/// new face must be an outer face of the ball, one on two new faces is a
/// new interior face. Untouched tetrahedra keep their order and come first.
inline Triangulation retriangulate(const Triangulation& t, const std::vector<NamedTet>& old,
                                   const std::vector<std::array<int, 4>>& fresh) {
  std::map<int, int> old_index;
  for (std::size_t i = 0; i < old.size(); ++i) {
    if (old_index.count(old[i].tet)) throw Error(ErrorCode::Inapplicable, "tetrahedron repeated in the ball");
    old_index[old[i].tet] = static_cast<int>(i);
  }
  std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> old_faces, new_faces;
  for (std::size_t i = 0; i < old.size(); ++i)
    for (int f = 0; f < 4; ++f) old_faces[face_key(old[i].name, f)].emplace_back(static_cast<int>(i), f);
  for (std::size_t i = 0; i < fresh.size(); ++i)
    for (int f = 0; f < 4; ++f) new_faces[face_key(fresh[i], f)].emplace_back(static_cast<int>(i), f);
  for (auto& [k, v] : new_faces) {
    if (v.size() == 1) {
      auto it = old_faces.find(k);
      if (it == old_faces.end() || it->second.size() != 1) throw Error(ErrorCode::Inapplicable, "ball boundary mismatch");
    } else if (v.size() != 2 || old_faces.count(k)) {
      throw Error(ErrorCode::Inapplicable, "ball interior mismatch");
    }
  }

  std::vector<int> new_index(t.size(), -1);
  int kept = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!old_index.count(static_cast<int>(i))) new_index[i] = kept++;
  Triangulation r(kept + fresh.size());
  auto fresh_tet = [&](int i) { return kept + i; };

  // Where an outer face of the ball now lives: (new tet, face).
  auto new_home = [&](int oi, int f) {
    auto& v = new_faces.at(face_key(old[oi].name, f));
    return v.front();
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (new_index[i] < 0) continue;
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(static_cast<int>(i), f);
      if (!g) continue;
      if (new_index[g->tet] >= 0) {
        r.join(new_index[i], f, new_index[g->tet], g->perm);
        continue;
      }
      int oi = old_index.at(g->tet);
      auto [ni, nf] = new_home(oi, g->perm[f]);
      std::array<int, 4> img{};
      for (int v = 0; v < 4; ++v) img[v] = v == f ? nf : index_of(fresh[ni], old[oi].name[g->perm[v]]);
      r.join(new_index[i], f, fresh_tet(ni), Perm4(img[0], img[1], img[2], img[3]));
    }
  }
  for (auto& [k, v] : new_faces) {
    if (v.size() == 2) {
      auto [a, fa] = v[0];
      auto [b, fb] = v[1];
      std::array<int, 4> img{};
      for (int x = 0; x < 4; ++x) img[x] = x == fa ? fb : index_of(fresh[b], fresh[a][x]);
      r.join(fresh_tet(a), fa, fresh_tet(b), Perm4(img[0], img[1], img[2], img[3]));
      continue;
    }
    auto [ni, nf] = v.front();
    auto [oi, of] = old_faces.at(k).front();
    const auto& g = t.adjacent(old[oi].tet, of);
    if (!g || new_index[g->tet] >= 0) continue;  // boundary, or handled above
    // An outer face glued to another outer face of the same ball.
    int oj = old_index.at(g->tet);
    auto [nj, nf2] = new_home(oj, g->perm[of]);
    std::array<int, 4> img{};
    for (int x = 0; x < 4; ++x) {
      if (x == nf) {
        img[x] = nf2;
        continue;
      }
      int ov = index_of(old[oi].name, fresh[ni][x]);
      img[x] = index_of(fresh[nj], old[oj].name[g->perm[ov]]);
    }
    r.join(fresh_tet(ni), nf, fresh_tet(nj), Perm4(img[0], img[1], img[2], img[3]));
  }
  return r;
}

/// The tetrahedra around an interior edge with local names: the edge ends
/// are 0 and 1, link vertices 2, 3, ... in walking order.
inline std::vector<NamedTet> around_edge(const Triangulation& t, const Skeleton& sk, int edge) {
  const auto& ec = sk.edge(edge);
  if (ec.boundary) throw Error(ErrorCode::Inapplicable, "edge lies on the boundary");
  const int d = ec.degree();
  std::vector<NamedTet> out;
  for (int i = 0; i < d; ++i) {
    const auto& emb = ec.embeddings[i];
    NamedTet nt{emb.tet, {}};
    nt.name[emb.verts[0]] = 0;
    nt.name[emb.verts[1]] = 1;
    nt.name[emb.verts[2]] = 2 + i;
    nt.name[emb.verts[3]] = 2 + (i + 1) % d;
    out.push_back(nt);
  }
  (void)t;
  return out;
}

}  // namespace pachner_detail

inline Triangulation pachner_move(const Triangulation& t, MoveKind kind, const MoveLocation& at) {
  using namespace pachner_detail;
  Triangulation r;
  switch (kind) {
    case MoveKind::TwoThree: {
      const auto& g = t.adjacent(at.tet, at.face);
      if (!g) throw Error(ErrorCode::Inapplicable, "face is on the boundary");
      if (g->tet == at.tet) throw Error(ErrorCode::Inapplicable, "face joins a tetrahedron to itself");
      // Names: apex of the first tetrahedron 0, of the second 1, face 2..4.
      NamedTet a{at.tet, {}}, b{g->tet, {}};
      a.name[at.face] = 0;
      int n = 2;
      for (int v = 0; v < 4; ++v)
        if (v != at.face) a.name[v] = n++;
      for (int v = 0; v < 4; ++v) b.name[g->perm[v]] = a.name[v];
      b.name[g->perm[at.face]] = 1;
      r = retriangulate(t, {a, b}, {{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 2, 4}});
      break;
    }
    case MoveKind::ThreeTwo: {
      Skeleton sk(t);
      if (at.edge < 0 || at.edge >= sk.edge_count()) throw Error(ErrorCode::IndexOutOfRange, "no such edge");
      if (sk.edge(at.edge).degree() != 3) throw Error(ErrorCode::Inapplicable, "edge degree is not 3");
      auto ring = around_edge(t, sk, at.edge);
      r = retriangulate(t, ring, {{0, 2, 3, 4}, {1, 2, 3, 4}});
      break;
    }
    case MoveKind::FourFour: {
      Skeleton sk(t);
      if (at.edge < 0 || at.edge >= sk.edge_count()) throw Error(ErrorCode::IndexOutOfRange, "no such edge");
      if (sk.edge(at.edge).degree() != 4) throw Error(ErrorCode::Inapplicable, "edge degree is not 4");
      auto ring = around_edge(t, sk, at.edge);
      // Link vertices 2, 3, 4, 5; the new axis is 2-4 or 3-5.
      int p = at.option == 0 ? 2 : 3, q = p + 2;
      int s = at.option == 0 ? 3 : 4, u = at.option == 0 ? 5 : 2;
      r = retriangulate(t, ring, {{p, q, 0, s}, {p, q, s, 1}, {p, q, 1, u}, {p, q, u, 0}});
      break;
    }
    case MoveKind::TwoZero: {
      Skeleton sk(t);
      if (at.edge < 0 || at.edge >= sk.edge_count()) throw Error(ErrorCode::IndexOutOfRange, "no such edge");
      const auto& ec = sk.edge(at.edge);
      if (ec.degree() != 2 || ec.boundary) throw Error(ErrorCode::Inapplicable, "edge is not an interior degree-2 edge");
      auto e0 = ec.embeddings[0], e1 = ec.embeddings[1];
      if (e0.tet == e1.tet) throw Error(ErrorCode::Inapplicable, "edge meets one tetrahedron twice");
      {
        // The pillow flattens to a disc only if the edges on its boundary
        // sphere are distinct.
        int p = e0.verts[0], q = e0.verts[1], r0 = e0.verts[2], r1 = e0.verts[3];
        std::set<int> seen;
        for (int x : {sk.edge_of(e0.tet, p, r0), sk.edge_of(e0.tet, p, r1), sk.edge_of(e0.tet, q, r0),
                      sk.edge_of(e0.tet, q, r1), sk.edge_of(e0.tet, r0, r1), sk.edge_of(e1.tet, e1.verts[2], e1.verts[3])})
          if (!seen.insert(x).second) throw Error(ErrorCode::Inapplicable, "pillow edges coincide");
        int vp = sk.vertex_of(e0.tet, p), vq = sk.vertex_of(e0.tet, q);
        auto links = sk.vertex_links();
        bool sp = links[vp].type == LinkType::Sphere, sq = links[vq].type == LinkType::Sphere;
        // The vertex links lose a disc at p and at q and are glued along
        // the new circles: a connected sum, harmless only with a sphere.
        if (vp == vq || (!sp && !sq)) throw Error(ErrorCode::Inapplicable, "flattening would change a vertex link");
      }
      // Flatten each tetrahedron: its faces opposite the two edge ends become
      // one triangle, so their outer partners are glued directly.
      r = t;
      std::vector<std::pair<std::pair<int, int>, std::pair<int, Perm4>>> joins;
      std::set<std::pair<int, int>> outer;
      for (const auto& e : {e0, e1}) {
        int p = e.verts[0], q = e.verts[1];
        const auto& gp = t.adjacent(e.tet, q);  // face opposite q (contains p)
        const auto& gq = t.adjacent(e.tet, p);
        if (!gp || !gq) throw Error(ErrorCode::Inapplicable, "pillow face on the boundary");
        if (gp->tet == e0.tet || gp->tet == e1.tet || gq->tet == e0.tet || gq->tet == e1.tet)
          throw Error(ErrorCode::Inapplicable, "pillow faces glued to each other");
        std::pair<int, int> fp{gp->tet, gp->perm[q]}, fq{gq->tet, gq->perm[p]};
        if (fp == fq || !outer.insert(fp).second || !outer.insert(fq).second)
          throw Error(ErrorCode::Inapplicable, "outer faces coincide");
        Perm4 swap_pq = Perm4::from_face_map({p, q, e.verts[2]}, {q, p, e.verts[2]});
        // From the partner of the p-side face to the partner of the q-side face.
        Perm4 m = gq->perm * swap_pq * gp->perm.inverse();
        joins.push_back({fp, {fq.first, m}});
      }
      for (const auto& e : {e0, e1})
        for (int f = 0; f < 4; ++f) r.unjoin(e.tet, f);
      for (auto& [from, to] : joins) r.join(from.first, from.second, to.first, to.second);
      std::vector<int> keep, tet_map(t.size());
      int k = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (static_cast<int>(i) == e0.tet || static_cast<int>(i) == e1.tet) continue;
        tet_map[i] = k++;
        keep.push_back(static_cast<int>(i));
      }
      Triangulation out(keep.size());
      for (std::size_t i = 0; i < keep.size(); ++i)
        for (int f = 0; f < 4; ++f)
          if (const auto& g = r.adjacent(keep[i], f)) out.join(static_cast<int>(i), f, tet_map[g->tet], g->perm);
      r = std::move(out);
      break;
    }
  }
  try {
    Skeleton check(r);
  } catch (const Error&) {
    throw Error(ErrorCode::Inapplicable, "move would create an invalid edge");
  }
  return r;
}

/// All locations where a move of the given kind can be attempted.
inline std::vector<MoveLocation> move_locations(const Triangulation& t, MoveKind kind) {
  std::vector<MoveLocation> out;
  if (kind == MoveKind::TwoThree) {
    for (std::size_t tet = 0; tet < t.size(); ++tet)
      for (int f = 0; f < 4; ++f) {
        const auto& g = t.adjacent(static_cast<int>(tet), f);
        if (g && (g->tet > static_cast<int>(tet) || (g->tet == static_cast<int>(tet) && g->perm[f] > f)))
          out.push_back({static_cast<int>(tet), f, -1, 0});
      }
    return out;
  }
  Skeleton sk(t);
  int want = kind == MoveKind::ThreeTwo ? 3 : kind == MoveKind::FourFour ? 4 : 2;
  for (int e = 0; e < sk.edge_count(); ++e)
    if (sk.edge(e).degree() == want && !sk.edge(e).boundary) {
      out.push_back({-1, -1, e, 0});
      if (kind == MoveKind::FourFour) out.push_back({-1, -1, e, 1});
    }
  return out;
}

/// Greedy reduction by 3-2 and 2-0 moves, with random 2-3 and 4-4 moves to
/// escape local minima. `budget` bounds the number of random moves.
inline Triangulation simplify(const Triangulation& t, int budget = 200, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  auto reduce = [](Triangulation cur) {
    for (bool progress = true; progress;) {
      progress = false;
      for (MoveKind k : {MoveKind::ThreeTwo, MoveKind::TwoZero}) {
        for (const auto& loc : move_locations(cur, k)) {
          try {
            cur = pachner_move(cur, k, loc);
            progress = true;
            break;
          } catch (const Error&) {
          }
        }
        if (progress) break;
      }
    }
    return cur;
  };
  Triangulation best = reduce(t);
  Triangulation cur = best;
  for (int step = 0; step < budget; ++step) {
    MoveKind k = (rng() % 3 == 0) ? MoveKind::TwoThree : MoveKind::FourFour;
    auto locs = move_locations(cur, k);
    if (locs.empty()) {
      k = MoveKind::TwoThree;
      locs = move_locations(cur, k);
    }
    if (locs.empty()) break;
    try {
      cur = pachner_move(cur, k, locs[rng() % locs.size()]);
    } catch (const Error&) {
      continue;
    }
    cur = reduce(cur);
    if (cur.size() < best.size()) best = cur;
    // Do not wander too far from the best found so far.
    if (cur.size() > best.size() + 2) cur = best;
  }
  return best;
}

}  // namespace normtri

#endif  // NORMTRI_PACHNER_HPP
