#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dual_h1.hpp"
#include "normtri/families.hpp"
#include "normtri/isomorphism.hpp"
#include "normtri/isosig.hpp"
#include "normtri/pachner.hpp"
#include "normtri/skeleton.hpp"
#include "normtri/triangulation.hpp"

using namespace normtri;

namespace {

Triangulation random_relabel(const Triangulation& t, std::mt19937& rng, std::vector<int>* tets_out = nullptr,
                             std::vector<Perm4>* perms_out = nullptr) {
  std::vector<int> tets(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) tets[i] = static_cast<int>(i);
  std::shuffle(tets.begin(), tets.end(), rng);
  std::vector<Perm4> perms;
  for (std::size_t i = 0; i < t.size(); ++i) perms.push_back(Perm4::ordered_s4(static_cast<int>(rng() % 24)));
  if (tets_out) *tets_out = tets;
  if (perms_out) *perms_out = perms;
  return t.relabel(tets, perms);
}

// Orientability by two-colouring tetrahedra: a gluing is consistent when
// the colours differ exactly for even gluing permutations.
bool orientable_by_colouring(const Triangulation& t) {
  std::vector<int> col(t.size(), 0);
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (col[s]) continue;
    col[s] = 1;
    std::vector<int> stack{static_cast<int>(s)};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = t.adjacent(x, f);
        if (!g) continue;
        int want = g->perm.sign() > 0 ? -col[x] : col[x];
        if (!col[g->tet]) {
          col[g->tet] = want;
          stack.push_back(g->tet);
        } else if (col[g->tet] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST(Triangulation, BuildsLinkComplementFromRows) {
  Triangulation n = link_complement_n();
  std::vector<GluingRow> rows;
  for (int tet = 0; tet < 8; ++tet)
    for (int f = 0; f < 4; ++f) {
      const auto& g = n.adjacent(tet, f);
      rows.push_back({tet, f, g->tet, g->perm});
    }
  Triangulation t = build_triangulation(8, rows);
  EXPECT_EQ(t.size(), 8u);
  EXPECT_EQ(t.boundary_face_count(), 0u);
  EXPECT_EQ(iso_signature(t), iso_signature(n));
}

TEST(Triangulation, EmptyRowsLeaveBoundary) {
  Triangulation t = build_triangulation(1, std::vector<GluingRow>{});
  EXPECT_EQ(t.boundary_face_count(), 4u);
}

TEST(Triangulation, ConflictingRowsAreRejected) {
  std::vector<GluingRow> rows{{0, 0, 1, Perm4()}, {0, 0, 1, Perm4(1, 0, 2, 3)}};
  EXPECT_THROW(
      {
        try {
          build_triangulation(2, rows);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::NonInvolutiveGluing);
          throw;
        }
      },
      Error);
}

TEST(Triangulation, FaceToItselfIdentically) {
  Triangulation t(1);
  EXPECT_THROW(t.join(0, 2, 0, Perm4()), Error);
}

TEST(Triangulation, GluingTableRoundTrip) {
  for (const auto& t : {t_kn(3, 5), t_prime().tri, solid_torus_tm(3).tri}) {
    Triangulation back = parse_gluing_table(to_gluing_table(t));
    EXPECT_TRUE(is_isomorphic(t, back).has_value());
  }
  EXPECT_THROW(parse_gluing_table("0 1 (012)\n"), Error);
}

TEST(Skeleton, T33CountsMatchEuler) {
  Skeleton sk(t_kn(3, 3));
  // Coning the torus cusp gives chi = 1, so 1 - E + 12 - 6 = 1 and E = T.
  EXPECT_EQ(sk.vertex_count(), 1);
  EXPECT_EQ(sk.edge_count(), 6);
  EXPECT_EQ(sk.face_count(), 12);
}

TEST(Skeleton, SingleTetrahedron) {
  Triangulation t(1);
  Skeleton sk(t);
  EXPECT_EQ(sk.edge_count(), 6);
  EXPECT_EQ(sk.vertex_count(), 4);
  EXPECT_EQ(t.boundary_face_count(), 4u);
  for (const auto& l : sk.vertex_links()) EXPECT_EQ(l.type, LinkType::Disc);
}

TEST(Skeleton, EdgeDegreesSumToSixPerTetrahedron) {
  for (const auto& t : {t_kn(5, 3), link_complement_n(), t_prime().tri}) {
    int sum = 0;
    for (int d : Skeleton(t).edge_degrees()) sum += d;
    EXPECT_EQ(sum, 6 * static_cast<int>(t.size()));
  }
}

TEST(VertexLinks, TknHasOneTorus) {
  for (int k : {3, 5})
    for (int n : {3, 7}) {
      auto links = vertex_links(t_kn(k, n));
      ASSERT_EQ(links.size(), 1u);
      EXPECT_EQ(links[0].type, LinkType::Torus);
    }
}

TEST(VertexLinks, LinkComplementHasThreeTori) {
  auto links = vertex_links(link_complement_n());
  ASSERT_EQ(links.size(), 3u);
  for (const auto& l : links) EXPECT_EQ(l.type, LinkType::Torus);
}

TEST(BoundaryComponents, TPrimeHasTwoOneVertexTori) {
  auto bc = boundary_components(t_prime().tri);
  ASSERT_EQ(bc.size(), 2u);
  for (const auto& c : bc) {
    EXPECT_EQ(c.triangles.size(), 2u);
    EXPECT_EQ(c.vertices, 1);
    EXPECT_EQ(c.euler_characteristic, 0);
  }
  EXPECT_TRUE(boundary_components(t_kn(3, 3)).empty());
}

TEST(Orientation, FamiliesAreOrientable) {
  for (const auto& t : {link_complement_n(), t_kn(3, 3), t_kn(7, 5), u_kn(3, 3), t_prime().tri}) {
    EXPECT_TRUE(is_orientable(t));
    EXPECT_TRUE(orientable_by_colouring(t));
    Triangulation o = oriented_copy(t);
    for (std::size_t x = 0; x < o.size(); ++x)
      for (int f = 0; f < 4; ++f)
        if (const auto& g = o.adjacent(static_cast<int>(x), f)) EXPECT_EQ(g->perm.sign(), -1);
  }
}

TEST(Orientation, EvenSelfGluingIsNotOrientable) {
  Triangulation t(1);
  // Face 012 onto face 013 by an even permutation.
  t.join(0, 3, 0, Perm4(1, 0, 3, 2));
  EXPECT_FALSE(orientable_by_colouring(t));
  EXPECT_FALSE(is_orientable(t));
  EXPECT_THROW(orient(t), Error);
}

TEST(Pachner, TwoThreeThenThreeTwoIsIdentity) {
  Triangulation t = t_kn(3, 3);
  Triangulation up = pachner_move(t, MoveKind::TwoThree, move_locations(t, MoveKind::TwoThree).front());
  ASSERT_EQ(up.size(), 7u);
  EXPECT_EQ(homology_h1(up), homology_h1(t));
  bool back = false;
  for (const auto& loc : move_locations(up, MoveKind::ThreeTwo)) {
    try {
      if (is_isomorphic(pachner_move(up, MoveKind::ThreeTwo, loc), t)) back = true;
    } catch (const Error&) {
    }
  }
  EXPECT_TRUE(back);
}

TEST(Pachner, ThreeTwoOnDegreeFourEdgeIsInapplicable) {
  auto s = solid_torus_tm(5);
  Skeleton sk(s.tri);
  int e = -1;
  for (int i = 0; i < sk.edge_count(); ++i)
    if (!sk.edge(i).boundary && sk.edge(i).degree() == 4) e = i;
  ASSERT_GE(e, 0);
  MoveLocation at;
  at.edge = e;
  try {
    pachner_move(s.tri, MoveKind::ThreeTwo, at);
    FAIL() << "move applied";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Inapplicable);
  }
}

TEST(Pachner, RandomMovesPreserveH1AgainstDualComplex) {
  std::mt19937 rng(7);
  for (auto t : {t_kn(3, 5), link_complement_n(), t_prime().tri}) {
    const std::string h = oracle::dual_h1(t);
    for (int step = 0; step < 15; ++step) {
      auto kind = static_cast<MoveKind>(rng() % 4);
      auto locs = move_locations(t, kind);
      if (locs.empty()) continue;
      try {
        t = pachner_move(t, kind, locs[rng() % locs.size()]);
      } catch (const Error&) {
        continue;
      }
      ASSERT_EQ(oracle::dual_h1(t), h) << to_string(kind);
      ASSERT_EQ(homology_h1(t).str(), h);
    }
  }
}

TEST(Simplify, UndoesATwoThreeMove) {
  Triangulation t = t_kn(3, 3);
  Triangulation up = pachner_move(t, MoveKind::TwoThree, move_locations(t, MoveKind::TwoThree).front());
  Triangulation s = simplify(up);
  EXPECT_EQ(s.size(), 6u);
  EXPECT_TRUE(is_isomorphic(s, t).has_value());
}

TEST(Simplify, OneTetrahedronUnchanged) {
  Triangulation t = lst(1, 2).tri;
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(iso_signature(simplify(t)), iso_signature(t));
}

TEST(Simplify, FilledTPrimeKeepsHomology) {
  Triangulation s = simplify(t_prime_kn(3, 3));
  EXPECT_LE(s.size(), t_prime_kn(3, 3).size());
  EXPECT_EQ(homology_h1(s).str(), "Z + Z_2 + Z_4");
}

TEST(IsoSig, KnownSignatures) {
  EXPECT_EQ(iso_signature(t_kn(3, 3)), "gLLMQbeefffehhqxhqq");
  EXPECT_EQ(iso_signature(t_prime().tri), "rfLLHMzLPMwQcddghghjnklomqopqrwgrrgfxrvqdabxs");
}

TEST(IsoSig, DecodeRoundTrip) {
  std::mt19937 rng(3);
  for (const auto& t : {t_kn(3, 3), t_kn(5, 3), u_kn(3, 5), lst(2, 5).tri, solid_torus_tm(4).tri}) {
    std::string sig = iso_signature(t);
    Triangulation d = decode_iso_signature(sig);
    EXPECT_TRUE(is_isomorphic(d, t).has_value());
    EXPECT_EQ(iso_signature(d), sig);
    EXPECT_EQ(iso_signature(random_relabel(t, rng)), sig);
  }
  EXPECT_THROW(decode_iso_signature("not-a-signature!"), Error);
}

TEST(Isomorphism, UknSymmetry) { EXPECT_TRUE(is_isomorphic(u_kn(3, 5), u_kn(5, 3)).has_value()); }

TEST(Isomorphism, DifferentSizes) { EXPECT_FALSE(is_isomorphic(t_kn(3, 3), t_kn(3, 5)).has_value()); }

TEST(Isomorphism, WitnessInvertsRelabelling) {
  std::mt19937 rng(11);
  Triangulation t = t_prime().tri;
  std::vector<int> tets;
  std::vector<Perm4> perms;
  Triangulation r = random_relabel(t, rng, &tets, &perms);
  auto iso = is_isomorphic(r, t);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(r.relabel(iso->tet_map, iso->vertex_maps).size(), t.size());
  EXPECT_EQ(to_gluing_table(r.relabel(iso->tet_map, iso->vertex_maps)), to_gluing_table(t));
}
