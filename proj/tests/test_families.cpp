#include <gtest/gtest.h>

#include <set>

#include "dual_h1.hpp"
#include "normtri/curves.hpp"
#include "normtri/families.hpp"
#include "normtri/isomorphism.hpp"
#include "normtri/isosig.hpp"
#include "normtri/normal.hpp"

using namespace normtri;

TEST(SolidTorusTm, ThreeTetrahedra) {
  auto s = solid_torus_tm(3);
  EXPECT_EQ(s.tri.size(), 3u);
  Skeleton sk(s.tri);
  EXPECT_EQ(sk.vertex_count(), 2);
  auto bc = sk.boundary_components();
  ASSERT_EQ(bc.size(), 1u);
  EXPECT_EQ(bc[0].triangles.size(), 4u);
  EXPECT_EQ(bc[0].vertices, 2);
  EXPECT_EQ(bc[0].euler_characteristic, 0);
}

TEST(SolidTorusTm, OneTetrahedronIsUnglued) {
  auto s = solid_torus_tm(1);
  EXPECT_EQ(s.tri.size(), 1u);
  EXPECT_EQ(s.tri.boundary_face_count(), 4u);
  EXPECT_FALSE(s.note.empty());
}

TEST(SolidTorusTm, InteriorEdgesHaveDegreeFour) {
  for (int m : {4, 5, 6}) {
    Skeleton sk(solid_torus_tm(m).tri);
    int interior = 0;
    for (const auto& e : sk.edges())
      if (!e.boundary) {
        ++interior;
        EXPECT_EQ(e.degree(), 4);
      }
    EXPECT_EQ(interior, m - 2);
  }
}

TEST(MeridianDisc, LayerContents) {
  auto d1 = meridian_disc(solid_torus_tm(1));
  EXPECT_EQ(d1.coords, (std::vector<Coord>{0, 0, 0, 0, 0, 0, 1}));

  auto d2 = meridian_disc(solid_torus_tm(2));
  EXPECT_EQ(std::vector<Coord>(d2.coords.begin() + 7, d2.coords.end()), (std::vector<Coord>{1, 0, 0, 1, 0, 0, 0}));

  auto d3 = meridian_disc(solid_torus_tm(3));
  EXPECT_EQ(std::vector<Coord>(d3.coords.begin() + 14, d3.coords.end()), (std::vector<Coord>{0, 1, 0, 1, 1, 0, 0}));
}

TEST(MeridianDisc, IsADisc) {
  for (int m = 1; m <= 6; ++m) {
    auto s = solid_torus_tm(m);
    auto d = meridian_disc(s);
    auto a = analyze_surface(s.tri, d);
    ASSERT_EQ(a.component_count(), 1u) << m;
    EXPECT_FALSE(a.components[0].closed);
    EXPECT_EQ(a.euler_characteristic, 1);
    EXPECT_EQ(euler_characteristic(s.tri, d), 1);
  }
}

TEST(QuadSurfacesTm, BoundarySlopes) {
  for (int m : {2, 3, 4, 5, 7}) {
    auto s = solid_torus_tm(m);
    auto f = framing_tm(s);
    auto q = quad_surfaces_tm(s);
    auto b1 = boundary_slopes(s.tri, q[0], f);
    ASSERT_EQ(b1.essential.size(), 1u) << m;
    EXPECT_EQ(b1.essential[0].first, (SlopePQ{1, 0}));
    EXPECT_EQ(b1.essential[0].second, 2);
    if (m % 2) {
      auto b2 = boundary_slopes(s.tri, q[1], f), b3 = boundary_slopes(s.tri, q[2], f);
      ASSERT_EQ(b2.essential.size(), 1u);
      ASSERT_EQ(b3.essential.size(), 1u);
      EXPECT_EQ(b2.essential[0], (std::pair<SlopePQ, int>{{m + 1, 1}, 1}));
      EXPECT_EQ(b3.essential[0], (std::pair<SlopePQ, int>{{m - 1, 1}, 1}));
    }
  }
}

TEST(Tkn, SignatureAndInterface) {
  EXPECT_EQ(iso_signature(t_kn(3, 3)), "gLLMQbeefffehhqxhqq");
  for (auto [k, n] : {std::pair{3, 3}, {5, 3}, {7, 9}}) {
    auto t = t_kn(k, n);
    auto e = interface_edges(t, k);
    EXPECT_EQ(std::set<int>(e.begin(), e.end()).size(), 4u);
  }
  EXPECT_EQ(homology_h1(t_kn(3, 5)).str(), "Z + Z_2 + Z_4");
  EXPECT_THROW(t_kn(4, 3), Error);
  EXPECT_THROW(t_kn(1, 3), Error);
}

TEST(LinkComplement, Structure) {
  auto n = link_complement_n();
  EXPECT_EQ(n.size(), 8u);
  auto links = vertex_links(n);
  EXPECT_EQ(links.size(), 3u);
  EXPECT_EQ(oracle::dual_h1(n), "Z^3");
  auto cusps = link_complement_cusps(n);
  EXPECT_NE(cusps[0], cusps[1]);
}

TEST(LinkComplement, ConingOffTknGivesN) {
  for (auto [k, n] : {std::pair{3, 3}, {5, 3}}) {
    auto c = link_complement_from_cones(k, n);
    EXPECT_TRUE(is_isomorphic(c, link_complement_n()).has_value()) << k << "," << n;
  }
}

TEST(TPrime, SignatureAndFraming) {
  TPrime tp = t_prime();
  EXPECT_EQ(tp.tri.size(), 17u);
  EXPECT_EQ(iso_signature(tp.tri), "rfLLHMzLPMwQcddghghjnklomqopqrwgrrgfxrvqdabxs");
  // e19 runs along mu2.
  BoundarySurface b2(tp.tri, tp.d2.component);
  EXPECT_EQ(b2.intersection(EdgeChain{{tp.edges["e19"], 1}}, tp.d2.mu), 0);
  EXPECT_NE(b2.intersection(EdgeChain{{tp.edges["e19"], 1}}, tp.d2.lambda), 0);
  // e0 runs along 2 mu1 + lambda1.
  BoundarySurface b1(tp.tri, tp.d1.component);
  EdgeChain two_mu_lambda = tp.d1.lambda;
  for (auto [e, c] : tp.d1.mu) two_mu_lambda[e] += 2 * c;
  EXPECT_EQ(b1.intersection(EdgeChain{{tp.edges["e0"], 1}}, two_mu_lambda), 0);
  EXPECT_NE(b1.intersection(EdgeChain{{tp.edges["e0"], 1}}, tp.d1.mu), 0);
}

TEST(Lst, Sizes) {
  EXPECT_EQ(lst(1, 2).tri.size(), 1u);
  auto l01 = lst(0, 1);
  EXPECT_EQ(l01.tri.size(), 3u);
  ASSERT_TRUE(l01.meridional_edge.has_value());
  EXPECT_EQ(l01.weights[0], 0);
  EXPECT_EQ(lst(1, 4).weights, (std::array<Coord, 3>{1, 4, 5}));
  EXPECT_EQ(lst(2, 5).weights, (std::array<Coord, 3>{2, 5, 7}));
  EXPECT_THROW(lst(2, 4), Error);
}

TEST(Lst, BoundaryIsOneVertexTorus) {
  for (auto [j, k] : {std::pair<Coord, Coord>{1, 2}, {1, 5}, {2, 3}, {3, 7}}) {
    auto l = lst(j, k);
    auto bc = boundary_components(l.tri);
    ASSERT_EQ(bc.size(), 1u);
    EXPECT_EQ(bc[0].triangles.size(), 2u);
    EXPECT_EQ(bc[0].vertices, 1);
    EXPECT_EQ(homology_h1(l.tri).str(), "Z");
  }
}

TEST(FillBoundary, MeridionalEdgeAlongE19) {
  TPrime tp = t_prime();
  auto l = lst(0, 1);
  auto f = fill_boundary(tp.tri, tp.d2.component, l,
                         {{{*l.meridional_edge, tp.edges["e19"]}, {l.boundary_edges[1], tp.edges["e18"]}}});
  EXPECT_EQ(f.size(), 20u);
  EXPECT_EQ(homology_h1(f).str(), "Z^2");
  EXPECT_EQ(oracle::dual_h1(f), "Z^2");
}

TEST(FillBoundary, RejectsForeignEdges) {
  TPrime tp = t_prime();
  auto l = lst(1, 2);
  EXPECT_THROW(fill_boundary(tp.tri, tp.d2.component, l,
                             {{{l.boundary_edges[0], tp.edges["e2"]}, {l.boundary_edges[1], tp.edges["e18"]}}}),
               Error);
}

TEST(FillBoundary, InconsistentMatchingHasNoExtension) {
  TPrime tp = t_prime();
  auto l = lst(1, 2);
  try {
    fill_boundary(tp.tri, tp.d2.component, l,
                  {{{l.boundary_edges[0], tp.edges["e19"]}, {l.boundary_edges[1], tp.edges["e19"]}}});
    FAIL() << "filled with two LST edges on one edge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSimplicialMatching);
  }
}

TEST(TPrimeKn, Homology) {
  EXPECT_EQ(homology_h1(t_prime_kn(3, 3)).str(), "Z + Z_2 + Z_4");
  EXPECT_EQ(homology_h1(t_prime_kn(5, 7)).str(), "Z + Z_2 + Z_6");
  EXPECT_EQ(oracle::dual_h1(t_prime_kn(5, 7)), "Z + Z_2 + Z_6");
}

TEST(Ukn, SignaturesAndHomology) {
  EXPECT_EQ(iso_signature(u_kn(3, 3)), "iLLwQPcbeefgehhhhhqhhqhqx");
  EXPECT_EQ(iso_signature(u_cusped()), "kLLPwLQkceefeijijijiiapuuxptxl");
  EXPECT_EQ(homology_h1(u_kn(3, 3)).str(), "Z + Z_2 + Z_4");
  EXPECT_EQ(u_kn(5, 7).size(), 14u);
}
