#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "normtri/enumeration.hpp"
#include "normtri/families.hpp"
#include "normtri/normal.hpp"

using namespace normtri;

namespace {

NormalSurfaceVector vertex_link_vector(const Triangulation& t) {
  auto v = NormalSurfaceVector::zero(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int x = 0; x < 4; ++x) v.coords[7 * i + x] = 1;
  return v;
}

// Weight of f (a surface in the solid torus s) on the edge of t_kn(k, n)
// with class cls, read through a representative inside T_k.
Coord weight_through_tk(const Triangulation& t, int k, int cls, const Triangulation& s, const NormalSurfaceVector& f) {
  Skeleton st(t), ss(s);
  auto w = edge_weights(s, f);
  for (int tet = 0; tet < k; ++tet)
    for (int e = 0; e < 6; ++e)
      if (st.edge_of(tet, e) == cls) return w[ss.edge_of(tet, e)];
  ADD_FAILURE() << "edge class not met by T_k";
  return -1;
}

// Irreducible admissible vectors with every coordinate at most `bound`,
// by exhaustive search.
std::set<std::vector<Coord>> brute_force_hilbert(const Triangulation& t, Coord bound) {
  const std::size_t n = 7 * t.size();
  auto rows = matching_rows(t, CoordSystem::Standard);
  std::vector<std::vector<Coord>> all;
  std::vector<Coord> v(n, 0);
  auto check = [&] {
    NormalSurfaceVector s{CoordSystem::Standard, v};
    if (s.is_zero() || !quads_compatible(s)) return;
    for (const auto& r : rows) {
      Coord d = 0;
      for (std::size_t i = 0; i < n; ++i) d += r[i] * v[i];
      if (d != 0) return;
    }
    all.push_back(v);
  };
  while (true) {
    check();
    std::size_t i = 0;
    while (i < n && ++v[i] > bound) v[i++] = 0;
    if (i == n) break;
  }
  std::set<std::vector<Coord>> in(all.begin(), all.end()), out;
  for (const auto& x : all) {
    bool reducible = false;
    for (const auto& y : all) {
      if (y == x) continue;
      std::vector<Coord> d(n);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = (d[i] = x[i] - y[i]) >= 0;
      if (ok && in.count(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.insert(x);
  }
  return out;
}

}  // namespace

TEST(Matching, Dimensions) {
  Triangulation one(1);
  EXPECT_TRUE(matching_rows(one, CoordSystem::Standard).empty());
  EXPECT_EQ(matching_matrix(t_kn(3, 3), CoordSystem::Standard).cols(), 42u);
  EXPECT_EQ(matching_matrix(t_kn(3, 3), CoordSystem::Quad).cols(), 18u);
}

TEST(Matching, VertexLinkIsInKernel) {
  for (const auto& t : {t_kn(3, 3), link_complement_n(), t_prime().tri}) {
    auto v = vertex_link_vector(t);
    EXPECT_TRUE(satisfies_matching(t, v));
    // Torus links contribute 0, disc links at boundary vertices 1.
    Coord discs = 0;
    for (const auto& l : vertex_links(t)) discs += l.type == LinkType::Disc;
    EXPECT_EQ(euler_characteristic(t, v), discs);
  }
}

TEST(Admissible, Basics) {
  auto t = t_kn(3, 3);
  EXPECT_TRUE(is_admissible(t, NormalSurfaceVector::zero(t)));
  for (const auto& c : h2_z2_basis(t).nonzero_classes()) EXPECT_TRUE(is_admissible(t, canonical_z2_representative(t, c)));
  auto bad = vertex_link_vector(t);
  bad.coords[4] = bad.coords[5] = 1;
  EXPECT_FALSE(quads_compatible(bad));
  EXPECT_FALSE(is_admissible(t, bad));
}

TEST(EdgeWeights, VertexLinkCountsEdgeEnds) {
  auto t = t_kn(3, 3);
  auto w = edge_weights(t, vertex_link_vector(t));
  Skeleton sk(t);
  for (int e = 0; e < sk.edge_count(); ++e) {
    const auto& emb = sk.edge(e).embeddings.front();
    // Every edge has both ends at the single vertex.
    int ends = (sk.vertex_of(emb.tet, emb.verts[0]) == 0) + (sk.vertex_of(emb.tet, emb.verts[1]) == 0);
    EXPECT_EQ(w[e], ends);
  }
}

TEST(EdgeWeights, QuadSurfacesOnInterface) {
  const int k = 3;
  auto t = t_kn(k, 5);
  auto s = solid_torus_tm(k);
  auto q = quad_surfaces_tm(s);
  auto e = interface_edges(t, k);
  std::array<Coord, 4> f1{}, f2{};
  for (int i = 0; i < 4; ++i) {
    f1[i] = weight_through_tk(t, k, e[i], s.tri, q[0]);
    f2[i] = weight_through_tk(t, k, e[i], s.tri, q[1]);
  }
  EXPECT_EQ(f1, (std::array<Coord, 4>{0, 0, 1, 1}));
  EXPECT_EQ(f2, (std::array<Coord, 4>{1, 1, 0, 1}));
}

TEST(HakenSum, Linearity) {
  auto t = t_kn(3, 3);
  auto v = vertex_link_vector(t);
  auto c = canonical_z2_representative(t, h2_z2_basis(t).basis[0]);
  auto two = haken_sum(c, c);
  EXPECT_EQ(euler_characteristic(t, two), 2 * euler_characteristic(t, c));
  auto mix = haken_sum(c, v, 2, 3);
  EXPECT_EQ(euler_characteristic(t, mix), 2 * euler_characteristic(t, c));
  auto wm = edge_weights(t, mix), wc = edge_weights(t, c), wv = edge_weights(t, v);
  for (std::size_t i = 0; i < wm.size(); ++i) EXPECT_EQ(wm[i], 2 * wc[i] + 3 * wv[i]);
  EXPECT_THROW(haken_sum(c, v, 1, 0), Error);
}

TEST(Canonical, ZeroClassIsEmpty) {
  auto t = t_kn(3, 3);
  Z2Class zero{std::vector<std::uint8_t>(Skeleton(t).edge_count(), 0)};
  EXPECT_TRUE(canonical_z2_representative(t, zero).is_zero());
}

TEST(Canonical, TknQuadsPartition) {
  for (auto [k, n] : {std::pair{3, 3}, {5, 3}, {3, 7}}) {
    auto t = t_kn(k, n);
    std::vector<std::array<int, 3>> used(t.size(), {0, 0, 0});
    std::multiset<Coord> chis;
    for (const auto& c : h2_z2_basis(t).nonzero_classes()) {
      auto v = canonical_z2_representative(t, c);
      EXPECT_EQ(labelling_of(edge_weights(t, v)), c);
      chis.insert(euler_characteristic(t, v));
      for (std::size_t i = 0; i < t.size(); ++i)
        for (int q = 0; q < 3; ++q) used[i][q] += static_cast<int>(v.quad(static_cast<int>(i), q));
    }
    for (const auto& u : used) EXPECT_EQ(u, (std::array<int, 3>{1, 1, 1}));
    EXPECT_EQ(chis, (std::multiset<Coord>{-(k + 1) / 2, -(n + 1) / 2, -(k + n - 2) / 2}));
  }
}

TEST(Canonical, UknEulerCharacteristics) {
  for (auto [k, n] : {std::pair{3, 3}, {3, 5}, {5, 7}}) {
    auto t = u_kn(k, n);
    std::multiset<Coord> chis;
    for (const auto& c : h2_z2_basis(t).nonzero_classes())
      chis.insert(euler_characteristic(t, canonical_z2_representative(t, c)));
    EXPECT_EQ(chis, (std::multiset<Coord>{-(n + k) / 2, -(n + k) / 2, -2})) << k << "," << n;
  }
}

TEST(VertexSurfaces, SingleTetrahedron) {
  Triangulation one(1);
  auto v = vertex_surfaces(one);
  EXPECT_EQ(v.size(), 7u);
  for (const auto& s : v) EXPECT_EQ(std::count(s.coords.begin(), s.coords.end(), 1), 1);
}

TEST(VertexSurfaces, LstContainsMeridianDisc) {
  auto l = lst(1, 2);
  bool found = false;
  for (const auto& v : vertex_surfaces(l.tri, CoordSystem::Standard, SurfaceFilter::WithBoundary)) {
    auto w = edge_weights(l.tri, v);
    std::array<Coord, 3> b{w[l.boundary_edges[0]], w[l.boundary_edges[1]], w[l.boundary_edges[2]]};
    if (b == std::array<Coord, 3>{1, 2, 3} && euler_characteristic(l.tri, v) == 1) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(VertexSurfaces, TknContainCanonicalSurfaces) {
  for (auto [k, n] : {std::pair{3, 3}, {3, 5}}) {
    auto t = t_kn(k, n);
    auto vs = vertex_surfaces(t, CoordSystem::Standard, SurfaceFilter::Closed);
    for (const auto& c : h2_z2_basis(t).nonzero_classes())
      EXPECT_NE(std::find(vs.begin(), vs.end(), canonical_z2_representative(t, c)), vs.end());
  }
}

TEST(VertexSurfaces, QuadCoordinatesConvert) {
  auto t = t_kn(3, 3);
  auto qs = vertex_surfaces(t, CoordSystem::Quad, SurfaceFilter::Closed);
  EXPECT_FALSE(qs.empty());
  // Quad solutions of an ideal triangulation may be spun surfaces, which
  // have no standard counterpart; the rest must convert to admissible vectors.
  int converted = 0;
  for (const auto& q : qs) {
    try {
      EXPECT_TRUE(is_admissible(t, standard_from_quad(t, q)));
      ++converted;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InconsistentWeights);
    }
  }
  EXPECT_GE(converted, 1);
  // Closed canonical surfaces survive the round trip through quad space.
  for (const auto& c : h2_z2_basis(t).nonzero_classes()) {
    auto v = canonical_z2_representative(t, c);
    auto back = standard_from_quad(t, quad_projection(v));
    EXPECT_TRUE(is_admissible(t, back));
    EXPECT_EQ(quad_projection(back).coords, quad_projection(v).coords);
    EXPECT_EQ(euler_characteristic(t, back), euler_characteristic(t, v));
  }
}

TEST(VertexSurfaces, LimitIsReported) {
  EnumerationLimits lim;
  lim.max_tets_vertex = 2;
  try {
    vertex_surfaces(t_kn(3, 3), CoordSystem::Standard, SurfaceFilter::All, lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LimitExceeded);
  }
}

TEST(FundamentalSurfaces, MatchBruteForceOnLst12) {
  auto l = lst(1, 2);
  auto fs = fundamental_surfaces(l.tri);
  std::set<std::vector<Coord>> got;
  for (const auto& f : fs) {
    ASSERT_LE(*std::max_element(f.coords.begin(), f.coords.end()), 4);
    got.insert(f.coords);
  }
  EXPECT_EQ(got, brute_force_hilbert(l.tri, 4));
  bool disc = false;
  for (const auto& f : fs) disc = disc || euler_characteristic(l.tri, f) == 1;
  EXPECT_TRUE(disc);
}

TEST(FundamentalSurfaces, EmptyTriangulation) { EXPECT_TRUE(fundamental_surfaces(Triangulation()).empty()); }

TEST(FundamentalSurfaces, VertexSurfacesAreFundamental) {
  auto t = t_kn(3, 5);
  auto fs = fundamental_surfaces(t, CoordSystem::Standard, SurfaceFilter::Closed);
  for (const auto& v : vertex_surfaces(t, CoordSystem::Standard, SurfaceFilter::Closed))
    EXPECT_NE(std::find(fs.begin(), fs.end(), v), fs.end());
}

TEST(AnalyzeSurface, NonOrientableSurfacesOfT33) {
  auto t = t_kn(3, 3);
  std::set<std::string> classes;
  int count = 0;
  for (const auto& v : fundamental_surfaces(t, CoordSystem::Standard, SurfaceFilter::Closed)) {
    auto a = analyze_surface(t, v);
    if (a.component_count() != 1 || a.components[0].orientable) continue;
    ++count;
    EXPECT_EQ(a.euler_characteristic, -2);
    auto c = labelling_of(edge_weights(t, v));
    EXPECT_FALSE(c.is_zero());
    classes.insert(c.str());
  }
  EXPECT_EQ(count, 3);
  EXPECT_EQ(classes.size(), 3u);
}

TEST(AnalyzeSurface, VertexLinks) {
  auto t = t_kn(3, 3);
  auto v = vertex_link_vector(t);
  auto a = analyze_surface(t, v);
  ASSERT_EQ(a.component_count(), 1u);
  EXPECT_TRUE(a.components[0].orientable);
  EXPECT_TRUE(a.components[0].vertex_linking);
  EXPECT_EQ(a.euler_characteristic, 0);
  auto b = analyze_surface(t, haken_sum(v, v));
  EXPECT_EQ(b.component_count(), 2u);
  EXPECT_EQ(b.euler_characteristic, 0);
}

TEST(LstCatalogue, Ladder) {
  auto l3 = lst_essential_catalogue(lst(1, 3));
  auto has = [](const std::vector<LstCatalogueEntry>& c, std::array<Coord, 3> w, Coord chi) {
    return std::any_of(c.begin(), c.end(),
                       [&](const auto& e) { return e.weights == w && e.euler_characteristic == chi; });
  };
  EXPECT_TRUE(has(l3, {1, 3, 4}, 1));
  EXPECT_TRUE(has(l3, {1, 1, 2}, 0));
  EXPECT_TRUE(has(l3, {1, 1, 0}, -1));
  EXPECT_EQ(l3.back().euler_characteristic, -1);
  auto l4 = lst_essential_catalogue(lst(1, 4));
  EXPECT_TRUE(has(l4, {1, 0, 1}, -1));
  EXPECT_EQ(l4.back().euler_characteristic, -1);
  for (Coord m = 2; m <= 7; ++m) {
    auto l = lst(1, m);
    for (const auto& e : lst_essential_catalogue(l)) {
      EXPECT_EQ(e.weights[0], 1);
      EXPECT_EQ(edge_weights(l.tri, e.surface)[*l.longitudinal_edge], 1);
    }
  }
}
