#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dual_h1.hpp"
#include "normtri/families.hpp"
#include "normtri/homology.hpp"

using namespace normtri;

namespace {

// Determinantal divisors: d_1 ... d_k = gcd of the k x k minors.
BigInt det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    BigInt d = m[0][c] * det(minor);
    s += c % 2 ? -d : d;
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(r[i], c[j]);
        g = boost::multiprecision::gcd(g, abs(det(sub)));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST(SmithNormalForm, SmallExample) {
  IntMatrix m{{2, 4}, {6, 8}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(s.U * m * s.V, s.D);
}

TEST(SmithNormalForm, ZeroAndIdentity) {
  IntMatrix z(3, 2);
  auto s = smith_normal_form(z);
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_EQ(s.U, IntMatrix::identity(3));
  EXPECT_EQ(s.V, IntMatrix::identity(2));
  auto i = smith_normal_form(IntMatrix::identity(4));
  EXPECT_EQ(i.D, IntMatrix::identity(4));
}

TEST(SmithNormalForm, MatchesDeterminantalDivisors) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng() % 13) - 6;
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(s.diagonal, invariant_factors(m)) << m.str();
  }
}

TEST(Homology, BoundaryOfBoundaryVanishes) {
  for (const auto& t : {t_kn(3, 5), t_prime().tri, link_complement_n(), lst(2, 3).tri}) {
    CellComplex cc(t);
    for (int k = 2; k <= 3; ++k) EXPECT_TRUE((cc.boundary(k - 1) * cc.boundary(k)).is_zero());
  }
}

TEST(Homology, T33) { EXPECT_EQ(homology_h1(t_kn(3, 3)).str(), "Z + Z_2 + Z_4"); }

TEST(Homology, TknDependsOnlyOnK) {
  for (int k : {3, 5, 7})
    for (int n : {3, 5, 7}) {
      auto t = t_kn(k, n);
      AbelianGroup want{1, {2, k + 1}};
      EXPECT_EQ(homology_h1(t), want) << k << "," << n;
      EXPECT_EQ(oracle::dual_h1(t), want.str());
    }
}

TEST(Homology, LinkComplementIsFreeOfRankThree) {
  auto n = link_complement_n();
  EXPECT_EQ(homology_h1(n).str(), "Z^3");
  EXPECT_EQ(oracle::dual_h1(n), "Z^3");
}

TEST(Homology, Z2Coefficients) {
  // Universal coefficients: H1(M; Z2) = H1(M) (x) Z2 for these.
  EXPECT_EQ(homology_h1(t_kn(3, 3), Coefficients::Z2).torsion.size() + homology_h1(t_kn(3, 3), Coefficients::Z2).rank,
            3u);
}

TEST(Homology, SolidTorus) {
  EXPECT_EQ(homology_h1(lst(1, 2).tri).str(), "Z");
  EXPECT_EQ(homology_h1(solid_torus_tm(5).tri).str(), "Z");
}

TEST(H2Z2, RankTwoForFamilies) {
  for (const auto& t : {t_kn(3, 3), t_kn(5, 7), u_kn(3, 3), u_kn(5, 3)}) {
    auto h = h2_z2_basis(t);
    EXPECT_EQ(h.basis.size(), 2u);
    EXPECT_EQ(h.nonzero_classes().size(), 3u);
    for (const auto& c : h.nonzero_classes()) EXPECT_TRUE(satisfies_face_parity(t, c));
  }
}

TEST(H2Z2, SolidTorusHasNone) { EXPECT_TRUE(h2_z2_basis(lst(1, 2).tri).basis.empty()); }

TEST(BoundaryPattern, TPrimeClasses) {
  TPrime tp = t_prime();
  Triangulation f = t_prime_kn(3, 5);
  std::vector<std::vector<int>> groups{{tp.edges["e0"], tp.edges["e2"], tp.edges["e4"]},
                                       {tp.edges["e18"], tp.edges["e19"], tp.edges["e20"]}};
  std::set<std::vector<std::vector<int>>> seen;
  for (const auto& c : h2_z2_basis(f).nonzero_classes()) seen.insert(boundary_pattern(c, f, tp.tri, groups));
  std::set<std::vector<std::vector<int>>> want{
      {{0, 1, 1}, {0, 0, 0}}, {{0, 0, 0}, {0, 1, 1}}, {{0, 1, 1}, {0, 1, 1}}};
  EXPECT_EQ(seen, want);
  Z2Class zero{std::vector<std::uint8_t>(Skeleton(f).edge_count(), 0)};
  EXPECT_EQ(boundary_pattern(zero, f, tp.tri, groups), (std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 0}}));
}
