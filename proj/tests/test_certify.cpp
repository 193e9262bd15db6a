#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "normtri/certify.hpp"
#include "normtri/curves.hpp"
#include "normtri/json_io.hpp"
#include "normtri/pachner.hpp"

using namespace normtri;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rational> transpose_times(const Matrix& a, const std::vector<Rational>& y) {
  std::vector<Rational> r(a.front().size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += a[i][j] * y[i];
  return r;
}

// Smallest -chi of a connected one-sided surface with a single boundary
// curve in LST(j,k), keyed by the slope (2p, q) of that curve relative to
// the meridian, with q folded into [1, p].
void one_sided_minima(Coord j, Coord k, std::map<std::pair<Coord, Coord>, Coord>& best) {
  auto l = lst(j, k);
  BoundarySurface bs(l.tri, 0);
  std::vector<std::pair<int, Coord>> fixed;
  for (int i = 0; i < 3; ++i) fixed.emplace_back(l.boundary_edges[i], l.weights[i]);
  std::optional<NormalCurve> meridian;
  for (const auto& v : surfaces_with_edge_weights(l.tri, fixed))
    if (euler_characteristic(l.tri, v) == 1) meridian = bs.curves(v).front();
  ASSERT_TRUE(meridian.has_value());
  // A longitude: a e0 + b e1 meeting the meridian once.
  Coord x0 = meridian->evaluate(EdgeChain{{l.boundary_edges[0], 1}});
  Coord x1 = meridian->evaluate(EdgeChain{{l.boundary_edges[1], 1}});
  Coord a = 0, b = 0;
  for (Coord s = -20; s <= 20 && !(a || b); ++s)
    for (Coord t = -20; t <= 20; ++t)
      if (s * x0 + t * x1 == 1) {
        a = s;
        b = t;
        break;
      }
  ASSERT_TRUE(a || b);
  EdgeChain lambda{{l.boundary_edges[0], a}, {l.boundary_edges[1], b}};
  for (const auto& v : fundamental_surfaces(l.tri, CoordSystem::Standard, SurfaceFilter::WithBoundary)) {
    auto an = analyze_surface(l.tri, v);
    if (an.component_count() != 1 || an.components[0].orientable) continue;
    auto curves = bs.curves(v);
    if (curves.size() != 1) continue;
    Coord two_p = curves[0].evaluate(meridian->path);
    Coord q = curves[0].evaluate(lambda);
    two_p = two_p < 0 ? -two_p : two_p;
    if (two_p == 0 || two_p % 2) continue;
    Coord r = ((q % two_p) + two_p) % two_p;
    if (r > two_p / 2) r = two_p - r;
    auto key = std::pair{two_p, r};
    Coord chi = an.euler_characteristic;
    if (!best.count(key) || -chi < best[key]) best[key] = -chi;
  }
}

}  // namespace

TEST(Lp, OptimalWithDual) {
  Matrix a{{1, 2, 1, 0}, {3, 1, 0, 1}};
  std::vector<Rational> b{4, 6}, c{1, 1, 0, 0};
  auto r = lp_maximise(a, b, c);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(dot(c, r.x), r.value);
  EXPECT_EQ(dot(b, r.dual), r.value);
  auto aty = transpose_times(a, r.dual);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_GE(aty[j], c[j]);
}

TEST(Lp, InfeasibleWithFarkasVector) {
  Matrix a{{1, 1}, {1, -1}};
  std::vector<Rational> b{-1, 0}, c{1, 0};
  auto r = lp_maximise(a, b, c);
  ASSERT_EQ(r.status, LpStatus::Infeasible);
  for (const auto& v : transpose_times(a, r.dual)) EXPECT_GE(v, 0);
  EXPECT_LT(dot(b, r.dual), 0);
}

TEST(Lp, Unbounded) {
  Matrix a{{1, -1}};
  auto r = lp_maximise(a, {0}, {1, 0});
  EXPECT_EQ(r.status, LpStatus::Unbounded);
}

TEST(Lp, RedundantRows) {
  Matrix a{{1, 1, 1}, {2, 2, 2}, {1, 0, 0}};
  auto r = lp_maximise(a, {3, 6, 1}, {0, 1, 0});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(r.x, (std::vector<Rational>{1, 2, 0}));
}

TEST(BredonWood, BaseCases) {
  for (Coord p = 1; p <= 20; ++p) EXPECT_EQ(bredon_wood(2 * p, 1), p - 1);
  EXPECT_EQ(bredon_wood(2, 3), 0);
  for (int m = 3; m <= 11; m += 2) EXPECT_EQ(bredon_wood(m + 1, 1), (m - 1) / 2);
}

TEST(BredonWood, InvalidSlopes) {
  for (auto [a, b] : {std::pair<Coord, Coord>{3, 1}, {0, 1}, {4, 2}, {-2, 1}}) {
    try {
      bredon_wood(a, b);
      FAIL() << a << "," << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidSlope);
    }
  }
}

TEST(BredonWood, ShiftAndReflection) {
  for (Coord p = 1; p <= 4; ++p)
    for (Coord q = -2 * p; q <= 2 * p; ++q) {
      if (std::gcd(2 * p, q < 0 ? -q : q) != 1) continue;
      for (Coord s = -2; s <= 2; ++s) EXPECT_EQ(bredon_wood(2 * p, q + 2 * p * s), bredon_wood(2 * p, q));
      EXPECT_EQ(bredon_wood(2 * p, -q), bredon_wood(2 * p, q));
    }
}

TEST(BredonWood, AgreesWithOneSidedSurfacesInLsts) {
  std::map<std::pair<Coord, Coord>, Coord> best;
  for (auto [j, k] : {std::pair<Coord, Coord>{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}, {3, 4}, {3, 5}})
    one_sided_minima(j, k, best);
  for (auto key : {std::pair<Coord, Coord>{2, 1}, {4, 1}, {6, 1}, {8, 3}}) EXPECT_TRUE(best.count(key)) << key.first;
  for (auto [key, chi] : best) EXPECT_EQ(bredon_wood(key.first, key.second), chi) << key.first << "," << key.second;
}

TEST(Angles, LinkComplementAndT33) {
  for (const auto& t : {link_complement_n(), t_kn(3, 3), t_kn(5, 7), u_cusped()}) {
    auto r = angle_structure_report(t);
    ASSERT_TRUE(r.structure.has_value());
    EXPECT_GT(r.max_min_angle, 0);
    EXPECT_TRUE(verify_angle_structure(t, *r.structure));
  }
}

TEST(Angles, PerturbedStructureFails) {
  auto t = link_complement_n();
  auto s = *angle_structure_exists(t);
  s.angles[0][0] += Rational(1, 100);
  s.angles[0][1] -= Rational(1, 100);
  EXPECT_FALSE(verify_angle_structure(t, s));
}

TEST(Angles, DegreeOneEdgeIsInfeasible) {
  // Folding faces 0 and 1 together makes edge 23 an interior edge of degree 1.
  Triangulation t(1);
  t.join(0, 0, 0, Perm4(1, 0, 2, 3));
  Skeleton sk(t);
  bool found = false;
  for (const auto& e : sk.edges()) found = found || (!e.boundary && e.degree() == 1);
  ASSERT_TRUE(found);
  auto r = angle_structure_report(t);
  EXPECT_FALSE(r.structure.has_value());
  EXPECT_FALSE(r.dual.empty());
}

TEST(Tightness, TknVerdicts) {
  auto c = tightness_certificate(t_kn(3, 3));
  EXPECT_TRUE(c.verdict);
  EXPECT_EQ(c.sum_negative_chi, 6);
  for (auto [k, n] : {std::pair{3, 5}, {5, 5}, {7, 3}}) {
    auto d = tightness_certificate(t_kn(k, n));
    EXPECT_TRUE(d.verdict);
    EXPECT_EQ(d.sum_negative_chi, k + n);
  }
}

TEST(Tightness, FailsAfterTwoThreeMove) {
  auto t = t_kn(3, 3);
  auto up = pachner_move(t, MoveKind::TwoThree, move_locations(t, MoveKind::TwoThree).front());
  auto c = tightness_certificate(up);
  EXPECT_FALSE(c.verdict);
  bool some_flag_fails = false;
  for (const auto& ev : c.classes) some_flag_fails = some_flag_fails || !ev.one_quad_per_tet;
  EXPECT_TRUE(some_flag_fails);
}

TEST(Tightness, InvariantUnderRelabelling) {
  std::mt19937 rng(17);
  auto t = t_kn(5, 3);
  for (int i = 0; i < 5; ++i) {
    std::vector<int> tets(t.size());
    std::iota(tets.begin(), tets.end(), 0);
    std::shuffle(tets.begin(), tets.end(), rng);
    std::vector<Perm4> perms;
    for (std::size_t j = 0; j < t.size(); ++j) perms.push_back(Perm4::ordered_s4(static_cast<int>(rng() % 24)));
    EXPECT_TRUE(tightness_certificate(t.relabel(tets, perms)).verdict);
  }
}

TEST(Tightness, Preconditions) {
  auto code = [](const Triangulation& t) {
    try {
      tightness_certificate(t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Overflow;
  };
  EXPECT_EQ(code(link_complement_n()), ErrorCode::WrongVertexStructure);
  EXPECT_EQ(code(lst(1, 3).tri), ErrorCode::WrongVertexStructure);
  // Figure-eight knot complement: H1 = Z, so H2(M; Z2) = 0.
  EXPECT_EQ(code(decode_iso_signature("cPcbbbiht")), ErrorCode::RankTooSmall);
}

TEST(Norms, SmallCases) {
  auto a = norm_report(3, 3);
  EXPECT_EQ((std::array<Coord, 3>{a.norm1, a.norm2, a.norm3}), (std::array<Coord, 3>{2, 2, 2}));
  auto b = norm_report(5, 7);
  EXPECT_EQ((std::array<Coord, 3>{b.norm1, b.norm2, b.norm3}), (std::array<Coord, 3>{3, 4, 5}));
  EXPECT_THROW(norm_report(4, 3), Error);
}

TEST(Norms, ConsistencyAcrossParameters) {
  for (int k = 3; k <= 9; k += 2)
    for (int n = 3; n <= 9; n += 2) {
      auto r = norm_report(k, n);
      EXPECT_LT(r.norm3, r.norm1 + r.norm2);
      EXPECT_TRUE(r.patterns_match);
      EXPECT_EQ(r.canonical_chi3, -r.norm3);
      EXPECT_FALSE(r.assumptions.empty());
      bool class4 = false;
      for (const auto& o : r.alpha3)
        if (o.class_id == 4 && o.k == 0 && o.l == 0) {
          ASSERT_TRUE(o.total_chi.has_value());
          EXPECT_EQ(*o.total_chi, -(n + k - 2) / 2);
          class4 = true;
        }
      EXPECT_TRUE(class4);
    }
}

TEST(Norms, SecondAlphaThirdCandidate) {
  for (int n : {3, 5, 9}) {
    auto r = norm_report(3, n);
    bool seen = false;
    for (const auto& o : r.alpha2)
      if (o.candidate.weights == std::array<Coord, 3>{2, 1, 1}) {
        EXPECT_EQ(o.extension.lst_chi, (3 - n) / 2);
        seen = true;
      }
    EXPECT_TRUE(seen);
  }
}

TEST(CompatTable, Checks) {
  for (const auto& c : compat_table_check()) EXPECT_TRUE(c.pass) << c.id << " " << c.detail;
  const auto& data = default_norm_candidates();
  for (Coord k = 0; k <= 3; ++k)
    for (Coord l = 0; l <= 3; ++l) {
      EXPECT_EQ(data.compat_classes[1].combined[6](k, l), (2 * k + 1) * -2 + (2 * l + 1) * -3);
      EXPECT_EQ(data.compat_classes[6].combined[5](k, l), 2 * k + 8 * l + 1);
    }
  EXPECT_EQ(data.compat_classes[0].combined[0](2, 3), data.compat_classes[0].summands[0].row[0]);
}

TEST(CompatTable, DetectsCorruption) {
  NormCandidates bad = default_norm_candidates();
  bad.compat_classes[2].combined[1].cl += 1;
  auto checks = compat_table_check(bad);
  EXPECT_FALSE(checks[2].pass);
  EXPECT_FALSE(checks[2].detail.empty());
  EXPECT_TRUE(checks[0].pass);
}

TEST(Json, ReportsCarrySchemaVersionAndAreDeterministic) {
  auto a = to_json(norm_report(3, 5)).dump();
  auto b = to_json(norm_report(3, 5)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(Json::parse(a)["schema_version"], kReportSchemaVersion);
  auto c = to_json(tightness_certificate(t_kn(3, 3)));
  EXPECT_EQ(c["verdict"], true);
  EXPECT_EQ(c["classes"].size(), 3u);
  auto inv = invariants_json(t_kn(3, 3));
  EXPECT_EQ(inv["h1"]["text"], "Z + Z_2 + Z_4");
}
