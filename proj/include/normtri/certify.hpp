#ifndef NORMTRI_CERTIFY_HPP
#define NORMTRI_CERTIFY_HPP

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "error.hpp"
#include "families.hpp"
#include "homology.hpp"
#include "isosig.hpp"
#include "lp.hpp"
#include "normal.hpp"
#include "skeleton.hpp"

namespace normtri {

inline constexpr int kReportSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Bredon-Wood numbers
// ---------------------------------------------------------------------------

struct BredonWoodStep {
  Coord two_p, q;
};

/// The (2p, q) pairs visited by the recursion, each with q reduced to
/// 0 < q < p (or q = 1), ending at a q = 1 pair.
inline std::vector<BredonWoodStep> bredon_wood_path(Coord two_p, Coord q) {
  if (two_p < 2 || two_p % 2) throw Error(ErrorCode::InvalidSlope, "2p must be a positive even integer");
  if (std::gcd(two_p, q < 0 ? -q : q) != 1) throw Error(ErrorCode::InvalidSlope, "2p and q are not coprime");
  std::vector<BredonWoodStep> path;
  while (true) {
    const Coord p = two_p / 2;
    // Twisting along the meridian disc shifts q by 2p, reflection flips it.
    Coord r = ((q % two_p) + two_p) % two_p;
    if (r > p) r = two_p - r;
    path.push_back({two_p, r});
    if (r == 1) return path;
    Coord Q = 1;
    while ((Q * r) % two_p != 1 && (Q * r) % two_p != two_p - 1) ++Q;
    if (p - Q < 1) throw Error(ErrorCode::InvalidSlope, "unresolved by recursion at (" + std::to_string(two_p) + "," +
                                                            std::to_string(r) + ")");
    Coord m = (Q * r + 1) / two_p;  // Q r = 2p m +- 1
    two_p = 2 * (p - Q);
    q = r - 2 * m;
  }
}

/// Minimal negative Euler characteristic of a one-sided incompressible
/// surface in a solid torus bounded by 2p lambda + q mu.
inline Coord bredon_wood(Coord two_p, Coord q) {
  auto path = bredon_wood_path(two_p, q);
  return static_cast<Coord>(path.size() - 1) + path.back().two_p / 2 - 1;
}

// ---------------------------------------------------------------------------
// Angle structures
// ---------------------------------------------------------------------------

/// Per tetrahedron, angles (as multiples of pi) on the edge pairs 01/23,
/// 02/13 and 03/12.
struct AngleStructure {
  std::vector<std::array<Rational, 3>> angles;
};

struct AngleReport {
  std::optional<AngleStructure> structure;
  LpStatus lp_status = LpStatus::Infeasible;
  Rational max_min_angle = 0;
  std::vector<Rational> dual;  // certificate for the reported bound
};

namespace certify_detail {

inline int edge_pair(int e) {
  int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
  return a == 0 ? b - 1 : 5 - a - b;
}

/// Interior edge classes with the (tet, pair) of every incidence.
inline std::vector<std::vector<std::pair<int, int>>> interior_edge_incidences(const Triangulation& t) {
  Skeleton sk(t);
  std::vector<std::vector<std::pair<int, int>>> out;
  for (int e = 0; e < sk.edge_count(); ++e) {
    if (sk.edge(e).boundary) continue;
    std::vector<std::pair<int, int>> inc;
    for (const auto& emb : sk.edge(e).embeddings)
      inc.emplace_back(emb.tet, edge_pair(edge_number(emb.verts[0], emb.verts[1])));
    out.push_back(std::move(inc));
  }
  return out;
}

}  // namespace certify_detail

/// Whether `a` is a strict angle structure: positive angles, sum 1 per
/// tetrahedron and 2 around each interior edge (in units of pi).
inline bool verify_angle_structure(const Triangulation& t, const AngleStructure& a) {
  if (a.angles.size() != t.size()) return false;
  for (const auto& tet : a.angles) {
    if (tet[0] <= 0 || tet[1] <= 0 || tet[2] <= 0) return false;
    if (tet[0] + tet[1] + tet[2] != 1) return false;
  }
  for (const auto& inc : certify_detail::interior_edge_incidences(t)) {
    Rational s = 0;
    for (auto [tet, p] : inc) s += a.angles[tet][p];
    if (s != 2) return false;
  }
  return true;
}

/// Maximises the smallest angle over the closed angle polytope. A strict
/// structure exists iff the optimum is positive; the optimal vertex is
/// returned in that case. Boundary edges carry no equation.
inline AngleReport angle_structure_report(const Triangulation& t) {
  const std::size_t n = t.size();
  // Variables: slack s = angle - eps for each (tet, pair), then eps.
  const std::size_t nv = 3 * n + 1, eps = 3 * n;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (std::size_t tet = 0; tet < n; ++tet) {
    std::vector<Rational> row(nv, 0);
    for (int p = 0; p < 3; ++p) row[3 * tet + p] = 1;
    row[eps] = 3;
    a.push_back(std::move(row));
    b.push_back(1);
  }
  for (const auto& inc : certify_detail::interior_edge_incidences(t)) {
    std::vector<Rational> row(nv, 0);
    for (auto [tet, p] : inc) row[3 * tet + p] += 1;
    row[eps] = static_cast<long long>(inc.size());
    a.push_back(std::move(row));
    b.push_back(2);
  }
  std::vector<Rational> c(nv, 0);
  c[eps] = 1;
  auto res = lp_maximise(a, b, c);
  AngleReport rep;
  rep.lp_status = res.status;
  rep.dual = res.dual;
  if (res.status != LpStatus::Optimal) return rep;
  rep.max_min_angle = res.value;
  if (res.value > 0) {
    AngleStructure s;
    for (std::size_t tet = 0; tet < n; ++tet)
      s.angles.push_back({res.x[3 * tet] + res.value, res.x[3 * tet + 1] + res.value, res.x[3 * tet + 2] + res.value});
    if (!verify_angle_structure(t, s)) throw Error(ErrorCode::InconsistentWeights, "LP returned a non-solution");
    rep.structure = std::move(s);
  }
  return rep;
}

inline std::optional<AngleStructure> angle_structure_exists(const Triangulation& t) {
  return angle_structure_report(t).structure;
}

// ---------------------------------------------------------------------------
// Tightness certificates
// ---------------------------------------------------------------------------

struct ClassEvidence {
  Z2Class labels;
  std::optional<NormalSurfaceVector> surface;  // absent if no canonical representative
  bool one_quad_per_tet = false;
  Coord euler_characteristic = 0;
};

struct TightnessCertificate {
  std::string isosig;
  std::size_t tetrahedra = 0;
  std::size_t h2_rank = 0;
  std::vector<ClassEvidence> classes;  // a, b, a + b
  Coord sum_negative_chi = 0;
  bool quads_partition = false;
  bool verdict = false;
  std::string note =
      "Checks the combinatorial lower-bound conditions only; tautness of the representatives is not certified.";
};

namespace certify_detail {

inline TightnessCertificate certificate_for(const Triangulation& t, const Z2Class& a, const Z2Class& b) {
  TightnessCertificate c;
  c.tetrahedra = t.size();
  bool all_flags = true;
  std::vector<std::array<int, 3>> used(t.size(), {0, 0, 0});
  for (const Z2Class& z : {a, b, a + b}) {
    ClassEvidence ev;
    ev.labels = z;
    try {
      auto v = canonical_z2_representative(t, z);
      ev.one_quad_per_tet = true;
      for (std::size_t tet = 0; tet < t.size(); ++tet) {
        int quads = 0;
        for (int q = 0; q < 3; ++q)
          if (v.quad(static_cast<int>(tet), q)) {
            ++quads;
            ++used[tet][q];
          }
        for (int x = 0; x < 4; ++x)
          if (v.tri(static_cast<int>(tet), x)) ev.one_quad_per_tet = false;
        if (quads != 1) ev.one_quad_per_tet = false;
      }
      ev.euler_characteristic = euler_characteristic(t, v);
      ev.surface = std::move(v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoRepresentative) throw;
    }
    all_flags = all_flags && ev.one_quad_per_tet;
    c.sum_negative_chi -= ev.euler_characteristic;
    c.classes.push_back(std::move(ev));
  }
  c.quads_partition = true;
  for (const auto& u : used)
    if (u[0] != 1 || u[1] != 1 || u[2] != 1) c.quads_partition = false;
  c.verdict = all_flags && c.quads_partition && c.sum_negative_chi == static_cast<Coord>(t.size());
  return c;
}

}  // namespace certify_detail

/// Canonical representatives of the three nonzero classes of a rank-2
/// subgroup of H2(M; Z2), checked for one quad per tetrahedron, a partition
/// of the quad types and sum(-chi) = #tetrahedra. When H2 has rank above 2
/// the first subgroup with a true verdict is reported, else the first one.
inline TightnessCertificate tightness_certificate(const Triangulation& t) {
  Skeleton sk(t);
  if (!is_orientable(t)) throw Error(ErrorCode::WrongVertexStructure, "triangulation is not orientable");
  if (t.boundary_face_count() != 0 || sk.vertex_count() != 1)
    throw Error(ErrorCode::WrongVertexStructure, "expected one ideal vertex and no boundary faces");
  auto links = sk.vertex_links();
  if (links[0].type != LinkType::Torus) throw Error(ErrorCode::WrongVertexStructure, "vertex link is not a torus");
  auto h2 = h2_z2_basis(t);
  if (h2.basis.size() < 2) throw Error(ErrorCode::RankTooSmall, "H2(M; Z2) has rank " + std::to_string(h2.basis.size()));
  auto all = h2.nonzero_classes();
  std::optional<TightnessCertificate> first;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      auto c = certify_detail::certificate_for(t, all[i], all[j]);
      c.isosig = iso_signature(t);
      c.h2_rank = h2.basis.size();
      if (c.verdict) return c;
      if (!first) first = std::move(c);
      if (h2.basis.size() == 2) return *first;
    }
  return *first;
}

// ---------------------------------------------------------------------------
// Norm report
// ---------------------------------------------------------------------------

/// a + b k + c l.
struct Affine {
  Coord c0 = 0, ck = 0, cl = 0;
  Coord operator()(Coord k, Coord l) const { return c0 + ck * k + cl * l; }
};

/// Weights on (e0, e2, e4, e18, e19, e20) followed by chi.
using BoundaryRow = std::array<Coord, 7>;

struct CompatSummand {
  BoundaryRow row;
  Affine weight;
};

struct CompatClass {
  int id = 0;
  std::vector<CompatSummand> summands;
  std::array<Affine, 7> combined;
};

struct BoundaryCandidate {
  std::array<Coord, 3> weights;  // on (e0, e2, e4) or (e18, e19, e20)
  Coord chi;
};

/// Surfaces in T' considered by the norm computation. These are input data,
/// not recomputed: the default tables come from a fundamental-surface
/// enumeration of T' that is too slow to rerun in tests.
struct NormCandidates {
  std::vector<BoundaryCandidate> alpha1, alpha2;
  std::vector<CompatClass> compat_classes;
  std::string source = "built-in candidate tables";
};

inline const NormCandidates& default_norm_candidates() {
  static const NormCandidates c = [] {
    NormCandidates d;
    d.alpha1 = {{{2, 1, 1}, -1}, {{0, 1, 1}, -2}};
    d.alpha2 = {{{0, 1, 1}, -1}, {{2, 1, 3}, -2}, {{2, 1, 1}, -2}};
    const Affine one{1, 0, 0}, k1{1, 2, 0}, l1{1, 0, 2}, l0{0, 0, 2};
    d.compat_classes = {
        {1, {{{2, 1, 1, 0, 1, 1, -2}, one}}, {{{2, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {-2, 0, 0}}}},
        {2,
         {{{2, 0, 2, 2, 1, 1, -2}, k1}, {{2, 1, 3, 2, 2, 0, -3}, l1}},
         {{{4, 4, 4}, {1, 0, 2}, {5, 4, 6}, {4, 4, 4}, {3, 2, 4}, {1, 2, 0}, {-5, -4, -6}}}},
        {3,
         {{{2, 0, 2, 2, 1, 1, -2}, k1}, {{2, 1, 1, 2, 0, 2, -1}, l1}},
         {{{4, 4, 4}, {1, 0, 2}, {3, 4, 2}, {4, 4, 4}, {1, 2, 0}, {3, 2, 4}, {-3, -4, -2}}}},
        {4,
         {{{0, 1, 1, 0, 1, 1, -1}, k1}, {{2, 2, 0, 2, 1, 3, -2}, l0}},
         {{{0, 0, 4}, {1, 2, 4}, {1, 2, 0}, {0, 0, 4}, {1, 2, 2}, {1, 2, 6}, {-1, -2, -4}}}},
        {5,
         {{{2, 1, 1, 2, 0, 2, -1}, k1}, {{2, 2, 0, 2, 1, 3, -2}, l1}},
         {{{4, 4, 4}, {3, 2, 4}, {1, 2, 0}, {4, 4, 4}, {1, 0, 2}, {5, 4, 6}, {-3, -2, -4}}}},
        {6,
         {{{0, 1, 1, 0, 1, 1, -1}, k1}, {{2, 1, 3, 2, 2, 0, -3}, l0}},
         {{{0, 0, 4}, {1, 2, 2}, {1, 2, 6}, {0, 0, 4}, {1, 2, 4}, {1, 2, 0}, {-1, -2, -6}}}},
        {7,
         {{{0, 1, 1, 0, 1, 1, -1}, k1}, {{2, 3, 1, 2, 2, 4, -3}, l0}},
         {{{0, 0, 4}, {1, 2, 6}, {1, 2, 2}, {0, 0, 4}, {1, 2, 4}, {1, 2, 8}, {-1, -2, -6}}}},
    };
    return d;
  }();
  return c;
}

struct CompatCheck {
  int id;
  bool pass;
  std::string detail;  // first mismatch, empty on success
};

/// For every class and (k, l) in {0..3}^2, the combined row equals the
/// weighted sum of the summand rows.
inline std::vector<CompatCheck> compat_table_check(const NormCandidates& data = default_norm_candidates()) {
  std::vector<CompatCheck> out;
  for (const auto& cls : data.compat_classes) {
    CompatCheck chk{cls.id, true, ""};
    for (Coord k = 0; k <= 3 && chk.pass; ++k)
      for (Coord l = 0; l <= 3 && chk.pass; ++l)
        for (int i = 0; i < 7 && chk.pass; ++i) {
          Coord sum = 0;
          for (const auto& s : cls.summands) sum += s.weight(k, l) * s.row[i];
          if (sum != cls.combined[i](k, l)) {
            chk.pass = false;
            chk.detail = "column " + std::to_string(i) + " at (k,l)=(" + std::to_string(k) + "," + std::to_string(l) +
                         "): " + std::to_string(sum) + " vs " + std::to_string(cls.combined[i](k, l));
          }
        }
    out.push_back(std::move(chk));
  }
  return out;
}

struct ExtensionResult {
  std::array<Coord, 3> t_prime_weights{};  // on the T' edges of that torus
  std::array<Coord, 3> lst_weights{};      // reordered to the LST boundary order
  std::optional<Coord> lst_chi;
  std::optional<Coord> total_chi;
};

struct CandidateOutcome {
  BoundaryCandidate candidate;
  ExtensionResult extension;
};

struct Alpha3Outcome {
  int class_id;
  Coord k, l;
  BoundaryRow row;
  bool longitudinal_weights_one;
  std::optional<Coord> chi1, chi2, total_chi;
};

struct NormReport {
  int k = 0, n = 0;
  std::vector<CandidateOutcome> alpha1, alpha2;
  std::vector<Alpha3Outcome> alpha3;
  Coord norm1 = 0, norm2 = 0, norm3 = 0;
  Coord canonical_chi3 = 0;  // chi of the canonical representative of alpha3
  bool patterns_match = false;
  std::vector<std::string> assumptions;
};

namespace certify_detail {

inline ExtensionResult extend_candidate(const std::array<Coord, 3>& w, const std::array<int, 3>& order,
                                        const LayeredSolidTorus& l, Coord chi) {
  ExtensionResult r;
  r.t_prime_weights = w;
  for (int i = 0; i < 3; ++i) r.lst_weights[i] = w[order[i]];
  if (auto e = extend_into_lst(r.lst_weights, l)) {
    r.lst_chi = e->euler_characteristic;
    r.total_chi = chi + e->euler_characteristic;
  }
  return r;
}

}  // namespace certify_detail

/// Norms of the three nonzero classes of M_{k,n} from the candidate tables
/// and the surfaces of the filling solid tori.
inline NormReport norm_report(int k, int n, const NormCandidates& data = default_norm_candidates(),
                              Coord class_range = 3) {
  families_detail::require_odd(k, "k");
  families_detail::require_odd(n, "n");
  NormReport rep;
  rep.k = k;
  rep.n = n;
  rep.assumptions = {
      "Candidate surfaces of T' (" + data.source + ") are taken as complete.",
      "Alpha_3 candidates must cross each longitudinal filling edge once.",
      "Neither T' nor the filling solid tori contain closed normal surfaces of positive Euler characteristic.",
  };
  const auto l1 = lst(1, k - 1), l2 = lst(1, n);
  // Positions of the LST boundary edges among (e0, e2, e4) / (e18, e19, e20).
  const std::array<int, 3> order1{1, 0, 2}, order2{1, 2, 0};
  auto best = [](const auto& outcomes, auto get) {
    std::optional<Coord> b;
    for (const auto& o : outcomes)
      if (auto c = get(o); c && (!b || *c > *b)) b = c;
    if (!b) throw Error(ErrorCode::InvalidParameter, "no candidate extends");
    return -*b;
  };
  for (const auto& c : data.alpha1)
    rep.alpha1.push_back({c, certify_detail::extend_candidate(c.weights, order1, l1, c.chi)});
  for (const auto& c : data.alpha2)
    rep.alpha2.push_back({c, certify_detail::extend_candidate(c.weights, order2, l2, c.chi)});
  rep.norm1 = best(rep.alpha1, [](const CandidateOutcome& o) { return o.extension.total_chi; });
  rep.norm2 = best(rep.alpha2, [](const CandidateOutcome& o) { return o.extension.total_chi; });

  for (const auto& cls : data.compat_classes)
    for (Coord a = 0; a <= class_range; ++a)
      for (Coord b = 0; b <= class_range; ++b) {
        if (cls.summands.size() == 1 && (a || b)) continue;
        Alpha3Outcome o{cls.id, a, b, {}, false, {}, {}, {}};
        for (int i = 0; i < 7; ++i) o.row[i] = cls.combined[i](a, b);
        // e2 and e19 are the weight-one edges of the two fillings.
        o.longitudinal_weights_one = o.row[1] == 1 && o.row[4] == 1;
        if (o.longitudinal_weights_one) {
          auto x1 = certify_detail::extend_candidate({o.row[0], o.row[1], o.row[2]}, order1, l1, 0);
          auto x2 = certify_detail::extend_candidate({o.row[3], o.row[4], o.row[5]}, order2, l2, 0);
          o.chi1 = x1.lst_chi;
          o.chi2 = x2.lst_chi;
          if (o.chi1 && o.chi2) o.total_chi = o.row[6] + *o.chi1 + *o.chi2;
        }
        rep.alpha3.push_back(o);
      }
  rep.norm3 = best(rep.alpha3, [](const Alpha3Outcome& o) { return o.total_chi; });

  // Cross-check against the classes of the filled triangulation.
  TPrime tp = t_prime();
  Triangulation f = t_prime_kn(k, n);
  std::vector<std::vector<int>> groups{{tp.edges["e0"], tp.edges["e2"], tp.edges["e4"]},
                                       {tp.edges["e18"], tp.edges["e19"], tp.edges["e20"]}};
  const std::vector<std::vector<int>> p1{{0, 1, 1}, {0, 0, 0}}, p2{{0, 0, 0}, {0, 1, 1}}, p3{{0, 1, 1}, {0, 1, 1}};
  int seen = 0;
  for (const auto& c : h2_z2_basis(f).nonzero_classes()) {
    auto pat = boundary_pattern(c, f, tp.tri, groups);
    if (pat == p1 || pat == p2) ++seen;
    if (pat == p3) {
      ++seen;
      rep.canonical_chi3 = euler_characteristic(f, canonical_z2_representative(f, c));
    }
  }
  rep.patterns_match = seen == 3;
  return rep;
}

}  // namespace normtri

#endif  // NORMTRI_CERTIFY_HPP
