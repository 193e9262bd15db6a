#ifndef NORMTRI_JSON_IO_HPP
#define NORMTRI_JSON_IO_HPP

// Needs nlohmann's single header on the include path as "json.hpp".

#include <string>
#include <vector>

#include "json.hpp"

#include "certify.hpp"
#include "homology.hpp"
#include "isosig.hpp"
#include "normal.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

using Json = nlohmann::json;

namespace json_detail {

inline std::string q(const Rational& r) { return r.str(); }

inline Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(q(x));
  return a;
}

inline Json labels(const Z2Class& c) {
  Json a = Json::array();
  for (auto b : c.labels) a.push_back(static_cast<int>(b));
  return a;
}

}  // namespace json_detail

inline Json to_json(const AbelianGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion) t.push_back(d.str());
  return {{"rank", g.rank}, {"torsion", t}, {"text", g.str()}};
}

inline Json to_json(const Triangulation& t) {
  Json tets = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json faces = Json::array();
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.adjacent(static_cast<int>(i), f);
      if (!g) {
        faces.push_back(nullptr);
        continue;
      }
      Json perm = Json::array();
      for (int v = 0; v < 4; ++v) perm.push_back(g->perm[v]);
      faces.push_back({{"tet", g->tet}, {"perm", perm}});
    }
    tets.push_back(faces);
  }
  return {{"tetrahedra", t.size()}, {"isosig", iso_signature(t)}, {"gluings", tets}};
}

/// Homology, vertex links and boundary of a triangulation.
inline Json invariants_json(const Triangulation& t) {
  Skeleton sk(t);
  Json links = Json::array();
  for (const auto& l : sk.vertex_links())
    links.push_back({{"vertex", l.vertex},
                     {"type", to_string(l.type)},
                     {"triangles", l.triangles},
                     {"euler_characteristic", l.euler_characteristic},
                     {"orientable", l.orientable}});
  Json boundary = Json::array();
  for (const auto& b : sk.boundary_components())
    boundary.push_back({{"triangles", b.triangles.size()},
                        {"vertices", b.vertices},
                        {"edges", b.edges.size()},
                        {"euler_characteristic", b.euler_characteristic}});
  return {{"isosig", iso_signature(t)},
          {"tetrahedra", t.size()},
          {"orientable", is_orientable(t)},
          {"vertices", sk.vertex_count()},
          {"edges", sk.edge_count()},
          {"edge_degrees", sk.edge_degrees()},
          {"vertex_links", links},
          {"boundary_components", boundary},
          {"h1", to_json(homology_h1(t))},
          {"h1_z2", to_json(homology_h1(t, Coefficients::Z2))},
          {"h2_z2_rank", h2_z2_basis(t).basis.size()}};
}

inline Json surface_json(const Triangulation& t, const NormalSurfaceVector& v) {
  auto std_v = v.system == CoordSystem::Standard ? v : standard_from_quad(t, v);
  auto a = analyze_surface(t, std_v);
  Json comps = Json::array();
  for (const auto& c : a.components)
    comps.push_back({{"euler_characteristic", c.euler_characteristic},
                     {"orientable", c.orientable},
                     {"closed", c.closed},
                     {"vertex_linking", c.vertex_linking}});
  return {{"coords", v.coords},
          {"system", to_string(v.system)},
          {"euler_characteristic", a.euler_characteristic},
          {"edge_weights", edge_weights(t, std_v)},
          {"components", comps}};
}

inline Json to_json(const TightnessCertificate& c) {
  Json classes = Json::array();
  for (const auto& ev : c.classes) {
    Json e = {{"labels", json_detail::labels(ev.labels)},
              {"one_quad_per_tet", ev.one_quad_per_tet},
              {"euler_characteristic", ev.euler_characteristic}};
    e["surface"] = ev.surface ? Json(ev.surface->coords) : Json(nullptr);
    classes.push_back(e);
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "tightness"},
          {"isosig", c.isosig},
          {"tetrahedra", c.tetrahedra},
          {"h2_z2_rank", c.h2_rank},
          {"classes", classes},
          {"sum_negative_chi", c.sum_negative_chi},
          {"quads_partition", c.quads_partition},
          {"verdict", c.verdict},
          {"note", c.note}};
}

inline Json to_json(const AngleReport& r) {
  Json j = {{"schema_version", kReportSchemaVersion},
            {"kind", "angles"},
            {"lp_status", to_string(r.lp_status)},
            {"feasible", r.structure.has_value()},
            {"max_min_angle", json_detail::q(r.max_min_angle)},
            {"dual", json_detail::rationals(r.dual)}};
  Json angles = Json::array();
  if (r.structure)
    for (const auto& a : r.structure->angles) angles.push_back(json_detail::rationals({a[0], a[1], a[2]}));
  j["angles"] = angles;
  return j;
}

inline Json to_json(const NormReport& r) {
  auto opt = [](const std::optional<Coord>& x) { return x ? Json(*x) : Json(nullptr); };
  auto cands = [&](const std::vector<CandidateOutcome>& v) {
    Json a = Json::array();
    for (const auto& o : v)
      a.push_back({{"weights", o.candidate.weights},
                   {"chi", o.candidate.chi},
                   {"lst_weights", o.extension.lst_weights},
                   {"lst_chi", opt(o.extension.lst_chi)},
                   {"total_chi", opt(o.extension.total_chi)}});
    return a;
  };
  Json a3 = Json::array();
  for (const auto& o : r.alpha3)
    a3.push_back({{"class", o.class_id},
                  {"k", o.k},
                  {"l", o.l},
                  {"row", o.row},
                  {"longitudinal_weights_one", o.longitudinal_weights_one},
                  {"chi1", opt(o.chi1)},
                  {"chi2", opt(o.chi2)},
                  {"total_chi", opt(o.total_chi)}});
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "norms"},
          {"k", r.k},
          {"n", r.n},
          {"norms", {r.norm1, r.norm2, r.norm3}},
          {"alpha1", cands(r.alpha1)},
          {"alpha2", cands(r.alpha2)},
          {"alpha3", a3},
          {"canonical_alpha3_chi", r.canonical_chi3},
          {"boundary_patterns_match", r.patterns_match},
          {"assumptions", r.assumptions}};
}

inline Json to_json(const std::vector<CompatCheck>& checks) {
  Json a = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    a.push_back({{"class", c.id}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  return {{"schema_version", kReportSchemaVersion}, {"kind", "compat_table"}, {"classes", a}, {"pass", all}};
}

}  // namespace normtri

#endif  // NORMTRI_JSON_IO_HPP
