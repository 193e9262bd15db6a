// normtri: generate triangulations, compute invariants, enumerate normal
// surfaces and run certificates from the command line.
//
// Exit status: 0 success or verdict true, 1 verdict false, 2 usage or input
// error, 3 enumeration limit or budget exceeded.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normtri/certify.hpp"
#include "normtri/enumeration.hpp"
#include "normtri/families.hpp"
#include "normtri/isosig.hpp"
#include "normtri/json_io.hpp"

using namespace normtri;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitFalse = 1, kExitUsage = 2, kExitLimit = 3;

// NORMTRI_LIMITS="vertex=24,fundamental=8,budget=2000000"
EnumerationLimits limits_from_env() {
  EnumerationLimits lim;
  const char* env = std::getenv("NORMTRI_LIMITS");
  if (!env) return lim;
  std::stringstream ss(env);
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("NORMTRI_LIMITS", "expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    long long v = std::stoll(item.substr(eq + 1));
    if (key == "vertex")
      lim.max_tets_vertex = static_cast<std::size_t>(v);
    else if (key == "fundamental")
      lim.max_tets_fundamental = static_cast<std::size_t>(v);
    else if (key == "budget")
      lim.budget = static_cast<std::size_t>(v);
    else
      throw CLI::ValidationError("NORMTRI_LIMITS", "unknown key '" + key + "'");
  }
  return lim;
}

void header(const EnumerationLimits& lim) {
  std::cerr << "# normtri " << kVersion << " seed=1 limits: vertex<=" << lim.max_tets_vertex
            << " fundamental<=" << lim.max_tets_fundamental << " budget=" << lim.budget << "\n";
}

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_like_table(const std::string& s) {
  return s.find_first_of(" \t\n#(") != std::string::npos && s.find_first_not_of(" \t\r\n") != std::string::npos &&
         s.find('(') != std::string::npos;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void print_triangulation(const Triangulation& t, const std::string& out, Json extra = Json::object()) {
  if (out == "isosig") {
    std::cout << iso_signature(t) << "\n";
  } else if (out == "table") {
    std::cout << to_gluing_table(t);
  } else {
    Json j = to_json(t);
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "triangulation";
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cout << j.dump(2) << "\n";
  }
}

void print_certificate(const TightnessCertificate& c, bool json) {
  if (json) {
    std::cout << to_json(c).dump(2) << "\n";
    return;
  }
  std::cout << "isosig        " << c.isosig << "\n"
            << "tetrahedra    " << c.tetrahedra << "\n"
            << "H2(M;Z2) rank " << c.h2_rank << "\n";
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const auto& ev = c.classes[i];
    std::cout << "class " << i << "       chi=" << ev.euler_characteristic
              << " one-quad-per-tet=" << (ev.one_quad_per_tet ? "yes" : "no")
              << (ev.surface ? "" : " (no canonical representative)") << "\n";
  }
  std::cout << "sum(-chi)     " << c.sum_negative_chi << "\n"
            << "quad partition " << (c.quads_partition ? "yes" : "no") << "\n"
            << "verdict       " << (c.verdict ? "true" : "false") << "\n"
            << "note          " << c.note << "\n";
}

struct ScanRow {
  std::size_t line = 0;
  std::string input;
  std::string status = "ok";
  std::size_t tetrahedra = 0;
  std::size_t h2_rank = 0;
  std::optional<bool> verdict;
};

ScanRow scan_one(std::size_t line, const std::string& sig) {
  ScanRow r;
  r.line = line;
  r.input = sig;
  Triangulation t;
  try {
    t = decode_iso_signature(sig);
  } catch (const Error& e) {
    r.status = std::string("decode failure: ") + e.what();
    return r;
  }
  r.tetrahedra = t.size();
  try {
    r.h2_rank = h2_z2_basis(t).basis.size();
    r.verdict = tightness_certificate(t).verdict;
  } catch (const Error& e) {
    r.status = e.what();
  }
  return r;
}

int run_scan(const std::string& path, bool json) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot read " + path);
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t no = 0;
  for (std::string s; std::getline(in, s);) {
    ++no;
    s = trim(s);
    if (!s.empty() && s[0] != '#') lines.emplace_back(no, s);
  }
  std::vector<std::future<ScanRow>> jobs;
  for (const auto& [n, s] : lines) jobs.push_back(std::async(std::launch::async, scan_one, n, s));
  std::vector<ScanRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  std::size_t hits = 0, decode_failures = 0, errors = 0;
  for (const auto& r : rows) {
    if (r.status.rfind("decode failure", 0) == 0)
      ++decode_failures;
    else if (r.status != "ok")
      ++errors;
    else if (*r.verdict)
      ++hits;
  }
  if (json) {
    Json a = Json::array();
    for (const auto& r : rows)
      a.push_back({{"line", r.line},
                   {"input", r.input},
                   {"status", r.status},
                   {"tetrahedra", r.tetrahedra},
                   {"h2_z2_rank", r.h2_rank},
                   {"verdict", r.verdict ? Json(*r.verdict) : Json(nullptr)}});
    std::cout << Json{{"schema_version", kReportSchemaVersion},
                      {"kind", "scan"},
                      {"rows", a},
                      {"summary",
                       {{"lines", rows.size()}, {"hits", hits}, {"decode_failures", decode_failures}, {"errors", errors}}}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& r : rows) {
      std::cout << r.line << "  " << r.input << "  ";
      if (r.status != "ok")
        std::cout << r.status << "\n";
      else
        std::cout << r.tetrahedra << " tets  rank " << r.h2_rank << "  verdict " << (*r.verdict ? "true" : "false")
                  << "\n";
    }
    std::cout << "lines " << rows.size() << "  hits " << hits << "  decode failures " << decode_failures
              << "  errors " << errors << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normtri: ideal triangulations, normal surfaces and complexity certificates"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string out = "isosig";
  int k = 3, n = 3, m = 3, j = 1;
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", out, "Output format")->check(CLI::IsMember({"isosig", "table", "json"}));
  };

  auto* gen = app.add_subcommand("gen", "Build a triangulation from one of the families");
  gen->require_subcommand(1);
  auto* g_tkn = gen->add_subcommand("tkn", "Two-cusped family T_{k,n}");
  auto* g_ukn = gen->add_subcommand("ukn", "Family U_{k,n}");
  auto* g_tpkn = gen->add_subcommand("tprime-kn", "T' with both boundary tori filled");
  for (auto* c : {g_tkn, g_ukn, g_tpkn}) {
    c->add_option("--k", k, "Odd k >= 3")->required();
    c->add_option("--n", n, "Odd n >= 3")->required();
    add_out(c);
  }
  auto* g_tm = gen->add_subcommand("tm", "Solid torus T_m");
  g_tm->add_option("--m", m, "Number of tetrahedra")->required();
  add_out(g_tm);
  Coord lj = 1, lk = 2;
  auto* g_lst = gen->add_subcommand("lst", "Layered solid torus LST(j,k)");
  g_lst->add_option("--j", lj)->required();
  g_lst->add_option("--k", lk)->required();
  add_out(g_lst);
  auto* g_link = gen->add_subcommand("link-complement", "Eight-tetrahedron link complement N");
  add_out(g_link);
  auto* g_tp = gen->add_subcommand("tprime", "T' with two boundary tori");
  add_out(g_tp);
  auto* g_ucusp = gen->add_subcommand("u-cusped", "Cusped manifold behind U_{k,n}");
  add_out(g_ucusp);

  std::string sig;
  auto* inv = app.add_subcommand("invariants", "Homology, vertex links and boundary of a triangulation");
  inv->add_option("SIG", sig, "Iso signature")->required();

  auto* normal = app.add_subcommand("normal", "Normal surfaces");
  normal->require_subcommand(1);
  auto* enumerate = normal->add_subcommand("enumerate", "Vertex or fundamental normal surfaces");
  std::string which = "vertex", coords = "std", filter = "all";
  bool allow_long = false;
  enumerate->add_option("--which", which)->check(CLI::IsMember({"vertex", "fundamental"}));
  enumerate->add_option("--coords", coords)->check(CLI::IsMember({"std", "quad"}));
  enumerate->add_option("--filter", filter, "closed, boundary or all")->check(CLI::IsMember({"closed", "boundary", "all"}));
  enumerate->add_flag("--allow-long", allow_long, "Lift the tetrahedron limits and the budget");
  enumerate->add_option("SIG", sig)->required();

  bool json = false;
  auto* cert = app.add_subcommand("certify", "Certificates");
  cert->require_subcommand(1);
  auto* c_tight = cert->add_subcommand("tightness", "Complexity lower-bound certificate");
  std::string family;
  c_tight->add_option("SIG", sig);
  c_tight->add_option("--family", family)->check(CLI::IsMember({"tkn", "ukn"}));
  c_tight->add_option("--k", k);
  c_tight->add_option("--n", n);
  auto* c_angles = cert->add_subcommand("angles", "Strict angle structure by exact LP");
  c_angles->add_option("SIG", sig)->required();
  auto* c_norms = cert->add_subcommand("norms", "Z2-norms of M_{k,n}");
  c_norms->add_option("--k", k)->required();
  c_norms->add_option("--n", n)->required();
  auto* c_t3 = cert->add_subcommand("table3", "Arithmetic of the compatibility classes");
  for (auto* c : {c_tight, c_angles, c_norms, c_t3}) c->add_flag("--json", json, "Emit JSON");

  std::string path;
  auto* scan = app.add_subcommand("scan", "Certificate run over a file of iso signatures");
  scan->add_option("FILE", path)->required();
  scan->add_flag("--json", json, "Emit JSON");

  std::string to = "auto";
  auto* convert = app.add_subcommand("convert", "Gluing table <-> iso signature");
  convert->add_option("FILE", path, "Input file (default stdin)");
  convert->add_option("--to", to)->check(CLI::IsMember({"auto", "isosig", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    EnumerationLimits lim = limits_from_env();
    header(lim);

    if (*gen) {
      if (*g_tkn) print_triangulation(t_kn(k, n), out);
      if (*g_ukn) print_triangulation(u_kn(k, n), out);
      if (*g_tpkn) print_triangulation(t_prime_kn(k, n), out);
      if (*g_tm) print_triangulation(solid_torus_tm(m).tri, out);
      if (*g_link) print_triangulation(link_complement_n(), out);
      if (*g_ucusp) print_triangulation(u_cusped(), out);
      if (*g_tp) {
        TPrime tp = t_prime();
        print_triangulation(tp.tri, out, {{"named_edges", tp.edges}});
      }
      if (*g_lst) {
        auto l = lst(lj, lk);
        Json extra = {{"boundary_edges", l.boundary_edges}, {"meridian_weights", l.weights}};
        if (l.longitudinal_edge) extra["longitudinal_edge"] = *l.longitudinal_edge;
        if (l.meridional_edge) extra["meridional_edge"] = *l.meridional_edge;
        print_triangulation(l.tri, out, extra);
      }
      return 0;
    }

    if (*inv) {
      Json r = invariants_json(decode_iso_signature(sig));
      r["schema_version"] = kReportSchemaVersion;
      r["kind"] = "invariants";
      std::cout << r.dump(2) << "\n";
      return 0;
    }

    if (*enumerate) {
      Triangulation t = decode_iso_signature(sig);
      CoordSystem sys = coords == "std" ? CoordSystem::Standard : CoordSystem::Quad;
      SurfaceFilter f = filter == "closed" ? SurfaceFilter::Closed
                        : filter == "boundary" ? SurfaceFilter::WithBoundary
                                               : SurfaceFilter::All;
      if (allow_long) lim = {SIZE_MAX, SIZE_MAX, SIZE_MAX};
      auto surfaces = which == "vertex" ? vertex_surfaces(t, sys, f, lim) : fundamental_surfaces(t, sys, f, lim);
      Json list = Json::array();
      for (const auto& s : surfaces) list.push_back(surface_json(t, s));
      std::cout << Json{{"schema_version", kReportSchemaVersion},
                        {"kind", "normal_surfaces"},
                        {"isosig", iso_signature(t)},
                        {"which", which},
                        {"coords", coords},
                        {"filter", to_string(f)},
                        {"count", surfaces.size()},
                        {"surfaces", list}}
                       .dump(2)
                << "\n";
      return 0;
    }

    if (*c_tight) {
      Triangulation t;
      if (!family.empty())
        t = family == "tkn" ? t_kn(k, n) : u_kn(k, n);
      else if (!sig.empty())
        t = decode_iso_signature(sig);
      else
        throw CLI::ValidationError("tightness", "give SIG or --family");
      auto c = tightness_certificate(t);
      print_certificate(c, json);
      return c.verdict ? 0 : kExitFalse;
    }

    if (*c_angles) {
      auto r = angle_structure_report(decode_iso_signature(sig));
      if (json) {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        std::cout << "lp " << to_string(r.lp_status) << "\nmax min angle " << r.max_min_angle << " pi\n";
        if (r.structure)
          for (std::size_t i = 0; i < r.structure->angles.size(); ++i) {
            const auto& a = r.structure->angles[i];
            std::cout << i << "  " << a[0] << "  " << a[1] << "  " << a[2] << "\n";
          }
        std::cout << "verdict " << (r.structure ? "true" : "false") << "\n";
      }
      return r.structure ? 0 : kExitFalse;
    }

    if (*c_norms) {
      auto r = norm_report(k, n);
      if (json) {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        std::cout << "norms  " << r.norm1 << "  " << r.norm2 << "  " << r.norm3 << "\n"
                  << "canonical alpha3 chi " << r.canonical_chi3 << "\n";
        for (const auto& a : r.assumptions) std::cout << "assumes: " << a << "\n";
      }
      return 0;
    }

    if (*c_t3) {
      auto checks = compat_table_check();
      bool all = true;
      for (const auto& c : checks) all = all && c.pass;
      if (json) {
        std::cout << to_json(checks).dump(2) << "\n";
      } else {
        for (const auto& c : checks)
          std::cout << "class " << c.id << "  " << (c.pass ? "pass" : "FAIL " + c.detail) << "\n";
      }
      return all ? 0 : kExitFalse;
    }

    if (*scan) return run_scan(path, json);

    if (*convert) {
      std::string text;
      if (path.empty()) {
        text = read_all(std::cin);
      } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::FileUnreadable, "cannot read " + path);
        text = read_all(in);
      }
      bool is_table = looks_like_table(text);
      if (to == "auto") to = is_table ? "isosig" : "table";
      Triangulation t = is_table ? parse_gluing_table(text) : decode_iso_signature(trim(text));
      print_triangulation(t, to);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::LimitExceeded || e.code() == ErrorCode::BudgetExhausted) return kExitLimit;
    return kExitUsage;
  }
  return 0;
}
