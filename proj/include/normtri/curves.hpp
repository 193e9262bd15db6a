#ifndef NORMTRI_CURVES_HPP
#define NORMTRI_CURVES_HPP

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "normal.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

/// Integer combination of edge classes, each taken in its class orientation.
using EdgeChain = std::map<int, Coord>;

/// A closed normal curve on a boundary surface, traced in one direction.
/// Each crossing of an edge carries +1 when the curve leaves the triangle on
/// the left of the (oriented) edge, -1 otherwise; summed per edge class this
/// is the cocycle dual to the curve. `path` is an edge path freely homotopic
/// to the curve (the curve pushed onto the corners of its arcs).
struct NormalCurve {
  std::map<int, Coord> cocycle;
  EdgeChain path;
  Coord length = 0;  // number of arcs

  /// Algebraic intersection of this curve with a cycle of edges.
  Coord evaluate(const EdgeChain& cycle) const {
    Coord s = 0;
    for (auto [e, k] : cycle)
      if (auto it = cocycle.find(e); it != cocycle.end()) s += k * it->second;
    return s;
  }
};

/// One boundary component viewed as a triangulated surface, with the
/// orientation induced from an orientation of the triangulation.
class BoundarySurface {
 public:
  BoundarySurface(const Triangulation& t, int component) : tri_(&t), sk_(t) {
    auto comps = sk_.boundary_components();
    if (component < 0 || component >= static_cast<int>(comps.size()))
      throw Error(ErrorCode::IndexOutOfRange, "no boundary component " + std::to_string(component));
    comp_ = comps[component];
    auto sign = orient(t);
    for (auto& bt : comp_.triangles) {
      index_[{bt.tet, bt.face}] = static_cast<int>(orient_.size());
      orient_.push_back(sign[bt.tet] * (bt.face % 2 == 0 ? 1 : -1));
    }
  }

  const Skeleton& skeleton() const { return sk_; }
  const BoundaryComponent& component() const { return comp_; }
  const std::vector<int>& edges() const { return comp_.edges; }
  bool has_edge(int e) const { return std::find(comp_.edges.begin(), comp_.edges.end(), e) != comp_.edges.end(); }

  /// Traces all curves of the normal curve with the given weights on the
  /// boundary edge classes (indexed by skeleton edge class).
  std::vector<NormalCurve> curves(const std::vector<Coord>& edge_weight) const {
    const Triangulation& t = *tri_;
    const int nt = static_cast<int>(comp_.triangles.size());
    // arcs[i][v]: arcs cutting off vertex v of triangle i (tet labels).
    std::vector<std::array<Coord, 4>> arcs(nt, {0, 0, 0, 0});
    for (int i = 0; i < nt; ++i) {
      auto [tet, f] = comp_.triangles[i];
      auto fv = face_vertices(f);
      for (int k = 0; k < 3; ++k) {
        int a = fv[k], b = fv[(k + 1) % 3], c = fv[(k + 2) % 3];
        Coord twice = edge_weight[sk_.edge_of(tet, a, b)] + edge_weight[sk_.edge_of(tet, a, c)] -
                      edge_weight[sk_.edge_of(tet, b, c)];
        if (twice < 0 || twice % 2 != 0)
          throw Error(ErrorCode::InconsistentWeights, "boundary edge weights are not a normal curve");
        arcs[i][a] = twice / 2;
      }
    }
    std::set<std::tuple<int, int, Coord>> seen;
    std::vector<NormalCurve> out;
    for (int i = 0; i < nt; ++i) {
      auto [tet0, f0] = comp_.triangles[i];
      for (int a0 : face_vertices(f0))
        for (Coord p0 = 0; p0 < arcs[i][a0]; ++p0) {
          if (seen.count({i, a0, p0})) continue;
          NormalCurve c;
          int tri = i, a = a0;
          Coord p = p0;
          int x = first_other(f0, a0);  // heading for edge (a, x)
          while (true) {
            seen.insert({tri, a, p});
            ++c.length;
            auto [tet, f] = comp_.triangles[tri];
            int e = sk_.edge_of(tet, a, x);
            c.cocycle[e] += exit_sign(tri, a, x);
            auto nb = sk_.boundary_neighbour(tet, f, a, x);
            int ntri = index_.at({nb.tri.tet, nb.tri.face});
            if (p < arcs[ntri][nb.a]) {
              tri = ntri;
              a = nb.a;
              x = nb.c;
            } else {
              Coord w = arcs[ntri][nb.a] + arcs[ntri][nb.b];
              c.path[e] += class_direction(tet, a, x);
              tri = ntri;
              a = nb.b;
              p = w - 1 - p;
              x = nb.c;
            }
            if (tri == i && a == a0 && p == p0) break;
            if (c.length > 4 * total(arcs) + 4) throw Error(ErrorCode::InconsistentWeights, "curve trace did not close");
          }
          for (auto it = c.cocycle.begin(); it != c.cocycle.end();)
            it = it->second == 0 ? c.cocycle.erase(it) : std::next(it);
          for (auto it = c.path.begin(); it != c.path.end();) it = it->second == 0 ? c.path.erase(it) : std::next(it);
          out.push_back(std::move(c));
        }
    }
    return out;
  }

  /// Curves cut out on this boundary by a normal surface.
  std::vector<NormalCurve> curves(const NormalSurfaceVector& v) const { return curves(edge_weights(*tri_, v)); }

  /// The curve with weight 0 on edge e and 1 on the other two edges of a
  /// one-vertex two-triangle torus, oriented along e.
  NormalCurve parallel_curve(int e) const {
    require_two_triangle_torus();
    std::vector<Coord> w(sk_.edge_count(), 0);
    for (int x : comp_.edges) w[x] = x == e ? 0 : 1;
    auto cs = curves(w);
    if (cs.size() != 1) throw Error(ErrorCode::InconsistentWeights, "edge-parallel curve is not connected");
    NormalCurve c = cs.front();
    // path is homologous to +-e; compare against a transverse curve.
    int other = comp_.edges[0] == e ? comp_.edges[1] : comp_.edges[0];
    std::vector<Coord> w2(sk_.edge_count(), 0);
    for (int x : comp_.edges) w2[x] = x == other ? 0 : 1;
    NormalCurve probe = curves(w2).front();
    Coord along = probe.evaluate(c.path), ref = probe.evaluate(EdgeChain{{e, 1}});
    if (ref == 0 || (along != ref && along != -ref))
      throw Error(ErrorCode::InconsistentWeights, "edge-parallel curve not homologous to its edge");
    if (along == -ref) negate(c);
    return c;
  }

  /// Algebraic intersection of two edge cycles on a one-vertex torus.
  Coord intersection(const EdgeChain& a, const EdgeChain& b) const {
    Coord s = 0;
    for (auto [ea, ka] : a) s += ka * parallel_curve(ea).evaluate(b);
    return s;
  }

  static void negate(NormalCurve& c) {
    for (auto& [e, k] : c.cocycle) k = -k;
    for (auto& [e, k] : c.path) k = -k;
  }

  void require_two_triangle_torus() const {
    if (comp_.triangles.size() != 2 || comp_.vertices != 1 || comp_.edges.size() != 3)
      throw Error(ErrorCode::InvalidParameter, "boundary component is not a one-vertex two-triangle torus");
  }

 private:
  static int first_other(int face, int a) {
    for (int v : face_vertices(face))
      if (v != a) return v;
    return -1;
  }
  static Coord total(const std::vector<std::array<Coord, 4>>& arcs) {
    Coord s = 0;
    for (auto& r : arcs) s += r[0] + r[1] + r[2] + r[3];
    return s;
  }
  /// +1 if the class orientation of edge (a, b) in tet runs from a to b.
  int class_direction(int tet, int a, int b) const {
    int s = sk_.edge_sign(tet, edge_number(a, b));
    return (a < b) == (s > 0) ? 1 : -1;
  }
  int exit_sign(int tri, int a, int b) const {
    auto [tet, f] = comp_.triangles[tri];
    auto fv = face_vertices(f);
    int s = class_direction(tet, a, b) > 0 ? a : b;
    int d = s == a ? b : a;
    bool forward = (s == fv[0] && d == fv[1]) || (s == fv[1] && d == fv[2]) || (s == fv[2] && d == fv[0]);
    return orient_[tri] * (forward ? 1 : -1);
  }

  const Triangulation* tri_;
  Skeleton sk_;
  BoundaryComponent comp_;
  std::map<std::pair<int, int>, int> index_;
  std::vector<int> orient_;
};

/// A slope p*lambda + q*mu.
struct SlopePQ {
  Coord p = 0, q = 0;
  /// Sign convention: q > 0, or q == 0 and p > 0.
  SlopePQ normalized() const {
    if (q < 0 || (q == 0 && p < 0)) return {-p, -q};
    return *this;
  }
  bool operator==(const SlopePQ&) const = default;
  auto operator<=>(const SlopePQ&) const = default;
  std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

/// A torus boundary component with meridian and longitude given as edge
/// cycles. lambda_dot_mu is the algebraic intersection of lambda with mu in
/// the boundary orientation induced from the triangulation (always +-1).
struct FramedTorusBoundary {
  int component = -1;
  std::vector<int> edges;  // boundary edge classes in documented order
  EdgeChain mu, lambda;
  Coord lambda_dot_mu = 1;
  // For one-vertex tori: the two basis edges and mu, lambda over them.
  std::optional<std::array<int, 2>> basis;
  std::array<Coord, 2> mu_coords{}, lambda_coords{};
};

/// Framing of a one-vertex two-triangle torus from coordinates of mu and
/// lambda over two of its edges.
inline FramedTorusBoundary framing_from_edge_basis(const Triangulation& t, int component, std::vector<int> edges,
                                                   std::array<int, 2> basis, std::array<Coord, 2> mu,
                                                   std::array<Coord, 2> lambda) {
  BoundarySurface bs(t, component);
  bs.require_two_triangle_torus();
  for (int b : basis)
    if (!bs.has_edge(b)) throw Error(ErrorCode::EdgeNotOnBoundary, "edge " + std::to_string(b));
  if (mu[0] * lambda[1] - mu[1] * lambda[0] != 1 && mu[0] * lambda[1] - mu[1] * lambda[0] != -1)
    throw Error(ErrorCode::InvalidSlope, "mu and lambda do not form a basis");
  FramedTorusBoundary f;
  f.component = component;
  f.edges = std::move(edges);
  f.basis = basis;
  auto chain = [&](std::array<Coord, 2> c) {
    EdgeChain ch;
    if (c[0]) ch[basis[0]] += c[0];
    if (c[1]) ch[basis[1]] += c[1];
    return ch;
  };
  f.lambda = chain(lambda);
  f.mu = chain(mu);
  f.lambda_dot_mu = bs.intersection(f.lambda, f.mu);
  f.mu_coords = mu;
  f.lambda_coords = lambda;
  return f;
}

struct BoundarySlopes {
  std::vector<std::pair<SlopePQ, int>> essential;  // normalized slope, multiplicity
  int trivial = 0;
};

inline SlopePQ slope_of(const NormalCurve& c, const FramedTorusBoundary& f) {
  Coord a = c.evaluate(f.mu), b = c.evaluate(f.lambda);
  return SlopePQ{a * f.lambda_dot_mu, -b * f.lambda_dot_mu};
}

inline BoundarySlopes boundary_slopes(const Triangulation& t, const NormalSurfaceVector& v,
                                      const FramedTorusBoundary& f) {
  BoundarySurface bs(t, f.component);
  BoundarySlopes out;
  std::map<SlopePQ, int> count;
  for (const auto& c : bs.curves(v)) {
    SlopePQ s = slope_of(c, f);
    if (s.p == 0 && s.q == 0)
      ++out.trivial;
    else
      ++count[s.normalized()];
  }
  for (auto& [s, k] : count) out.essential.emplace_back(s, k);
  return out;
}

}  // namespace normtri

#endif  // NORMTRI_CURVES_HPP
