#ifndef NORMTRI_HOMOLOGY_HPP
#define NORMTRI_HOMOLOGY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"

namespace normtri {

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithForm {
  IntMatrix D, U, V;               // U * m * V == D (U, V only if requested)
  std::vector<BigInt> diagonal;    // nonzero diagonal entries, d1 | d2 | ...
};

inline SmithForm smith_normal_form(const IntMatrix& m, bool transforms = true) {
  SmithForm s;
  s.D = m;
  IntMatrix& a = s.D;
  const std::size_t R = m.rows(), C = m.cols();
  if (transforms) {
    s.U = IntMatrix::identity(R);
    s.V = IntMatrix::identity(C);
  }
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (transforms) s.U.swap_rows(x, y);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (transforms) s.V.swap_cols(x, y);
  };
  auto add_row = [&](std::size_t d, std::size_t src, const BigInt& k) {
    a.add_row(d, src, k);
    if (transforms) s.U.add_row(d, src, k);
  };
  auto add_col = [&](std::size_t d, std::size_t src, const BigInt& k) {
    a.add_col(d, src, k);
    if (transforms) s.V.add_col(d, src, k);
  };

  std::size_t k = 0;
  while (k < R && k < C) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    bool found = false;
    std::size_t pr = 0, pc = 0;
    BigInt best;
    for (std::size_t i = k; i < R; ++i)
      for (std::size_t j = k; j < C; ++j) {
        const BigInt& v = a(i, j);
        if (v == 0) continue;
        BigInt av = abs(v);
        if (!found || av < best) {
          found = true;
          best = av;
          pr = i;
          pc = j;
          if (best == 1) goto chosen;
        }
      }
  chosen:
    if (!found) break;
    swap_rows(k, pr);
    swap_cols(k, pc);
    bool clean = true;
    for (std::size_t i = k + 1; i < R; ++i) {
      if (a(i, k) == 0) continue;
      BigInt q = a(i, k) / a(k, k);
      add_row(i, k, -q);
      if (a(i, k) != 0) clean = false;
    }
    for (std::size_t j = k + 1; j < C; ++j) {
      if (a(k, j) == 0) continue;
      BigInt q = a(k, j) / a(k, k);
      add_col(j, k, -q);
      if (a(k, j) != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder appeared; pick again
    // Divisibility: fold in any row whose entries the pivot does not divide.
    bool divides = true;
    for (std::size_t i = k + 1; i < R && divides; ++i)
      for (std::size_t j = k + 1; j < C; ++j)
        if (a(i, j) % a(k, k) != 0) {
          add_row(k, i, 1);
          divides = false;
          break;
        }
    if (!divides) continue;
    if (a(k, k) < 0) {
      a.negate_row(k);
      if (transforms) s.U.negate_row(k);
    }
    s.diagonal.push_back(a(k, k));
    ++k;
  }
  return s;
}

/// Rank over Z/2.
inline std::size_t rank_mod2(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  const std::size_t W = (C + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(R, std::vector<std::uint64_t>(W, 0));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (m(i, j) % 2 != 0) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < C && rank < R; ++j) {
    std::size_t w = j / 64;
    std::uint64_t bit = std::uint64_t{1} << (j % 64);
    std::size_t p = rank;
    while (p < R && !(rows[p][w] & bit)) ++p;
    if (p == R) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < R; ++i)
      if (i != rank && (rows[i][w] & bit))
        for (std::size_t x = 0; x < W; ++x) rows[i][x] ^= rows[rank][x];
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Abelian groups
// ---------------------------------------------------------------------------

struct AbelianGroup {
  int rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, each dividing the next

  bool operator==(const AbelianGroup&) const = default;

  bool is_trivial() const { return rank == 0 && torsion.empty(); }

  /// "Z^r + Z_d1 + ...", with "Z" for rank one and "0" for the trivial group.
  std::string str() const {
    if (is_trivial()) return "0";
    std::string s;
    if (rank == 1) s = "Z";
    if (rank > 1) s = "Z^" + std::to_string(rank);
    for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + std::string("Z_") + d.str();
    return s;
  }
};

enum class Coefficients { Z, Z2 };

/// Group from cell counts and the Smith form of the incoming boundary map.
inline AbelianGroup homology_from(std::size_t cells, std::size_t rank_out, const std::vector<BigInt>& incoming) {
  AbelianGroup g;
  std::size_t rank_in = incoming.size();
  g.rank = static_cast<int>(cells - rank_out - rank_in);
  for (const auto& d : incoming)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

// ---------------------------------------------------------------------------
// Truncated cell complex
// ---------------------------------------------------------------------------

/// Cellular chain complex of the compact manifold obtained by truncating
/// every ideal vertex (link neither a sphere nor a disc). Material vertices
/// stay as 0-cells. Cells:
///   0: material vertex classes, then one point per ideal end of each edge
///   1: edge classes, then one arc per (face class, ideal corner)
///   2: face classes, then one link triangle per (tetrahedron, ideal corner)
///   3: tetrahedra
/// Boundary matrices d[k] map k-chains to (k-1)-chains (rows = (k-1)-cells).
class CellComplex {
 public:
  explicit CellComplex(const Triangulation& t) : tri_(&t), sk_(t) {
    if (t.empty()) throw Error(ErrorCode::InvalidParameter, "empty triangulation");
    for (const auto& l : sk_.vertex_links())
      ideal_.push_back(!(l.type == LinkType::Sphere || l.type == LinkType::Disc));
    build_cells();
    build_boundaries();
  }

  const Skeleton& skeleton() const { return sk_; }
  bool ideal(int vertex_class) const { return ideal_[vertex_class]; }
  std::size_t cells(int k) const { return counts_[k]; }
  const IntMatrix& boundary(int k) const { return d_[k]; }

  AbelianGroup homology(int k, Coefficients c = Coefficients::Z) const {
    if (k < 0 || k > 3) throw Error(ErrorCode::InvalidParameter, "degree out of range");
    if (c == Coefficients::Z2) {
      std::size_t out = k == 0 ? 0 : rank_mod2(d_[k]);
      std::size_t in = k == 3 ? 0 : rank_mod2(d_[k + 1]);
      AbelianGroup g;
      for (std::size_t i = 0; i < counts_[k] - out - in; ++i) g.torsion.push_back(2);
      return g;
    }
    std::size_t out = k == 0 ? 0 : smith_normal_form(d_[k], false).diagonal.size();
    std::vector<BigInt> in;
    if (k < 3) in = smith_normal_form(d_[k + 1], false).diagonal;
    return homology_from(counts_[k], out, in);
  }

  long long euler_characteristic() const {
    return static_cast<long long>(counts_[0]) - static_cast<long long>(counts_[1]) +
           static_cast<long long>(counts_[2]) - static_cast<long long>(counts_[3]);
  }

 private:
  int vertex_class(int tet, int v) const { return sk_.vertex_of(tet, v); }

  /// Start vertex, in tet's labels, of the class orientation of edge (a, b).
  int start_of(int tet, int a, int b) const {
    int lo = std::min(a, b), hi = std::max(a, b);
    return sk_.edge_sign(tet, edge_number(lo, hi)) > 0 ? lo : hi;
  }

  /// 0-cell where edge (v, x) of tet meets vertex v.
  int point(int tet, int v, int x) const {
    int vc = vertex_class(tet, v);
    if (!ideal_[vc]) return material_index_.at(vc);
    int e = sk_.edge_of(tet, v, x);
    int end = start_of(tet, v, x) == v ? 0 : 1;
    return trunc_index_.at({e, end});
  }

  /// Map from tet's labels to the labels of the representative of face f.
  Perm4 to_rep(int tet, int f) const {
    auto [rt, rf] = sk_.face_representatives()[sk_.face_of(tet, f)];
    if (rt == tet && rf == f) return Perm4();
    const auto& g = tri_->adjacent(tet, f);
    return g->perm;
  }

  void build_cells() {
    const Triangulation& t = *tri_;
    const int n = static_cast<int>(t.size());
    int c0 = 0;
    for (int v = 0; v < sk_.vertex_count(); ++v)
      if (!ideal_[v]) material_index_[v] = c0++;
    for (int e = 0; e < sk_.edge_count(); ++e) {
      const auto& emb = sk_.edge(e).embeddings.front();
      int tet = emb.tet, a = emb.verts[0], b = emb.verts[1];
      int s = start_of(tet, a, b), d = s == a ? b : a;
      if (ideal_[vertex_class(tet, s)]) trunc_index_[{e, 0}] = c0++;
      if (ideal_[vertex_class(tet, d)]) trunc_index_[{e, 1}] = c0++;
    }
    int c1 = sk_.edge_count();
    for (int f = 0; f < sk_.face_count(); ++f) {
      auto [rt, rf] = sk_.face_representatives()[f];
      auto fv = face_vertices(rf);
      for (int i = 0; i < 3; ++i)
        if (ideal_[vertex_class(rt, fv[i])]) arc_index_[{f, i}] = c1++;
    }
    int c2 = sk_.face_count();
    for (int tet = 0; tet < n; ++tet)
      for (int v = 0; v < 4; ++v)
        if (ideal_[vertex_class(tet, v)]) link_index_[{tet, v}] = c2++;
    counts_ = {static_cast<std::size_t>(c0), static_cast<std::size_t>(c1), static_cast<std::size_t>(c2),
               static_cast<std::size_t>(n)};
  }

  void build_boundaries() {
    const Triangulation& t = *tri_;
    const int n = static_cast<int>(t.size());
    d_[0] = IntMatrix(0, counts_[0]);
    d_[1] = IntMatrix(counts_[0], counts_[1]);
    d_[2] = IntMatrix(counts_[1], counts_[2]);
    d_[3] = IntMatrix(counts_[2], counts_[3]);

    for (int e = 0; e < sk_.edge_count(); ++e) {
      const auto& emb = sk_.edge(e).embeddings.front();
      int tet = emb.tet, a = emb.verts[0], b = emb.verts[1];
      int s = start_of(tet, a, b), d = s == a ? b : a;
      d_[1](point(tet, d, s), e) += 1;
      d_[1](point(tet, s, d), e) -= 1;
    }
    for (auto [key, idx] : arc_index_) {
      auto [f, i] = key;
      auto [rt, rf] = sk_.face_representatives()[f];
      auto fv = face_vertices(rf);
      int c = fv[i], prev = fv[(i + 2) % 3], next = fv[(i + 1) % 3];
      d_[1](point(rt, c, next), idx) += 1;
      d_[1](point(rt, c, prev), idx) -= 1;
    }

    for (int f = 0; f < sk_.face_count(); ++f) {
      auto [rt, rf] = sk_.face_representatives()[f];
      auto fv = face_vertices(rf);
      for (int i = 0; i < 3; ++i) {
        int a = fv[i], b = fv[(i + 1) % 3];
        int dir = start_of(rt, a, b) == a ? 1 : -1;
        d_[2](sk_.edge_of(rt, a, b), f) += dir;
        if (auto it = arc_index_.find({f, (i + 1) % 3}); it != arc_index_.end()) d_[2](it->second, f) += 1;
      }
    }
    for (auto [key, idx] : link_index_) {
      auto [tet, v] = key;
      std::array<int, 3> xs{};
      int k = 0;
      for (int x = 0; x < 4; ++x)
        if (x != v) xs[k++] = x;
      for (int j = 0; j < 3; ++j) {
        int from = xs[j], to = xs[(j + 1) % 3], face = xs[(j + 2) % 3];
        int fc = sk_.face_of(tet, face);
        Perm4 phi = to_rep(tet, face);
        auto [rt, rf] = sk_.face_representatives()[fc];
        auto fv = face_vertices(rf);
        int i = static_cast<int>(std::find(fv.begin(), fv.end(), phi[v]) - fv.begin());
        int prev = fv[(i + 2) % 3];
        (void)to;
        int sign = phi[from] == prev ? 1 : -1;
        d_[2](arc_index_.at({fc, i}), idx) += sign;
      }
    }

    for (int tet = 0; tet < n; ++tet) {
      for (int f = 0; f < 4; ++f) {
        Perm4 phi = to_rep(tet, f);
        auto fv = face_vertices(f);
        // Orientation of the face as seen from tet versus its representative.
        Perm4 img(phi[fv[0]], phi[fv[1]], phi[fv[2]], phi[f]);
        int sign = img.sign() * (f % 2 == 0 ? 1 : -1);
        auto [rt, rf] = sk_.face_representatives()[sk_.face_of(tet, f)];
        // Sorted face vertices of the representative have the sign of the
        // permutation (fv..., rf); normalise against that.
        auto rv = face_vertices(rf);
        sign *= Perm4(rv[0], rv[1], rv[2], rf).sign();
        d_[3](sk_.face_of(tet, f), tet) += sign;
      }
      for (int v = 0; v < 4; ++v)
        if (auto it = link_index_.find({tet, v}); it != link_index_.end())
          d_[3](it->second, tet) += (v % 2 == 0 ? -1 : 1);
    }
  }

  const Triangulation* tri_;
  Skeleton sk_;
  std::vector<bool> ideal_;
  std::map<int, int> material_index_;
  std::map<std::pair<int, int>, int> trunc_index_;  // (edge, end) -> 0-cell
  std::map<std::pair<int, int>, int> arc_index_;    // (face, corner) -> 1-cell
  std::map<std::pair<int, int>, int> link_index_;   // (tet, vertex) -> 2-cell
  std::array<std::size_t, 4> counts_{};
  std::array<IntMatrix, 4> d_;
};

/// First homology of the truncated manifold.
inline AbelianGroup homology_h1(const Triangulation& t, Coefficients c = Coefficients::Z) {
  return CellComplex(t).homology(1, c);
}

inline AbelianGroup homology(const Triangulation& t, int degree, Coefficients c = Coefficients::Z) {
  return CellComplex(t).homology(degree, c);
}

// ---------------------------------------------------------------------------
// H2(M; Z2) as edge labellings
// ---------------------------------------------------------------------------
//
// A class in H2(M; Z2) is Lefschetz dual to a class in H^1(M, dM; Z2). On
// the truncated complex a relative 1-cocycle vanishes on the truncation
// arcs and on edges in the real boundary, so it is a Z2 label per remaining
// edge class with the labels around every face summing to zero. Two
// labellings give the same class when they differ by the coboundary of an
// interior material vertex (flip every edge end at that vertex). For a
// normal surface the label of an edge is the parity of its weight there.

struct Z2Class {
  std::vector<std::uint8_t> labels;  // per edge class

  bool is_zero() const {
    return std::all_of(labels.begin(), labels.end(), [](auto x) { return x == 0; });
  }
  Z2Class operator+(const Z2Class& o) const {
    Z2Class r{labels};
    for (std::size_t i = 0; i < labels.size(); ++i) r.labels[i] ^= o.labels[i];
    return r;
  }
  bool operator==(const Z2Class&) const = default;
  /// Bit string in edge-class order.
  std::string str() const {
    std::string s;
    for (auto x : labels) s += x ? '1' : '0';
    return s;
  }
};

namespace homology_detail {

using Bits = std::vector<std::uint8_t>;

/// Reduced row echelon form over Z2; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<Bits>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t C = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c])
        for (std::size_t x = 0; x < C; ++x) rows[i][x] ^= rows[r][x];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Null space basis of the Z2 matrix with the given rows over C columns.
inline std::vector<Bits> null_space(std::vector<Bits> rows, std::size_t C) {
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(C, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Bits> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    Bits v(C, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (rows[i][free]) v[pivots[i]] = 1;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Reduces v against an RREF basis with the given pivots.
inline void reduce(Bits& v, const std::vector<Bits>& rows, const std::vector<std::size_t>& pivots) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (v[pivots[i]])
      for (std::size_t x = 0; x < v.size(); ++x) v[x] ^= rows[i][x];
}

}  // namespace homology_detail

struct H2Z2 {
  AbelianGroup group;          // Z_2^r
  std::vector<Z2Class> basis;  // r labellings, reduced against coboundaries

  /// All 2^r - 1 nonzero classes, in binary-counting order of the basis.
  std::vector<Z2Class> nonzero_classes() const {
    std::vector<Z2Class> out;
    const std::size_t r = basis.size();
    if (r > 20) throw Error(ErrorCode::LimitExceeded, "too many classes to list");
    for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
      Z2Class c{std::vector<std::uint8_t>(basis.front().labels.size(), 0)};
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) c = c + basis[i];
      out.push_back(c);
    }
    return out;
  }
};

/// True if the labelling sums to zero around every face.
inline bool satisfies_face_parity(const Triangulation& t, const Z2Class& c) {
  Skeleton sk(t);
  for (auto [rt, rf] : sk.face_representatives()) {
    auto fv = face_vertices(rf);
    int s = c.labels[sk.edge_of(rt, fv[0], fv[1])] + c.labels[sk.edge_of(rt, fv[0], fv[2])] +
            c.labels[sk.edge_of(rt, fv[1], fv[2])];
    if (s % 2) return false;
  }
  return true;
}

inline H2Z2 h2_z2_basis(const Triangulation& t) {
  using namespace homology_detail;
  Skeleton sk(t);
  const std::size_t E = static_cast<std::size_t>(sk.edge_count());
  std::vector<Bits> rows;
  for (auto [rt, rf] : sk.face_representatives()) {
    Bits r(E, 0);
    auto fv = face_vertices(rf);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) r[sk.edge_of(rt, fv[i], fv[j])] ^= 1;
    rows.push_back(r);
  }
  for (std::size_t e = 0; e < E; ++e)
    if (sk.edge(static_cast<int>(e)).boundary) {
      Bits r(E, 0);
      r[e] = 1;
      rows.push_back(r);
    }
  auto cocycles = null_space(rows, E);

  std::vector<Bits> cob;
  auto links = sk.vertex_links();
  for (std::size_t v = 0; v < links.size(); ++v) {
    if (links[v].type != LinkType::Sphere) continue;
    Bits r(E, 0);
    for (std::size_t e = 0; e < E; ++e) {
      const auto& emb = sk.edge(static_cast<int>(e)).embeddings.front();
      int ends = (sk.vertex_of(emb.tet, emb.verts[0]) == static_cast<int>(v)) +
                 (sk.vertex_of(emb.tet, emb.verts[1]) == static_cast<int>(v));
      r[e] = ends % 2;
    }
    cob.push_back(r);
  }
  auto cob_pivots = rref(cob);
  std::vector<Bits> reps;
  for (auto v : cocycles) {
    reduce(v, cob, cob_pivots);
    reps.push_back(v);
  }
  // Independent representatives modulo coboundaries, in reduced form.
  auto rep_pivots = rref(reps);
  (void)rep_pivots;
  H2Z2 h;
  for (auto& r : reps) {
    h.basis.push_back(Z2Class{r});
    h.group.torsion.push_back(2);
  }
  return h;
}

/// Labels of c on groups of edge classes of `base`, where c lives on
/// `filled` and every tetrahedron of base keeps its index in filled.
inline std::vector<std::vector<int>> boundary_pattern(const Z2Class& c, const Triangulation& filled,
                                                      const Triangulation& base,
                                                      const std::vector<std::vector<int>>& groups) {
  Skeleton sb(base), sf(filled);
  if (c.labels.size() != static_cast<std::size_t>(sf.edge_count()))
    throw Error(ErrorCode::InvalidParameter, "class does not match the triangulation");
  std::vector<std::vector<int>> out;
  for (const auto& g : groups) {
    std::vector<int> row;
    for (int e : g) {
      if (e < 0 || e >= sb.edge_count() || !sb.edge(e).boundary)
        throw Error(ErrorCode::EdgeNotOnBoundary, "edge " + std::to_string(e));
      const auto& emb = sb.edge(e).embeddings.front();
      row.push_back(c.labels[sf.edge_of(emb.tet, emb.verts[0], emb.verts[1])]);
    }
    out.push_back(row);
  }
  return out;
}

/// Labelling of a normal surface: the parity of its weight on each edge.
template <class Int>
inline Z2Class labelling_of(const std::vector<Int>& edge_weights) {
  Z2Class c;
  for (auto w : edge_weights) c.labels.push_back(static_cast<std::uint8_t>(((w % 2) + 2) % 2));
  return c;
}

}  // namespace normtri

#endif  // NORMTRI_HOMOLOGY_HPP
