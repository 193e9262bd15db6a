#ifndef NORMTRI_TRIANGULATION_HPP
#define NORMTRI_TRIANGULATION_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm4.hpp"

namespace normtri {

/// Where a face of a tetrahedron goes: the partner tetrahedron and the
/// vertex map from this tetrahedron's labels to the partner's labels.
struct Gluing {
  int tet = -1;
  Perm4 perm;
  bool operator==(const Gluing&) const = default;
};

/// A generalised triangulation of a 3-pseudo-manifold: tetrahedra glued
/// along faces by permutations. Face i is opposite vertex i.
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(std::size_t tet_count) : adj_(tet_count, Row{std::nullopt, std::nullopt, std::nullopt, std::nullopt}) {}

  std::size_t size() const { return adj_.size(); }
  bool empty() const { return adj_.empty(); }

  const std::optional<Gluing>& adjacent(int tet, int face) const {
    check_index(tet, face);
    return adj_[tet][face];
  }
  bool is_boundary(int tet, int face) const { return !adjacent(tet, face).has_value(); }

  int add_tetrahedron() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }

  /// Glues face `face` of `tet` to `dest` so that vertex v of `tet` goes to
  /// perm[v] of `dest`. The reverse gluing is recorded as well.
  void join(int tet, int face, int dest, Perm4 perm) {
    check_index(tet, face);
    check_index(dest, perm[face]);
    int dface = perm[face];
    if (tet == dest && dface == face) {
      throw Error(ErrorCode::FaceGluedToItselfIdentically,
                  "face " + std::to_string(face) + " of tet " + std::to_string(tet) + " glued to itself");
    }
    const auto& here = adj_[tet][face];
    const auto& there = adj_[dest][dface];
    if (here && !(here->tet == dest && here->perm == perm))
      throw Error(ErrorCode::NonInvolutiveGluing, "tet " + std::to_string(tet) + " face " + std::to_string(face) +
                                                      " already glued elsewhere");
    if (there && !(there->tet == tet && there->perm == perm.inverse()))
      throw Error(ErrorCode::NonInvolutiveGluing, "tet " + std::to_string(dest) + " face " + std::to_string(dface) +
                                                      " already glued elsewhere");
    adj_[tet][face] = Gluing{dest, perm};
    adj_[dest][dface] = Gluing{tet, perm.inverse()};
  }

  void unjoin(int tet, int face) {
    check_index(tet, face);
    auto g = adj_[tet][face];
    if (!g) return;
    adj_[g->tet][g->perm[face]].reset();
    adj_[tet][face].reset();
  }

  /// Relabels: tetrahedron i becomes tet_map[i], with vertex v of i going
  /// to vertex_maps[i][v].
  Triangulation relabel(std::span<const int> tet_map, std::span<const Perm4> vertex_maps) const {
    Triangulation r(size());
    for (std::size_t t = 0; t < size(); ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = adj_[t][f];
        if (!g) continue;
        Perm4 p = vertex_maps[g->tet] * g->perm * vertex_maps[t].inverse();
        r.adj_[tet_map[t]][vertex_maps[t][f]] = Gluing{tet_map[g->tet], p};
      }
    return r;
  }

  /// Connected components, as lists of tetrahedron indices in increasing order.
  std::vector<std::vector<int>> components() const {
    std::vector<int> comp(size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < size(); ++s) {
      if (comp[s] >= 0) continue;
      int id = static_cast<int>(out.size());
      out.emplace_back();
      std::vector<int> stack{static_cast<int>(s)};
      comp[s] = id;
      while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        out[id].push_back(t);
        for (int f = 0; f < 4; ++f)
          if (auto& g = adj_[t][f]; g && comp[g->tet] < 0) {
            comp[g->tet] = id;
            stack.push_back(g->tet);
          }
      }
      std::sort(out[id].begin(), out[id].end());
    }
    return out;
  }

  bool connected() const { return components().size() <= 1; }

  std::size_t boundary_face_count() const {
    std::size_t n = 0;
    for (const auto& row : adj_)
      for (const auto& g : row)
        if (!g) ++n;
    return n;
  }

  /// Disjoint union; the tetrahedra of `other` are appended after ours.
  /// Returns the index offset of the appended tetrahedra.
  int append(const Triangulation& other) {
    int off = static_cast<int>(size());
    for (const auto& row : other.adj_) {
      std::array<std::optional<Gluing>, 4> r;
      for (int f = 0; f < 4; ++f)
        if (row[f]) r[f] = Gluing{row[f]->tet + off, row[f]->perm};
      adj_.push_back(r);
    }
    return off;
  }

  bool operator==(const Triangulation&) const = default;

 private:
  void check_index(int tet, int face) const {
    if (tet < 0 || static_cast<std::size_t>(tet) >= adj_.size() || face < 0 || face > 3)
      throw Error(ErrorCode::IndexOutOfRange, "tet " + std::to_string(tet) + " face " + std::to_string(face));
  }

  using Row = std::array<std::optional<Gluing>, 4>;
  std::vector<Row> adj_;
};

/// One row of a gluing table: face `face` of `tet` glued to `partner` via `perm`.
struct GluingRow {
  int tet;
  int face;
  int partner;
  Perm4 perm;
};

/// Builds a triangulation from gluing rows. Symmetric entries may be given
/// or omitted; contradictory entries raise NonInvolutiveGluing.
inline Triangulation build_triangulation(std::size_t tet_count, std::span<const GluingRow> rows) {
  Triangulation t(tet_count);
  for (const auto& r : rows) t.join(r.tet, r.face, r.partner, r.perm);
  return t;
}

// ---------------------------------------------------------------------------
// Gluing-table text format. One line per tetrahedron:
//
//   <tet>  <entry for (012)>  <entry for (013)>  <entry for (023)>  <entry for (123)>
//
// where an entry is either "bdry" or "<partner> (<xyz>)", meaning the face's
// vertices in increasing order map to x, y, z of the partner. Lines starting
// with '#' are ignored.
// ---------------------------------------------------------------------------

/// Column order of the text table: faces (012), (013), (023), (123).
inline constexpr std::array<int, 4> kTableFaceOrder{3, 2, 1, 0};

inline std::string to_gluing_table(const Triangulation& t) {
  std::ostringstream os;
  os << "# tet  (012)  (013)  (023)  (123)\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << i;
    for (int f : kTableFaceOrder) {
      const auto& g = t.adjacent(static_cast<int>(i), f);
      if (!g) {
        os << "  bdry";
        continue;
      }
      os << "  " << g->tet << " (";
      for (int v : face_vertices(f)) os << g->perm[v];
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

inline Triangulation parse_gluing_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  struct Entry {
    int tet, face, partner;
    std::array<int, 3> to;
  };
  std::vector<Entry> entries;
  int max_tet = -1;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::MalformedTable, "line " + std::to_string(line_no) + ": " + why);
  };
  std::vector<int> seen_rows;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Strip separators so "0: 2 (013) | ..." also parses.
    for (char& c : line)
      if (c == '|' || c == ':' || c == ',' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    int tet = 0;
    try {
      tet = std::stoi(tok[0]);
    } catch (...) {
      fail("expected tetrahedron index");
    }
    if (tet < 0) fail("negative tetrahedron index");
    seen_rows.push_back(tet);
    max_tet = std::max(max_tet, tet);
    std::size_t pos = 1;
    for (int col = 0; col < 4; ++col) {
      if (pos >= tok.size()) fail("expected four entries");
      if (tok[pos] == "bdry" || tok[pos] == "-") {
        ++pos;
        continue;
      }
      int partner = 0;
      std::string img;
      // Accept "2 (013)" split over two tokens or "2(013)" as one.
      auto paren = tok[pos].find('(');
      try {
        if (paren != std::string::npos) {
          partner = std::stoi(tok[pos].substr(0, paren));
          img = tok[pos].substr(paren);
          ++pos;
        } else {
          partner = std::stoi(tok[pos]);
          if (pos + 1 >= tok.size()) fail("missing vertex images");
          img = tok[pos + 1];
          pos += 2;
        }
      } catch (const Error&) {
        throw;
      } catch (...) {
        fail("bad entry '" + tok[pos] + "'");
      }
      if (img.size() != 5 || img.front() != '(' || img.back() != ')') fail("bad vertex images '" + img + "'");
      std::array<int, 3> to{};
      for (int i = 0; i < 3; ++i) {
        if (img[1 + i] < '0' || img[1 + i] > '3') fail("bad vertex images '" + img + "'");
        to[i] = img[1 + i] - '0';
      }
      entries.push_back({tet, kTableFaceOrder[col], partner, to});
      max_tet = std::max(max_tet, partner);
    }
    if (pos != tok.size()) fail("trailing tokens");
  }
  Triangulation t(static_cast<std::size_t>(max_tet + 1));
  for (const auto& e : entries) {
    Perm4 p;
    try {
      p = Perm4::from_face_map(face_vertices(e.face), e.to);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::MalformedTable, "vertex images are not distinct");
    }
    t.join(e.tet, e.face, e.partner, p);
  }
  return t;
}

}  // namespace normtri

#endif  // NORMTRI_TRIANGULATION_HPP
