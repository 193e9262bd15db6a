#ifndef NORMTRI_ISOSIG_HPP
#define NORMTRI_ISOSIG_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "triangulation.hpp"

namespace normtri {

// Isomorphism signatures follow the published encoding of the Regina
// software, so that signatures printed by Regina decode here and vice versa.
//
// For a connected triangulation and a choice of starting tetrahedron and
// vertex labelling, a breadth-first relabelling is built and each face is
// classified as boundary (0), glued to a fresh tetrahedron (1) or glued to
// an already-labelled tetrahedron (2). The signature packs the tetrahedron
// count, these face actions (three per character), the destination of every
// type-2 gluing and its permutation (lexicographic index in S4). The signature is the least such string over all 24n starts;
// disconnected triangulations concatenate sorted component signatures.

namespace isosig_detail {

inline char to_char(unsigned v) {
  if (v < 26) return static_cast<char>('a' + v);
  if (v < 52) return static_cast<char>('A' + v - 26);
  if (v < 62) return static_cast<char>('0' + v - 52);
  return v == 62 ? '+' : '-';
}

inline int from_char(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '-') return 63;
  return -1;
}

inline void append_value(std::string& s, std::size_t v, unsigned n_chars) {
  for (unsigned i = 0; i < n_chars; ++i) {
    s += to_char(static_cast<unsigned>(v & 0x3F));
    v >>= 6;
  }
}

/// Signature of the component containing `start`, where vertex
/// labelling[i] of `start` becomes canonical vertex i.
inline std::string signature_from(const Triangulation& t, int start, Perm4 labelling, std::size_t comp_size) {
  const std::size_t n = t.size();
  std::vector<long> image(n, -1);
  std::vector<int> pre_image(n, -1);
  std::vector<Perm4> vmap(n);

  image[start] = 0;
  vmap[start] = labelling.inverse();
  pre_image[0] = start;
  std::size_t next_unused = 1;

  std::vector<int> actions;
  std::vector<std::size_t> join_dest;
  std::vector<Perm4> join_perm;

  for (std::size_t simp_img = 0; simp_img < comp_size; ++simp_img) {
    int src = pre_image[simp_img];
    for (int face_img = 0; face_img < 4; ++face_img) {
      int face_src = vmap[src].pre_image_of(face_img);
      const auto& g = t.adjacent(src, face_src);
      if (!g) {
        actions.push_back(0);
        continue;
      }
      int dest = g->tet;
      if (image[dest] >= 0) {
        if (image[dest] < image[src] ||
            (dest == src && vmap[src][g->perm[face_src]] < vmap[src][face_src]))
          continue;  // seen from the other side
      }
      if (image[dest] < 0) {
        image[dest] = static_cast<long>(next_unused);
        pre_image[next_unused++] = dest;
        vmap[dest] = vmap[src] * g->perm.inverse();
        actions.push_back(1);
        continue;
      }
      join_dest.push_back(static_cast<std::size_t>(image[dest]));
      join_perm.push_back(vmap[dest] * g->perm * vmap[src].inverse());
      actions.push_back(2);
    }
  }

  std::string ans;
  unsigned n_chars = 1;
  if (comp_size >= 63) {
    n_chars = 0;
    for (std::size_t i = comp_size; i > 0; i >>= 6) ++n_chars;
    ans += to_char(63);
    ans += to_char(n_chars);
  }
  append_value(ans, comp_size, n_chars);
  for (std::size_t i = 0; i < actions.size(); i += 3) {
    unsigned c = 0;
    for (std::size_t j = 0; j < 3 && i + j < actions.size(); ++j) c |= static_cast<unsigned>(actions[i + j]) << (2 * j);
    ans += to_char(c);
  }
  for (auto d : join_dest) append_value(ans, d, n_chars);
  for (auto& p : join_perm) append_value(ans, static_cast<std::size_t>(p.ordered_index()), 1);
  return ans;
}

}  // namespace isosig_detail

inline std::string iso_signature(const Triangulation& t) {
  if (t.empty()) return std::string(1, isosig_detail::to_char(0));
  std::vector<std::string> parts;
  for (const auto& comp : t.components()) {
    std::string best;
    for (int s : comp)
      for (int p = 0; p < 24; ++p) {
        std::string cur = isosig_detail::signature_from(t, s, Perm4::ordered_s4(p), comp.size());
        if (best.empty() || cur < best) best = std::move(cur);
      }
    parts.push_back(std::move(best));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (auto& p : parts) out += p;
  return out;
}

/// Decodes a signature produced by iso_signature (or by Regina). The result
/// is labelled canonically, so iso_signature(decode(s)) == s for every
/// signature s.
inline Triangulation decode_iso_signature(std::string_view sig) {
  using namespace isosig_detail;
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorCode::MalformedSignature, "'" + std::string(sig) + "': " + why);
  };
  for (char c : sig)
    if (from_char(c) < 0) throw bad("invalid character");

  Triangulation ans;
  std::size_t pos = 0;
  auto read = [&](unsigned n_chars) -> std::size_t {
    if (pos + n_chars > sig.size()) throw bad("unexpected end of signature");
    std::size_t v = 0;
    for (unsigned i = 0; i < n_chars; ++i) v |= static_cast<std::size_t>(from_char(sig[pos + i])) << (6 * i);
    pos += n_chars;
    return v;
  };

  while (pos < sig.size()) {
    unsigned n_chars = 1;
    std::size_t n = 0;
    if (from_char(sig[pos]) == 63) {
      ++pos;
      n_chars = static_cast<unsigned>(read(1));
      if (n_chars == 0 || n_chars > 5) throw bad("bad size marker");
      n = read(n_chars);
    } else {
      n = read(1);
    }
    if (n == 0) {
      if (!ans.empty() || pos != sig.size()) throw bad("empty component inside signature");
      return ans;
    }
    if (n > 1'000'000) throw bad("component too large");

    // Face actions: count facets until every face of every tetrahedron is
    // accounted for.
    std::vector<int> actions;
    std::size_t facets_used = 0, joins = 0, new_simp = 1;
    while (facets_used < 4 * n) {
      unsigned c = static_cast<unsigned>(read(1));
      for (int j = 0; j < 3 && facets_used < 4 * n; ++j) {
        int a = static_cast<int>((c >> (2 * j)) & 3);
        if (a == 3) throw bad("invalid face action");
        actions.push_back(a);
        if (a == 0) {
          facets_used += 1;
        } else if (a == 2) {
          facets_used += 2;
          ++joins;
        } else {
          facets_used += 2;
          if (++new_simp > n) throw bad("too many tetrahedra introduced");
        }
      }
      if (facets_used > 4 * n) throw bad("face actions overrun");
    }
    if (new_simp != n) throw bad("disconnected component description");
    std::vector<std::size_t> dest(joins);
    for (auto& d : dest) {
      d = read(n_chars);
      if (d >= n) throw bad("join destination out of range");
    }
    std::vector<Perm4> perms(joins);
    for (auto& p : perms) {
      std::size_t idx = read(1);
      if (idx >= 24) throw bad("permutation index out of range");
      p = Perm4::ordered_s4(static_cast<int>(idx));
    }

    Triangulation comp(n);
    std::size_t act = 0, jn = 0, next = 1;
    for (std::size_t s = 0; s < n; ++s)
      for (int f = 0; f < 4; ++f) {
        if (comp.adjacent(static_cast<int>(s), f)) continue;
        if (act >= actions.size()) throw bad("not enough face actions");
        int a = actions[act++];
        if (a == 0) continue;
        try {
          if (a == 1) {
            comp.join(static_cast<int>(s), f, static_cast<int>(next++), Perm4());
          } else {
            comp.join(static_cast<int>(s), f, static_cast<int>(dest[jn]), perms[jn]);
            ++jn;
          }
        } catch (const Error& e) {
          throw bad(std::string("inconsistent gluing: ") + e.what());
        }
      }
    if (act != actions.size() || jn != joins) throw bad("unused data");
    ans.append(comp);
  }
  return ans;
}

}  // namespace normtri

#endif  // NORMTRI_ISOSIG_HPP
