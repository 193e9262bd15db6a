#ifndef NORMTRI_PERM4_HPP
#define NORMTRI_PERM4_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace normtri {

/// A permutation of {0,1,2,3}, stored as its image array.
class Perm4 {
 public:
  constexpr Perm4() : img_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d) : img_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                                     static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {
    if (!valid()) throw std::invalid_argument("Perm4: images must be a bijection on {0,1,2,3}");
  }

  /// Builds the permutation sending a[i] -> b[i] for i = 0,1,2 (and the
  /// remaining vertex to the remaining vertex).
  static constexpr Perm4 from_face_map(std::array<int, 3> from, std::array<int, 3> to) {
    std::array<int, 4> img{-1, -1, -1, -1};
    int used_to = 0;
    for (int i = 0; i < 3; ++i) {
      if (from[i] < 0 || from[i] > 3 || to[i] < 0 || to[i] > 3) throw std::invalid_argument("Perm4: index out of range");
      img[from[i]] = to[i];
      used_to |= 1 << to[i];
    }
    int rest_to = 0;
    while (used_to & (1 << rest_to)) ++rest_to;
    for (auto& v : img)
      if (v < 0) v = rest_to;
    return Perm4(img[0], img[1], img[2], img[3]);
  }

  constexpr int operator[](int i) const { return img_[i]; }

  constexpr int pre_image_of(int v) const {
    for (int i = 0; i < 4; ++i)
      if (img_[i] == v) return i;
    return -1;
  }

  constexpr Perm4 inverse() const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  /// Composition: (p * q)[i] = p[q[i]].
  constexpr Perm4 operator*(const Perm4& q) const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.img_[i] = img_[q.img_[i]];
    return r;
  }

  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (img_[i] > img_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  /// True if the first two images form the same unordered pair as q's.
  constexpr bool edge_like(const Perm4& q) const {
    return (img_[0] == q.img_[0] && img_[1] == q.img_[1]) || (img_[0] == q.img_[1] && img_[1] == q.img_[0]);
  }

  constexpr bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3; }

  /// Index into the lexicographic ordering of S4 (0 = 0123, 23 = 3210).
  constexpr int ordered_index() const {
    int idx = 0;
    int fact[4] = {6, 2, 1, 0};
    for (int i = 0; i < 3; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < 4; ++j)
        if (img_[j] < img_[i]) ++smaller;
      idx += smaller * fact[i];
    }
    return idx;
  }

  static constexpr Perm4 ordered_s4(int idx) {
    std::array<int, 4> pool{0, 1, 2, 3};
    int fact[4] = {6, 2, 1, 1};
    std::array<int, 4> img{};
    int n = 4;
    for (int i = 0; i < 4; ++i) {
      int q = idx / fact[i];
      idx %= fact[i];
      img[i] = pool[q];
      for (int j = q; j + 1 < n; ++j) pool[j] = pool[j + 1];
      --n;
    }
    return Perm4(img[0], img[1], img[2], img[3]);
  }

  constexpr bool operator==(const Perm4&) const = default;
  constexpr auto operator<=>(const Perm4&) const = default;

  /// Prints the images as a 4-character string, e.g. "1023".
  std::string str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
    return s;
  }

 private:
  constexpr bool valid() const {
    int seen = 0;
    for (auto v : img_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }

  std::array<std::uint8_t, 4> img_;
};

/// Vertices of the face opposite vertex f, in increasing order.
constexpr std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> v{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != f) v[k++] = i;
  return v;
}

/// Edge numbering inside a tetrahedron: 01,02,03,12,13,23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_number(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 6; ++e)
    if (kEdgeVertices[e][0] == a && kEdgeVertices[e][1] == b) return e;
  return -1;
}

/// Quad type separating {a, b} from the other two vertices:
/// 0 = q01/23, 1 = q02/13, 2 = q03/12.
constexpr int quad_separating(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 0) return b - 1;
  // {1,2} pairs with {0,3}, {1,3} with {0,2}, {2,3} with {0,1}.
  if (a == 1) return b == 2 ? 2 : 1;
  return 0;
}

}  // namespace normtri

#endif  // NORMTRI_PERM4_HPP
