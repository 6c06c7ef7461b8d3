#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>

namespace polygrowth {

/// Integer lattice vector (cell coordinate or neighborhood offset).
struct Vec2i {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Vec2i, Vec2i) = default;
  friend constexpr auto operator<=>(Vec2i a, Vec2i b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend constexpr Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
  constexpr Vec2i operator-() const { return {-x, -y}; }
  friend std::ostream& operator<<(std::ostream& os, Vec2i v) {
    return os << "(" << v.x << "," << v.y << ")";
  }
};

constexpr std::int64_t dot(Vec2i a, Vec2i b) {
  return static_cast<std::int64_t>(a.x) * b.x + static_cast<std::int64_t>(a.y) * b.y;
}
constexpr std::int64_t cross(Vec2i a, Vec2i b) {
  return static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(a.y) * b.x;
}
constexpr int chebyshev(Vec2i v) { return std::max(std::abs(v.x), std::abs(v.y)); }

/// Upper half-plane test used for exact angular ordering: angle in [0, pi).
constexpr bool upper_half(Vec2i v) { return v.y > 0 || (v.y == 0 && v.x > 0); }

/// Strict angular order on nonzero vectors, starting at the positive x-axis.
constexpr bool angle_less(Vec2i a, Vec2i b) {
  const bool ua = upper_half(a), ub = upper_half(b);
  if (ua != ub) return ua;
  return cross(a, b) > 0;
}

/// Half-open integer rectangle [x0, x1) x [y0, y1).
struct Rect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  constexpr bool empty() const { return x1 <= x0 || y1 <= y0; }
  constexpr int width() const { return std::max(0, x1 - x0); }
  constexpr int height() const { return std::max(0, y1 - y0); }
  constexpr bool contains(Vec2i c) const { return c.x >= x0 && c.x < x1 && c.y >= y0 && c.y < y1; }
  constexpr Rect shrunk(int r) const { return {x0 + r, y0 + r, x1 - r, y1 - r}; }
  constexpr Rect grown(int r) const { return {x0 - r, y0 - r, x1 + r, y1 + r}; }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

constexpr Rect intersect(const Rect& a, const Rect& b) {
  return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
}

/// Element of the symmetry group of Z^2 (rotations by multiples of 90 degrees,
/// optionally preceded by the reflection x -> -x).
struct Dihedral {
  int rotation = 0;  // quarter turns counter-clockwise, 0..3
  bool reflect = false;

  constexpr Vec2i apply(Vec2i v) const {
    if (reflect) v.x = -v.x;
    for (int i = 0; i < rotation; ++i) v = {-v.y, v.x};
    return v;
  }

  static std::array<Dihedral, 8> all() {
    std::array<Dihedral, 8> out{};
    for (int i = 0; i < 8; ++i) out[i] = Dihedral{i % 4, i >= 4};
    return out;
  }
};

struct Vec2iHash {
  std::size_t operator()(Vec2i v) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
                                      static_cast<std::uint32_t>(v.y));
  }
};

}  // namespace polygrowth
