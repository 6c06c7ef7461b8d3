#include <algorithm>
#include <limits>

#include "detail.hpp"

namespace polygrowth {

namespace {

Vec2i upper(Vec2i d) { return upper_half(d) ? d : -d; }

// Normal of the line through x with direction d, oriented away from the origin.
Vec2i outward_normal(Vec2i x, Vec2i d) {
  Vec2i n{-d.y, d.x};
  const std::int64_t c = dot(n, x);
  if (c == 0) throw std::invalid_argument("line passes through the origin");
  return c > 0 ? n : -n;
}

int cut_size(std::span<const Vec2i> pts, Vec2i x, Vec2i d) {
  const Vec2i n = outward_normal(x, d);
  const std::int64_t c = dot(n, x);
  int count = 0;
  for (Vec2i y : pts)
    if (dot(n, y) >= c) ++count;
  return count;
}

// Directions of all lines through x worth evaluating: every line through x
// and another site, plus one generic line per angular gap between them.
std::vector<Vec2i> line_directions(std::span<const Vec2i> pts, Vec2i x) {
  std::vector<Vec2i> crit;
  for (Vec2i y : pts)
    if (y != x) crit.push_back(upper(primitive(y - x)));
  if (std::find(pts.begin(), pts.end(), Vec2i{0, 0}) == pts.end()) crit.push_back(upper(primitive(x)));
  std::sort(crit.begin(), crit.end(), angle_less);
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<Vec2i> out;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    out.push_back(crit[i]);
    // the wrap-around gap closes at -crit[0]
    out.push_back(i + 1 < crit.size() ? crit[i] + crit[i + 1] : crit[i] - crit[0]);
  }
  return out;
}

bool parallel(Vec2i a, Vec2i b) { return cross(a, b) == 0; }

// Sides of [-rho,rho]^2 where the ray x + s d (s > 0) leaves the square:
// bit 0 vertical side (x = +-rho), bit 1 horizontal side (y = +-rho).
int exit_sides(Vec2i x, Vec2i d, int rho) {
  Rational best;
  int sides = 0;
  bool have = false;
  auto consider = [&](int comp_x, int comp_d, int bit) {
    if (comp_d == 0) return;
    const Rational s(static_cast<std::int64_t>((comp_d > 0 ? rho : -rho) - comp_x), comp_d);
    if (!have || s < best) {
      best = s;
      sides = bit;
      have = true;
    } else if (s == best) {
      sides |= bit;
    }
  };
  consider(x.x, d.x, 1);
  consider(x.y, d.y, 2);
  return sides;
}

}  // namespace

int lambda_of_line(const Neighborhood& nbhd, Vec2i x, Vec2i dir) {
  if (dir.x == 0 && dir.y == 0) throw std::invalid_argument("line direction must be nonzero");
  return cut_size(nbhd.offsets(), x, dir);
}

int lambda_star(const Neighborhood& nbhd, Vec2i x) {
  if (x == Vec2i{0, 0}) throw std::invalid_argument("lambda_star needs x != 0");
  if (!nbhd.contains(x)) throw std::invalid_argument("x is not a site of the neighborhood");
  int best = std::numeric_limits<int>::max();
  for (Vec2i d : line_directions(nbhd.offsets(), x))
    if (!parallel(d, x)) best = std::min(best, cut_size(nbhd.offsets(), x, d));
  return best;
}

int lambda_star(Vec2i x, int rho) { return lambda_star(Neighborhood::box(rho), x); }

int lambda_star_adjacent_sides(Vec2i x, int rho) {
  const Neighborhood n = Neighborhood::box(rho);
  if (x == Vec2i{0, 0} || !n.contains(x)) throw std::invalid_argument("x must be a nonzero site of the box");
  int best = std::numeric_limits<int>::max();
  for (Vec2i d : line_directions(n.offsets(), x)) {
    if (parallel(d, x)) continue;
    const int fwd = exit_sides(x, d, rho), back = exit_sides(x, -d, rho);
    const bool adjacent = ((fwd & 1) && (back & 2)) || ((fwd & 2) && (back & 1));
    if (adjacent) best = std::min(best, cut_size(n.offsets(), x, d));
  }
  return best;
}

std::set<int> lambda_values(int rho) {
  if (rho < 1) throw std::invalid_argument("range must be positive");
  const Neighborhood n = Neighborhood::box(rho);
  std::set<int> out;
  // the box is invariant under the dihedral group; 0 <= b <= a covers every orbit
  for (int a = 1; a <= rho; ++a)
    for (int b = 0; b <= a; ++b) out.insert(lambda_star(n, {a, b}));
  return out;
}

std::int64_t distinct_products(int nmax) {
  if (nmax < 1) throw std::invalid_argument("nmax must be positive");
  std::vector<char> seen(static_cast<std::size_t>(nmax) * nmax + 1, 0);
  std::int64_t count = 0;
  for (int m = 1; m <= nmax; ++m)
    for (int k = m; k <= nmax; ++k)
      if (!seen[static_cast<std::size_t>(m) * k]) {
        seen[static_cast<std::size_t>(m) * k] = 1;
        ++count;
      }
  return count;
}

}  // namespace polygrowth
