#include <algorithm>
#include <map>

#include "detail.hpp"

namespace polygrowth {

Survey survey(int rho, int extra) {
  if (rho < 1 || rho > 16) throw std::invalid_argument("survey supports 1 <= rho <= 16");
  const Neighborhood n = Neighborhood::box(rho);
  const int top = rho * (2 * rho + 1);
  const int last = top + std::max(extra, 0);
  ThresholdSpeedTable table(n, star_directions(n), last);
  Survey s;
  s.rho = rho;
  s.lambda_values = lambda_values(rho);
  s.routes_agree = true;
  for (int theta = 1; theta <= last; ++theta) {
    SurveyRow row;
    row.theta = theta;
    try {
      const StarBoundary star = k_star_threshold(table, theta);
      const KPrime kp = k_prime(star);
      row.supercritical = true;
      row.label = classify(star);
      row.star_vertices = star.size();
      row.kprime_points = kp.points.size();
      row.kprime_segments = kp.segments.size();
      row.exactly_stable = !s.lambda_values.count(theta);
    } catch (const NotSupercritical&) {
      row.supercritical = false;
      row.label.supercritical = false;
    }
    if (theta <= top && row.supercritical != true) s.routes_agree = false;
    if (theta <= top && (row.label.kind == Case::Three) != (s.lambda_values.count(theta) > 0)) s.routes_agree = false;
    s.rows.push_back(row);
  }
  return s;
}

std::vector<StarBoundary> k_family(int rho) {
  if (rho < 1 || rho > 16) throw std::invalid_argument("k_family supports 1 <= rho <= 16");
  const Neighborhood n = Neighborhood::box(rho);
  const int top = rho * (2 * rho + 1);
  ThresholdSpeedTable table(n, star_directions(n), top);
  std::vector<StarBoundary> out;
  for (int theta = 1; theta <= top; ++theta) out.push_back(k_star_threshold(table, theta));
  return out;
}

bool family_nested(int rho) {
  const Neighborhood n = Neighborhood::box(rho);
  const int top = rho * (2 * rho + 1);
  ThresholdSpeedTable table(n, star_directions(n), top);
  // both boundaries are straight between consecutive critical directions,
  // so comparing radii on the sampled directions decides containment
  for (std::size_t d = 0; d < table.directions().size(); ++d)
    for (int theta = 1; theta < top; ++theta)
      if (table.scaled(d, theta) < table.scaled(d, theta + 1)) return false;
  return true;
}

bool family_meets_discretely(const std::vector<StarBoundary>& family) {
  struct Piece {
    std::size_t member;
    Rational lo, hi;
  };
  std::map<std::pair<int, int>, std::vector<Piece>> by_line;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const auto& s = family[m];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Vec2i t = s.edge_tags[i];
      const Vec2i along{-t.y, t.x};
      Rational a = rdot(along, s.vertices[i]), b = rdot(along, s.vertices[(i + 1) % s.size()]);
      if (b < a) std::swap(a, b);
      by_line[{t.x, t.y}].push_back({m, a, b});
    }
  }
  for (const auto& [line, pieces] : by_line)
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        if (pieces[i].member == pieces[j].member) continue;
        if (std::max(pieces[i].lo, pieces[j].lo) < std::min(pieces[i].hi, pieces[j].hi)) return false;
      }
  return true;
}

std::vector<std::pair<Vec2i, int>> kline_segment_counts(const std::vector<StarBoundary>& family) {
  std::map<Vec2i, int> counts;
  for (const auto& s : family)
    for (Vec2i t : s.edge_tags) counts.emplace(t, 0);
  for (const auto& s : family)
    for (const auto& seg : k_prime(s).segments) ++counts[seg.tag];
  return {counts.begin(), counts.end()};
}

LatticeState half_space_state(const MonotoneRule& rule, Vec2i v, std::int64_t offset, Rect window, bool exact) {
  HalfSpace h{v, Rational(offset), std::nullopt};
  if (exact) {
    if (!rule.is_deterministic()) throw std::invalid_argument("exact half-space evolution needs a deterministic rule");
    h.advance = speed(rule, v).scaled;
  }
  return background_state(h, window);
}

std::string to_string(FillVerdict v) {
  switch (v) {
    case FillVerdict::GrowsLikeL: return "GrowsLikeL";
    case FillVerdict::Stalled: return "Stalled";
    default: return "Inconclusive";
  }
}

std::vector<Vec2i> lattice_points(const Polygon& p, const RPoint& center, const Rational& scale) {
  std::vector<Vec2i> out;
  if (p.empty()) return out;
  Rational x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
  for (const auto& q : p) {
    x0 = std::min(x0, q.x);
    x1 = std::max(x1, q.x);
    y0 = std::min(y0, q.y);
    y1 = std::max(y1, q.y);
  }
  const auto lo_x = (center.x + scale * x0).floor(), hi_x = (center.x + scale * x1).ceil();
  const auto lo_y = (center.y + scale * y0).floor(), hi_y = (center.y + scale * y1).ceil();
  for (auto y = lo_y; y <= hi_y; ++y)
    for (auto x = lo_x; x <= hi_x; ++x) {
      const RPoint rel{Rational(x) - center.x, Rational(y) - center.y};
      bool in;
      if (scale.sign() == 0) in = rel.x.sign() == 0 && rel.y.sign() == 0;
      else in = contains(p, {rel.x / scale, rel.y / scale});
      if (in) out.push_back({static_cast<int>(x), static_cast<int>(y)});
    }
  return out;
}

FillVerdict fills_space_probe(const MonotoneRule& rule, std::span<const Vec2i> seed, std::int64_t horizon) {
  if (seed.empty()) return FillVerdict::Stalled;
  Stepper st(rule.neighborhood(), deterministic_probability(rule), finite_state(seed));
  for (std::int64_t t = 0; t < horizon; ++t)
    if (st.step() == 0) return FillVerdict::Stalled;
  Polygon l;
  try {
    l = wulff_shape(rule);
  } catch (const NotSupercritical&) {
    return FillVerdict::Inconclusive;
  }
  int x0 = seed[0].x, x1 = seed[0].x, y0 = seed[0].y, y1 = seed[0].y;
  for (Vec2i c : seed) {
    x0 = std::min(x0, c.x);
    x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y);
    y1 = std::max(y1, c.y);
  }
  const RPoint center{Rational(x0 + x1, 2), Rational(y0 + y1, 2)};
  for (Vec2i c : lattice_points(l, center, Rational(horizon, 2)))
    if (!st.state().grid.get(c)) return FillVerdict::Inconclusive;
  return FillVerdict::GrowsLikeL;
}

}  // namespace polygrowth
