#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polygrowth/random_sim.hpp"

namespace polygrowth {

namespace {

struct P2 {
  double x, y;
};

double seg_dist(P2 q, P2 a, P2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(q.x - (a.x + s * dx), q.y - (a.y + s * dy));
}

double dist_to_convex(P2 q, const std::vector<P2>& poly) {
  if (poly.size() == 1) return std::hypot(q.x - poly[0].x, q.y - poly[0].y);
  bool inside = poly.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x) < 0) inside = false;
    best = std::min(best, seg_dist(q, a, b));
  }
  return inside ? 0.0 : best;
}

// Nearest occupied cell to a real point, by expanding Chebyshev rings.
double nearest_occupied(const BitGrid& g, double qx, double qy, int give_up) {
  const int cx = static_cast<int>(std::lround(qx)), cy = static_cast<int>(std::lround(qy));
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= give_up; ++k) {
    if (k - 1 > best) break;
    for (int dy = -k; dy <= k; ++dy)
      for (int dx = -k; dx <= k; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
        if (g.get({cx + dx, cy + dy})) best = std::min(best, std::hypot(cx + dx - qx, cy + dy - qy));
      }
  }
  return best;
}

std::vector<P2> scaled(const Polygon& p, double t) {
  std::vector<P2> out;
  for (const auto& v : p) out.push_back({v.x.to_double() * t, v.y.to_double() * t});
  return out;
}

}  // namespace

double hausdorff_to_polygon(std::span<const Vec2i> cells, const Polygon& p, double t, Vec2i shift) {
  if (cells.empty()) throw std::invalid_argument("Hausdorff distance of an empty state");
  std::vector<P2> poly = scaled(p, t);
  for (auto& v : poly) {
    v.x += shift.x;
    v.y += shift.y;
  }
  // (a) only row extremes matter: distance to a convex set is convex along a row
  std::map<int, std::pair<int, int>> rows;
  Rect box{cells[0].x, cells[0].y, cells[0].x + 1, cells[0].y + 1};
  for (Vec2i c : cells) {
    auto [it, fresh] = rows.try_emplace(c.y, c.x, c.x);
    if (!fresh) {
      it->second.first = std::min(it->second.first, c.x);
      it->second.second = std::max(it->second.second, c.x);
    }
    box = {std::min(box.x0, c.x), std::min(box.y0, c.y), std::max(box.x1, c.x + 1), std::max(box.y1, c.y + 1)};
  }
  double d = 0.0;
  for (const auto& [y, span] : rows) {
    d = std::max(d, dist_to_convex({static_cast<double>(span.first), static_cast<double>(y)}, poly));
    d = std::max(d, dist_to_convex({static_cast<double>(span.second), static_cast<double>(y)}, poly));
  }
  // (b) boundary samples at spacing <= 1
  BitGrid g(box);
  for (Vec2i c : cells) g.set(c);
  const int give_up = box.width() + box.height() + static_cast<int>(std::ceil(t)) * 4 + 8;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const int n = std::max(1, static_cast<int>(std::ceil(std::hypot(b.x - a.x, b.y - a.y))));
    for (int k = 0; k < n; ++k) {
      const double s = static_cast<double>(k) / n;
      d = std::max(d, nearest_occupied(g, a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), give_up));
    }
  }
  return d;
}

double hausdorff_to_polygon(const LatticeState& state, const Polygon& p, double t) {
  const auto cells = state.cells();
  return hausdorff_to_polygon(cells, p, t);
}

std::vector<Vec2i> shape_seed(const Polygon& l, std::int64_t t0) {
  return lattice_points(l, RPoint{Rational(0), Rational(0)}, Rational(t0));
}

double CornerLagTrace::slope(std::int64_t t_lo, std::int64_t t_hi) const {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_lo || times[k] > t_hi) continue;
    const double x = static_cast<double>(times[k]), y = max_lag[k];
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || den == 0.0) throw std::invalid_argument("not enough samples for a slope");
  return (n * sxy - sx * sy) / den;
}

CornerLagTrace corner_lag(const PerturbationSpec& spec, std::int64_t horizon, RngKey key, std::int64_t seed_scale,
                          std::int64_t sample_every, unsigned threads) {
  if (sample_every < 1) throw std::invalid_argument("sample interval must be positive");
  const Polygon l = wulff_shape(spec.skeleton());
  CornerLagTrace tr;
  tr.corners = l;
  tr.seed_scale = seed_scale;
  const auto seed = shape_seed(l, seed_scale);
  Stepper st(spec.neighborhood(), spec.probability_fn(), finite_state(seed), StepOptions{key, threads});
  for (std::int64_t t = 1; t <= horizon; ++t) {
    st.step();
    if (t % sample_every != 0 && t != horizon) continue;
    const double scale = static_cast<double>(t + seed_scale);
    std::vector<double> row;
    double mx = 0.0;
    for (const auto& c : l) {
      const double v = nearest_occupied(st.state().grid, c.x.to_double() * scale, c.y.to_double() * scale,
                                        static_cast<int>(scale) * 4 + 16);
      row.push_back(v);
      mx = std::max(mx, v);
    }
    tr.times.push_back(t);
    tr.lag.push_back(std::move(row));
    tr.max_lag.push_back(mx);
  }
  return tr;
}

HoleRepair hole_repair(const MonotoneRule& rule, std::int64_t t0, const HoleSpec& hole, std::int64_t horizon) {
  if (!rule.is_deterministic()) throw std::invalid_argument("hole repair runs the deterministic dynamics");
  const Polygon l = wulff_shape(rule);
  const auto base = shape_seed(l, t0);
  const std::size_t n = l.size();
  const std::size_t i = static_cast<std::size_t>(((hole.index % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n));
  RPoint target = l[i];
  if (hole.where == HoleSpec::Where::EdgeMidpoint) {
    const RPoint& b = l[(i + 1) % n];
    target = {(target.x + b.x) / Rational(2), (target.y + b.y) / Rational(2)};
  }
  const double tx = target.x.to_double() * static_cast<double>(t0), ty = target.y.to_double() * static_cast<double>(t0);
  std::vector<Vec2i> order = base;
  std::stable_sort(order.begin(), order.end(), [&](Vec2i a, Vec2i b) {
    const double da = std::hypot(a.x - tx, a.y - ty), db = std::hypot(b.x - tx, b.y - ty);
    if (da != db) return da < db;
    return a < b;
  });
  HoleRepair out;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(hole.cells, 0)), order.size());
  out.hole.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Vec2i> holed;
  for (Vec2i c : base)
    if (std::find(out.hole.begin(), out.hole.end(), c) == out.hole.end()) holed.push_back(c);

  auto prob = deterministic_probability(rule);
  Stepper ref(rule.neighborhood(), prob, finite_state(base));
  Stepper alt(rule.neighborhood(), prob, finite_state(holed));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    ref.step();
    alt.step();
    std::int64_t deficit = 0;
    for (Vec2i c : ref.state().cells())
      if (!alt.state().grid.get(c)) ++deficit;
    out.deficit.push_back(deficit);
    if (deficit == 0) {
      out.repaired = true;
      out.repair_time = t;
      break;
    }
  }
  return out;
}

}  // namespace polygrowth
