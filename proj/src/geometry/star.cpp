#include <algorithm>
#include <map>
#include <sstream>

#include "detail.hpp"

namespace polygrowth {

StarBoundary build_star(std::span<const Vec2i> dirs, const std::function<std::int64_t(std::size_t)>& scaled,
                        const std::function<Vec2i(std::size_t)>& attaining) {
  const std::size_t m = dirs.size() / 2;
  if (m < 3) throw NotSupercritical("neighborhood does not span the plane");
  std::vector<RPoint> at(m);
  std::vector<Vec2i> tag(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2i c = dirs[2 * i];
    const std::int64_t w = scaled(2 * i);
    if (w <= 0) {
      std::ostringstream os;
      os << "direction " << c << " does not advance";
      throw NotSupercritical(os.str());
    }
    at[i] = {Rational(c.x, w), Rational(c.y, w)};
    if (cross(c, dirs[(2 * i + 2) % dirs.size()]) <= 0) throw NotSupercritical("gap of half a turn between critical directions");
    if (scaled(2 * i + 1) <= 0) {
      std::ostringstream os;
      os << "direction " << dirs[2 * i + 1] << " does not advance";
      throw NotSupercritical(os.str());
    }
    tag[i] = attaining(2 * i + 1);
  }
  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i)
    if (tag[(i + m - 1) % m] != tag[i]) {
      start = i;
      break;
    }
  if (start == m) throw std::logic_error("star boundary on a single line");
  StarBoundary s;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = (start + k) % m;
    if (tag[(i + m - 1) % m] == tag[i]) continue;
    s.vertices.push_back(at[i]);
    s.edge_tags.push_back(tag[i]);
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Vec2i t = s.edge_tags[k];
    const RPoint& a = s.vertices[k];
    const RPoint& b = s.vertices[(k + 1) % s.size()];
    if (rdot(-t, a) != Rational(1) || rdot(-t, b) != Rational(1))
      throw std::logic_error("star edge off its K-line");
  }
  return s;
}

StarBoundary k_star(const MonotoneRule& rule) {
  if (!rule.is_deterministic()) return k_star(rule.skeleton());
  const Neighborhood& n = rule.neighborhood();
  const auto dirs = star_directions(n);
  if (auto* t = std::get_if<Threshold>(&rule.kind())) {
    ThresholdSpeedTable table(n, dirs, t->theta);
    return k_star_threshold(table, t->theta);
  }
  return build_star(
      dirs, [&](std::size_t i) { return skeleton_depth(rule, dirs[i]); },
      [&](std::size_t i) {
        const std::int64_t w = skeleton_depth(rule, dirs[i]);
        for (Vec2i x : n.offsets())
          if (-dot(x, dirs[i]) == w) return x;
        throw std::logic_error("no site attains the speed");
      });
}

StarBoundary k_star_threshold(const ThresholdSpeedTable& table, int theta) {
  const auto dirs = table.directions();
  return build_star(
      dirs, [&](std::size_t i) { return table.scaled(i, theta); },
      [&](std::size_t i) { return table.attaining(i, theta); });
}

Polygon canonical(Polygon p) {
  if (p.empty()) return p;
  auto lowest = std::min_element(p.begin(), p.end(), [](const RPoint& a, const RPoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  std::rotate(p.begin(), lowest, p.end());
  return p;
}

Polygon convex_hull(std::span<const RPoint> points) {
  std::vector<RPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const RPoint& a, const RPoint& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && rcross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && rcross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return canonical(std::move(h));
}

Polygon polar(const Polygon& p) {
  if (p.size() < 3) throw std::domain_error("polar needs a polygon with interior");
  Polygon out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const RPoint& a = p[i];
    const RPoint& b = p[(i + 1) % p.size()];
    const RPoint n{b.y - a.y, a.x - b.x};
    const Rational c = rdot(n, a);
    if (c.sign() <= 0) throw std::domain_error("origin is not strictly inside the polygon");
    out.push_back({n.x / c, n.y / c});
  }
  return canonical(std::move(out));
}

Polygon wulff_shape(const StarBoundary& star) { return polar(convex_hull(star.vertices)); }
Polygon wulff_shape(const MonotoneRule& rule) { return wulff_shape(k_star(rule)); }

bool contains(const Polygon& convex, const RPoint& q) {
  for (std::size_t i = 0; i < convex.size(); ++i) {
    const RPoint& a = convex[i];
    const RPoint& b = convex[(i + 1) % convex.size()];
    if (rcross(b - a, q - a).sign() < 0) return false;
  }
  return !convex.empty();
}

namespace {

// Hull edges (by index) whose line carries q; q is assumed inside the hull.
std::vector<std::size_t> hull_edges_through(const Polygon& h, const RPoint& q) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (rcross(h[(j + 1) % h.size()] - h[j], q - h[j]).sign() == 0) out.push_back(j);
  return out;
}

bool share(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (auto i : a)
    if (std::find(b.begin(), b.end(), i) != b.end()) return true;
  return false;
}

}  // namespace

KPrime k_prime(const StarBoundary& star) {
  const Polygon h = convex_hull(star.vertices);
  const std::size_t n = star.size();
  std::vector<std::vector<std::size_t>> on(n);
  for (std::size_t i = 0; i < n; ++i) on[i] = hull_edges_through(h, star.vertices[i]);
  KPrime kp;
  std::vector<char> endpoint(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (share(on[i], on[j])) {
      kp.segments.push_back({star.vertices[i], star.vertices[j], star.edge_tags[i]});
      endpoint[i] = endpoint[j] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!on[i].empty() && !endpoint[i]) kp.points.push_back(star.vertices[i]);
  return kp;
}

std::string to_string(const CaseLabel& c) {
  if (!c.supercritical) return "not supercritical";
  std::ostringstream os;
  os << "Case " << static_cast<int>(c.kind) << ", supercritical, " << (c.quasi_additive ? "quasi-additive" : "not quasi-additive");
  return os.str();
}

CaseLabel classify(const StarBoundary& star) {
  const KPrime kp = k_prime(star);
  CaseLabel c;
  c.quasi_additive = kp.segments.size() == star.size();
  if (!kp.segments.empty()) {
    c.kind = Case::Three;
    return c;
  }
  const auto& p = kp.points;
  for (std::size_t i = 0; i < p.size() && c.kind == Case::One; ++i)
    for (std::size_t j = i + 1; j < p.size() && c.kind == Case::One; ++j)
      for (std::size_t k = j + 1; k < p.size(); ++k)
        if (rcross(p[j] - p[i], p[k] - p[i]).sign() == 0) {
          c.kind = Case::Two;
          break;
        }
  return c;
}

CaseLabel classify(const MonotoneRule& rule) { return classify(k_star(rule)); }

}  // namespace polygrowth
