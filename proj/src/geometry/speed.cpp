#include <algorithm>
#include <limits>
#include <sstream>

#include "detail.hpp"

namespace polygrowth {

Vec2i primitive(Vec2i v) {
  if (v.x == 0 && v.y == 0) throw std::invalid_argument("zero vector has no direction");
  const int g = std::gcd(v.x, v.y);
  return {v.x / g, v.y / g};
}

namespace {

std::int64_t threshold_depth(const Neighborhood& n, int theta, Vec2i v) {
  std::vector<std::int64_t> d;
  d.reserve(n.size());
  for (Vec2i x : n.offsets())
    if (x != Vec2i{0, 0}) d.push_back(-dot(x, v));
  if (theta > static_cast<int>(d.size())) return 0;
  std::nth_element(d.begin(), d.begin() + (theta - 1), d.end(), std::greater<>());
  return std::max<std::int64_t>(d[theta - 1], 0);
}

std::int64_t antichain_depth(const MonotoneRule& r, Vec2i v) {
  const auto& n = r.neighborhood();
  std::int64_t best = 0;
  for (Subset m : r.minimal_masks()) {
    if (m == 0) throw std::invalid_argument("rule lets cells appear without contact");
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    for (Subset rest = m; rest; rest &= rest - 1) lo = std::min(lo, -dot(n[std::countr_zero(rest)], v));
    best = std::max(best, lo);
  }
  return best;
}

}  // namespace

std::int64_t skeleton_depth(const MonotoneRule& det, Vec2i v) {
  if (auto* t = std::get_if<Threshold>(&det.kind())) return threshold_depth(det.neighborhood(), t->theta, v);
  return antichain_depth(det, v);
}

Speed speed(const MonotoneRule& rule, Vec2i v) {
  if (v.x == 0 && v.y == 0) throw std::invalid_argument("speed needs a nonzero direction");
  const std::int64_t w = rule.is_deterministic() ? skeleton_depth(rule, v) : skeleton_depth(rule.skeleton(), v);
  return {w, w <= 0};
}

std::vector<Vec2i> critical_directions(const Neighborhood& nbhd) {
  int r = nbhd.radius();
  const int span = 4 * r + 1;  // differences live in [-2r, 2r]^2
  std::vector<char> diff(static_cast<std::size_t>(span) * span, 0), dir(diff.size(), 0);
  auto idx = [&](Vec2i d) { return static_cast<std::size_t>(d.y + 2 * r) * span + (d.x + 2 * r); };
  std::vector<Vec2i> pts(nbhd.offsets().begin(), nbhd.offsets().end());
  if (!nbhd.contains({0, 0})) pts.push_back({0, 0});
  for (Vec2i a : pts)
    for (Vec2i b : pts)
      if (a != b) diff[idx(a - b)] = 1;
  std::vector<Vec2i> out;
  for (int y = -2 * r; y <= 2 * r; ++y)
    for (int x = -2 * r; x <= 2 * r; ++x) {
      if (!diff[idx({x, y})]) continue;
      const Vec2i p = primitive({-y, x});
      for (Vec2i q : {p, -p})
        if (!dir[idx(q)]) {
          dir[idx(q)] = 1;
          out.push_back(q);
        }
    }
  std::sort(out.begin(), out.end(), angle_less);
  return out;
}

std::vector<Vec2i> star_directions(const Neighborhood& nbhd) {
  const auto c = critical_directions(nbhd);
  std::vector<Vec2i> out;
  out.reserve(2 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.push_back(c[i]);
    out.push_back(c[i] + c[(i + 1) % c.size()]);
  }
  return out;
}

ThresholdSpeedTable::ThresholdSpeedTable(const Neighborhood& nbhd, std::vector<Vec2i> directions, int max_theta)
    : nbhd_(nbhd), dirs_(std::move(directions)), max_theta_(max_theta) {
  if (max_theta < 1) throw std::invalid_argument("max_theta must be positive");
  if (nbhd.size() > 65535) throw std::invalid_argument("neighborhood too large");
  const std::size_t k = static_cast<std::size_t>(max_theta);
  depth_.assign(dirs_.size() * k, 0);
  site_.assign(dirs_.size() * k, 0);
  std::vector<std::pair<std::int32_t, std::uint16_t>> buf;
  for (std::size_t d = 0; d < dirs_.size(); ++d) {
    buf.clear();
    for (std::size_t i = 0; i < nbhd.size(); ++i)
      if (nbhd[i] != Vec2i{0, 0})
        buf.push_back({static_cast<std::int32_t>(-dot(nbhd[i], dirs_[d])), static_cast<std::uint16_t>(i)});
    const std::size_t top = std::min(k, buf.size());
    std::partial_sort(buf.begin(), buf.begin() + top, buf.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t t = 0; t < k; ++t) {
      depth_[d * k + t] = t < buf.size() ? buf[t].first : 0;
      site_[d * k + t] = t < buf.size() ? buf[t].second : static_cast<std::uint16_t>(nbhd.origin_index());
    }
  }
}

std::int64_t ThresholdSpeedTable::scaled(std::size_t dir, int theta) const {
  if (theta < 1 || theta > max_theta_) throw std::out_of_range("threshold outside table");
  return std::max(0, depth_[dir * max_theta_ + theta - 1]);
}

Vec2i ThresholdSpeedTable::attaining(std::size_t dir, int theta) const {
  if (theta < 1 || theta > max_theta_) throw std::out_of_range("threshold outside table");
  return nbhd_[site_[dir * max_theta_ + theta - 1]];
}

}  // namespace polygrowth
