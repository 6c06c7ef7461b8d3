#include <algorithm>
#include <cmath>
#include <thread>

#include "polygrowth/random_sim.hpp"

namespace polygrowth {

Dihedral strip_reduction(Vec2i v) {
  for (Dihedral g : Dihedral::all()) {
    const Vec2i w = g.apply(v);
    if (w.x <= 0 && w.y > 0 && -w.x <= w.y) return g;
  }
  throw std::invalid_argument("strip direction must be nonzero");
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Columns 0..M-1 of the strip. Column x holds every cell below base[x] plus
// the ragged part bits[x] (bits[x][i] is cell base[x] + i; trailing entry
// always occupied). Column x + kM is column x shifted up by k*shift.
class Strip {
 public:
  Strip(int width, std::int64_t a, std::int64_t b, std::vector<Vec2i> offsets, ProbabilityFn prob, RngKey key)
      : m_(width), shift_(a * width / b), offsets_(std::move(offsets)), prob_(std::move(prob)), key_(key),
        base_(width), bits_(width) {
    for (Vec2i o : offsets_) radius_ = std::max(radius_, chebyshev(o));
    for (int x = 0; x < m_; ++x) base_[x] = floor_div(a * x, b) + 1;
  }

  bool occupied(std::int64_t x, std::int64_t y) const {
    const std::int64_t k = floor_div(x, m_);
    const auto xm = static_cast<std::size_t>(x - k * m_);
    const std::int64_t i = y - k * shift_ - base_[xm];
    if (i < 0) return true;
    const auto& col = bits_[xm];
    return i < static_cast<std::int64_t>(col.size()) && col[static_cast<std::size_t>(i)];
  }

  std::int64_t top(std::size_t x) const { return base_[x] + static_cast<std::int64_t>(bits_[x].size()) - 1; }
  std::int64_t top_eff(std::int64_t x) const {
    const std::int64_t k = floor_div(x, m_);
    return top(static_cast<std::size_t>(x - k * m_)) + k * shift_;
  }
  std::int64_t base(std::size_t x) const { return base_[x]; }
  std::int64_t sum_heights() const {
    std::int64_t s = 0;
    for (int x = 0; x < m_; ++x) s += top(static_cast<std::size_t>(x)) + 1;
    return s;
  }

  void step(std::int64_t t, unsigned threads) {
    std::vector<std::vector<std::pair<int, std::int64_t>>> parts(std::max(1U, threads));
    auto work = [&](int lo, int hi, std::vector<std::pair<int, std::int64_t>>& out) {
      for (int x = lo; x < hi; ++x) {
        std::int64_t hi_y = top_eff(x);
        for (int dx = -radius_; dx <= radius_; ++dx) hi_y = std::max(hi_y, top_eff(x + dx));
        hi_y += radius_;
        for (std::int64_t y = base_[x]; y <= hi_y; ++y) {
          if (occupied(x, y)) continue;
          Subset s = 0;
          for (std::size_t i = 0; i < offsets_.size(); ++i)
            if (occupied(x + offsets_[i].x, y + offsets_[i].y)) s |= Subset{1} << i;
          const double p = prob_(s);
          if (p >= 1.0 || (p > 0.0 && uniform01(key_, x, y, t) <= p)) out.push_back({x, y});
        }
      }
    };
    if (parts.size() == 1) {
      work(0, m_, parts[0]);
    } else {
      std::vector<std::thread> pool;
      const int chunk = (m_ + static_cast<int>(parts.size()) - 1) / static_cast<int>(parts.size());
      for (std::size_t k = 0; k < parts.size(); ++k) {
        const int lo = static_cast<int>(k) * chunk, hi = std::min(m_, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi, std::ref(parts[k]));
      }
      for (auto& th : pool) th.join();
    }
    for (const auto& part : parts)
      for (auto [x, y] : part) {
        auto& col = bits_[x];
        const auto i = static_cast<std::size_t>(y - base_[x]);
        if (i >= col.size()) col.resize(i + 1, 0);
        col[i] = 1;
      }
    for (int x = 0; x < m_; ++x) {
      auto& col = bits_[x];
      std::size_t lead = 0;
      while (lead < col.size() && col[lead]) ++lead;
      if (lead) {
        col.erase(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(lead));
        base_[x] += static_cast<std::int64_t>(lead);
      }
    }
  }

 private:
  int m_;
  std::int64_t shift_;
  std::vector<Vec2i> offsets_;
  ProbabilityFn prob_;
  RngKey key_;
  int radius_ = 0;
  std::vector<std::int64_t> base_;
  std::vector<std::vector<char>> bits_;
};

}  // namespace

VelocityEstimate strip_velocity(const PerturbationSpec& spec, const StripConfig& cfg, RngKey key) {
  if (cfg.direction.x == 0 && cfg.direction.y == 0) throw std::invalid_argument("strip direction must be nonzero");
  if (cfg.width < 1) throw std::invalid_argument("strip width must be positive");
  if (cfg.blocks < 2) throw std::invalid_argument("at least two blocks are needed for an error estimate");
  if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0)) throw std::invalid_argument("burn-in fraction must lie in [0,1)");
  const Vec2i v = primitive(cfg.direction);
  const Dihedral g = strip_reduction(v);
  const Vec2i w = g.apply(v);
  const std::int64_t a = -w.x, b = w.y;
  const int width = static_cast<int>(((cfg.width + b - 1) / b) * b);

  const std::int64_t horizon = cfg.horizon;
  const std::int64_t measured = horizon - static_cast<std::int64_t>(std::floor(cfg.burn_in * static_cast<double>(horizon)));
  std::int64_t block = measured / cfg.blocks;
  if (block >= b) block -= block % b;
  if (block <= 0) throw std::invalid_argument("horizon too short for the burn-in and block count");
  const std::int64_t start = horizon - block * cfg.blocks;

  if (cfg.replicas < 1) throw std::invalid_argument("at least one replica is needed");
  const PerturbationSpec local = spec.transformed(g);
  const std::vector<Vec2i> offsets(local.neighborhood().offsets().begin(), local.neighborhood().offsets().end());

  VelocityEstimate est;
  est.direction = cfg.direction;
  est.seed = key.seed;
  est.replica = key.replica;
  est.width = width;
  est.kappa = Rational(a, b);
  est.reduction = g;
  est.samples = block * cfg.blocks * cfg.replicas;
  est.mean_h0.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  est.mean_h1.assign(static_cast<std::size_t>(horizon) + 1, 0.0);

  const double kappa = static_cast<double>(a) / static_cast<double>(b);
  const double tilt_mean = kappa * (width - 1) / 2.0;
  const double per_replica = 1.0 / cfg.replicas;
  // Exact height increments: per block of the single replica, or per replica.
  std::vector<__int128> increments;
  __int128 total = 0;
  for (int r = 0; r < cfg.replicas; ++r) {
    const RngKey sub{key.seed, key.replica + (static_cast<std::uint64_t>(r) << 32)};
    Strip strip(width, a, b, offsets, local.probability_fn(), sub);
    std::vector<std::int64_t> sums;
    sums.reserve(static_cast<std::size_t>(horizon) + 1);
    auto record = [&] {
      const std::int64_t s1 = strip.sum_heights();
      std::int64_t s0 = 0;
      for (int x = 0; x < width; ++x) {
        s0 += strip.base(static_cast<std::size_t>(x));
        if (strip.base(static_cast<std::size_t>(x)) > strip.top(static_cast<std::size_t>(x)) + 1) ++est.order_violations;
      }
      const std::size_t t = sums.size();
      sums.push_back(s1);
      est.mean_h1[t] += (static_cast<double>(s1) / width - tilt_mean) * per_replica;
      est.mean_h0[t] += (static_cast<double>(s0) / width - tilt_mean) * per_replica;
    };
    record();
    for (std::int64_t t = 0; t < horizon; ++t) {
      strip.step(t, cfg.threads);
      record();
    }
    total += sums[horizon] - sums[start];
    if (cfg.replicas == 1) {
      for (int k = 0; k < cfg.blocks; ++k) {
        const auto lo = static_cast<std::size_t>(start + k * block), hi = lo + static_cast<std::size_t>(block);
        increments.push_back(sums[hi] - sums[lo]);
      }
    } else {
      increments.push_back(sums[horizon] - sums[start]);
    }
  }

  const double cos_phi = static_cast<double>(b) / std::sqrt(static_cast<double>(a * a + b * b));
  const std::int64_t steps = block * cfg.blocks;
  est.vertical_speed = Rational(static_cast<std::int64_t>(total), width * steps * cfg.replicas);
  est.estimate = est.vertical_speed.to_double() * cos_phi;
  // spread from exact integers, so lockstep growth gives exactly zero
  const auto n = static_cast<std::int64_t>(increments.size());
  __int128 sum = 0, sum_sq = 0;
  for (__int128 inc : increments) {
    sum += inc;
    sum_sq += inc * inc;
  }
  const __int128 spread = static_cast<__int128>(n) * sum_sq - sum * sum;
  const double span = static_cast<double>(cfg.replicas == 1 ? block : steps);
  const double unit = cos_phi / (static_cast<double>(width) * span);
  // n*sum_sq - sum^2 = n(n-1)s^2, so this is the variance of the mean increment
  const double var_mean = static_cast<double>(spread) / (static_cast<double>(n) * n * (n - 1));
  est.stderr_ = std::sqrt(var_mean) * unit;
  return est;
}

std::vector<VelocityEstimate> estimate_k_polygon(const PerturbationSpec& spec, std::span<const Vec2i> directions,
                                                 const StripConfig& tmpl, std::uint64_t seed) {
  std::vector<VelocityEstimate> out;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    StripConfig cfg = tmpl;
    cfg.direction = directions[i];
    out.push_back(strip_velocity(spec, cfg, RngKey{seed, i}));
  }
  return out;
}

}  // namespace polygrowth
