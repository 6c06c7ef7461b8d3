#include "polygrowth/solvable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polygrowth::solvable {

namespace {

constexpr Vec2i kWest{-1, 0}, kEast{1, 0}, kSouthEast{1, -1}, kSouth{0, -1}, kNorthWest{-1, 1}, kNorth{0, 1};

bool sure(const std::vector<Vec2i>& s) {
  auto has = [&](Vec2i v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  return has(kWest) || has(kEast) || (has(kSouthEast) && has(kSouth)) || (has(kNorthWest) && has(kNorth)) ||
         has({0, 0});
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// One step of the recursion, h_t -> h_{t+1}.
void advance(std::vector<std::int64_t>& h, std::vector<std::int64_t>& next, double p, RngKey key, std::int64_t t) {
  next.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i);
    if (i > 0 && h[i - 1] > h[i]) {
      next[i] = h[i] + 1;
      continue;
    }
    const bool jump = p >= 1.0 || (p > 0.0 && uniform01(key, -t + n - 1, h[i] + n + 1, t) <= p);
    next[i] = h[i] + (jump ? 1 : 0);
  }
  h.swap(next);
}

}  // namespace

Neighborhood neighborhood() {
  return Neighborhood({{0, 0}, kWest, kEast, kSouth, kNorth, kSouthEast, kNorthWest});
}

MonotoneRule solvable_rule(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  const Neighborhood n = neighborhood();
  ProbTable t;
  const int o = n.origin_index();
  for (Subset s = 1; s < (Subset{1} << n.size()); ++s) {
    if ((s >> o) & 1U) continue;
    auto set = n.offsets_of(s);
    t.entries.push_back({set, sure(set) ? 1.0 : p});
  }
  return MonotoneRule(n, std::move(t));
}

MonotoneRule sure_rule() {
  return MonotoneRule(neighborhood(), Antichain{{{kWest}, {kEast}, {kSouthEast, kSouth}, {kNorthWest, kNorth}}});
}

double phi(double p, double y) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("phi: p outside [0,1]");
  constexpr double slack = 1e-12;
  if (!(y >= p - slack && y <= 1.0 + slack)) throw std::domain_error("phi: y outside [p,1]");
  y = std::clamp(y, p, 1.0);
  // 1-p-(1-2p)y + 2 sqrt(p(1-p)y(1-y)) = (sqrt(py) + sqrt((1-p)(1-y)))^2, free of cancellation
  const double s = std::sqrt(p * y) + std::sqrt((1.0 - p) * (1.0 - y));
  return s * s;
}

double y_zero(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("y_zero: p outside [0,1]");
  if (p >= 0.5) return 1.0;
  return 2.0 * (1.0 - p) / (3.0 - std::sqrt(8.0 * p));
}

ShapeCurve::ShapeCurve(double p, Region which) : p_(p), which_(which) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("shape: p outside [0,1]");
}

double ShapeCurve::left_w1(double y) const {
  if (y > 1.0) return kInf;
  if (y <= p_) return -1.0;
  return -phi(p_, y);
}

double ShapeCurve::right_w2(double y) const {
  if (y > 1.0) return -kInf;
  if (y <= p_) return 1.0 - y;
  return phi(p_, y) - y;
}

std::optional<std::pair<double, double>> ShapeCurve::row(double y) const {
  double lo = -kInf, hi = kInf;
  auto w1 = [&] { lo = std::max(lo, left_w1(y)); };
  auto w2 = [&] { hi = std::min(hi, right_w2(y)); };
  auto w3 = [&] { hi = std::min(hi, -left_w1(-y)); };
  auto w4 = [&] { lo = std::max(lo, -right_w2(-y)); };
  switch (which_) {
    case Region::W1: w1(); break;
    case Region::W2: w2(); break;
    case Region::W3: w3(); break;
    case Region::W4: w4(); break;
    case Region::Lp: w1(); w2(); w3(); w4(); break;
  }
  // the two curves meet at the top corner; absorb rounding there
  if (lo > hi + 1e-12) return std::nullopt;
  if (lo > hi) lo = hi = (lo + hi) / 2;
  return std::make_pair(lo, hi);
}

bool ShapeCurve::contains(double x, double y, double tol) const {
  auto r = row(y);
  return r && x >= r->first - tol && x <= r->second + tol;
}

double ShapeCurve::y_max() const {
  switch (which_) {
    case Region::W1:
    case Region::W2: return 1.0;
    case Region::Lp: return y_zero(p_);
    default: return kInf;
  }
}

double ShapeCurve::y_min() const {
  switch (which_) {
    case Region::W3:
    case Region::W4: return -1.0;
    case Region::Lp: return -y_zero(p_);
    default: return -kInf;
  }
}

std::vector<std::array<double, 3>> ShapeCurve::sample(int n) const {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  // unbounded regions are sampled over [-2, 2] in height
  const double lo = std::isfinite(y_min()) ? y_min() : -2.0;
  const double hi = std::isfinite(y_max()) ? y_max() : 2.0;
  std::vector<std::array<double, 3>> out;
  for (int k = 0; k <= n; ++k) {
    const double y = k == n ? hi : lo + (hi - lo) * k / n;
    if (auto r = row(y)) out.push_back({y, r->first, r->second});
  }
  return out;
}

std::vector<std::pair<double, double>> ShapeCurve::outline(int n) const {
  if (which_ != Region::Lp) throw std::invalid_argument("outline is defined for the bounded shape only");
  const auto s = sample(n);
  std::vector<std::pair<double, double>> out;
  for (const auto& r : s) out.push_back({r[2], r[0]});
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back({(*it)[1], (*it)[0]});
  return out;
}

ShapeCurve wedge_shape(double p, Region which) {
  if (which == Region::Lp) throw std::invalid_argument("wedge_shape takes W1..W4");
  return ShapeCurve(p, which);
}

ShapeCurve shape_Lp(double p) { return ShapeCurve(p, Region::Lp); }

double interface_limit(double p, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside [0,1]");
  const double y = 1.0 - alpha;
  if (y >= p) return phi(p, y) - alpha;
  return 1.0 - alpha;
}

InterfaceState simulate_interface(double p, std::int64_t horizon, RngKey key, std::int64_t sites, Start start) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  const std::int64_t n_sites = sites >= 0 ? sites : horizon + 1;
  InterfaceState s;
  s.h.resize(static_cast<std::size_t>(n_sites));
  for (std::int64_t n = 0; n < n_sites; ++n) s.h[n] = start == Start::Wedge ? -n : 0;
  std::vector<std::int64_t> next;
  for (std::int64_t t = 0; t < horizon; ++t) {
    advance(s.h, next, p, key, t);
    s.t = t + 1;
  }
  return s;
}

EquivalenceReport equivalence_check(double p, std::int64_t horizon, RngKey key) {
  if (horizon < 0 || horizon > 200) throw std::invalid_argument("equivalence check expects a small horizon");
  const MonotoneRule rule = solvable_rule(p);
  const PerturbationSpec spec = p > 0.0 ? PerturbationSpec::custom(rule) : PerturbationSpec::custom(solvable_rule(1.0));
  auto prob = p > 0.0 ? spec.probability_fn() : deterministic_probability(sure_rule());
  const int r = static_cast<int>(2 * horizon + 4);
  Wedge w{HalfSpace{{-1, 0}, Rational(0), std::nullopt}, HalfSpace{{0, 1}, Rational(0), std::nullopt}};
  Stepper st(neighborhood(), prob, background_state(w, Rect{-r, -r, r + 1, r + 1}), StepOptions{key, 1});

  EquivalenceReport rep;
  InterfaceState iface;
  iface.h.resize(static_cast<std::size_t>(horizon + 1));
  for (std::int64_t n = 0; n <= horizon; ++n) iface.h[n] = -n;
  std::vector<std::int64_t> scratch;
  for (std::int64_t t = 0; t < horizon; ++t) {
    advance(iface.h, scratch, p, key, t);
    st.step();
    const LatticeState& s = st.state();
    for (std::int64_t n = 0; n <= t + 1; ++n) {
      const int x = static_cast<int>(-(t + 1) + n);
      if (x < s.valid.x0 || x >= s.valid.x1) continue;
      // column top and lower-set check inside the valid window
      int top = s.valid.y0 - 1;
      bool seen_gap = false, bad = false;
      for (int y = s.valid.y0; y < s.valid.y1; ++y) {
        if (s.grid.get({x, y})) {
          if (seen_gap) bad = true;
          top = y;
        } else {
          seen_gap = true;
        }
      }
      if (bad) ++rep.lower_set_violations;
      if (top < s.valid.y0 || top >= s.valid.y1 - 1) continue;  // top not resolved in the window
      ++rep.compared;
      const std::int64_t planar = top - n;
      if (planar != iface.h[n]) {
        ++rep.mismatches;
        if (rep.first_divergence.empty()) {
          std::ostringstream os;
          os << "t=" << t + 1 << " n=" << n << " planar h=" << planar << " recursion h=" << iface.h[n];
          rep.first_divergence = os.str();
        }
      }
    }
  }
  rep.match = rep.mismatches == 0 && rep.lower_set_violations == 0;
  return rep;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double distributional_check(double p, std::int64_t horizon, std::int64_t n, int seeds, std::uint64_t base_seed) {
  if (n < 0 || n > horizon) throw std::invalid_argument("site index outside [0, horizon]");
  const MonotoneRule rule = solvable_rule(p);
  const PerturbationSpec spec = PerturbationSpec::custom(rule);
  std::vector<double> one_d, two_d;
  const int r = static_cast<int>(2 * horizon + 4);
  Wedge w{HalfSpace{{-1, 0}, Rational(0), std::nullopt}, HalfSpace{{0, 1}, Rational(0), std::nullopt}};
  const LatticeState start = background_state(w, Rect{-r, -r, r + 1, r + 1});
  for (int k = 0; k < seeds; ++k) {
    one_d.push_back(static_cast<double>(simulate_interface(p, horizon, RngKey{base_seed, static_cast<std::uint64_t>(k)}).h[n]));
    // independent stream for the planar runs
    Stepper st(neighborhood(), spec.probability_fn(), start,
               StepOptions{RngKey{base_seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(k)}, 1});
    for (std::int64_t t = 0; t < horizon; ++t) st.step();
    const int x = static_cast<int>(-horizon + n);
    int top = st.state().valid.y0 - 1;
    for (int y = st.state().valid.y0; y < st.state().valid.y1; ++y)
      if (st.state().grid.get({x, y})) top = y;
    two_d.push_back(static_cast<double>(top - n));
  }
  return ks_statistic(one_d, two_d);
}

}  // namespace polygrowth::solvable
