#include <algorithm>
#include <cmath>
#include <sstream>

#include "polygrowth/random_sim.hpp"

namespace polygrowth {

PerturbationSpec PerturbationSpec::standard(MonotoneRule base, double p) {
  if (!base.is_deterministic()) throw std::invalid_argument("standard perturbation needs a deterministic base rule");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
  MonotoneRule skel = base;
  return PerturbationSpec(std::move(base), std::move(skel), true, p);
}

PerturbationSpec PerturbationSpec::custom(MonotoneRule table) {
  if (table.is_deterministic()) throw std::invalid_argument("custom perturbation needs a probability table");
  const auto bad = validate_rule(table);
  if (!bad.empty()) throw std::invalid_argument("invalid probability table: " + bad.front().code + " (" + bad.front().detail + ")");
  double p = 1.0;
  for (double v : table.raw_table())
    if (v > 0.0) p = std::min(p, v);
  MonotoneRule skel = table.skeleton();
  return PerturbationSpec(std::move(table), std::move(skel), false, p);
}

double PerturbationSpec::probability(Subset s) const {
  if (!standard_) return rule_.probability(s);
  if (skeleton_.probability(s) <= 0.0) return 0.0;
  const int o = neighborhood().origin_index();
  if (o >= 0 && (s >> o) & 1U) return 1.0;
  return p_;
}

ProbabilityFn PerturbationSpec::probability_fn() const {
  if (!neighborhood().size() || !rule_.mask_capable()) throw std::invalid_argument("simulation needs |N| <= 64");
  return [self = *this](Subset s) { return self.probability(s); };
}

PerturbationSpec PerturbationSpec::transformed(Dihedral g) const {
  return standard_ ? standard(rule_.transformed(g), p_) : custom(rule_.transformed(g));
}

std::string PerturbationSpec::describe() const {
  std::ostringstream os;
  if (standard_) os << "standard p=" << p_ << " perturbation of " << rule_.describe();
  else os << "custom perturbation (p=" << p_ << ") " << rule_.describe();
  return os.str();
}

RandomRun sample_step(const PerturbationSpec& spec, const RandomRun& run) {
  Stepper st(spec.neighborhood(), spec.probability_fn(), run.state, StepOptions{run.key, run.threads});
  st.step();
  return RandomRun{std::move(st).take(), run.key, run.threads};
}

std::int32_t Trajectory::occupation_time(Vec2i c) const {
  if (!rect_.contains(c)) return -1;
  return times_[static_cast<std::size_t>(c.y - rect_.y0) * rect_.width() + (c.x - rect_.x0)];
}

std::vector<Vec2i> Trajectory::cells_at(std::int64_t t) const {
  std::vector<Vec2i> out;
  for (int y = rect_.y0; y < rect_.y1; ++y)
    for (int x = rect_.x0; x < rect_.x1; ++x) {
      const auto v = times_[static_cast<std::size_t>(y - rect_.y0) * rect_.width() + (x - rect_.x0)];
      if (v >= 0 && v <= t) out.push_back({x, y});
    }
  return out;
}

LatticeState Trajectory::snapshot(std::int64_t t) const {
  LatticeState s;
  s.window = s.valid = rect_;
  s.grid = BitGrid(rect_);
  for (Vec2i c : cells_at(t)) s.grid.set(c);
  s.background = EmptyBackground{};
  s.time = std::min(t, final_.time);
  return s;
}

Trajectory grow_finite(const PerturbationSpec& spec, std::span<const Vec2i> seed, std::int64_t horizon, RngKey key,
                       unsigned threads) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  Stepper st(spec.neighborhood(), spec.probability_fn(), finite_state(seed), StepOptions{key, threads});
  st.track_times();
  for (std::int64_t t = 0; t < horizon; ++t) st.step();
  const Rect r = st.time_rect();
  std::vector<std::int32_t> times(static_cast<std::size_t>(r.width()) * r.height());
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x)
      times[static_cast<std::size_t>(y - r.y0) * r.width() + (x - r.x0)] = st.occupation_time({x, y});
  return Trajectory(std::move(st).take(), r, std::move(times));
}

}  // namespace polygrowth
