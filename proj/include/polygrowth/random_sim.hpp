#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polygrowth/geometry.hpp"
#include "polygrowth/lattice.hpp"
#include "polygrowth/rng.hpp"
#include "polygrowth/rule.hpp"

namespace polygrowth {

/// A deterministic rule together with occupation probabilities. Standard mode
/// gives every positive, origin-free pattern probability p; custom mode uses
/// a probability table whose smallest positive entry is p.
class PerturbationSpec {
 public:
  static PerturbationSpec standard(MonotoneRule base, double p);
  static PerturbationSpec custom(MonotoneRule table);

  bool is_standard() const { return standard_; }
  double p() const { return p_; }
  const Neighborhood& neighborhood() const { return rule_.neighborhood(); }
  /// The rule as given (deterministic base, or the table).
  const MonotoneRule& rule() const { return rule_; }
  /// Deterministic skeleton: patterns with positive probability.
  const MonotoneRule& skeleton() const { return skeleton_; }

  double probability(Subset s) const;
  ProbabilityFn probability_fn() const;
  PerturbationSpec transformed(Dihedral g) const;
  std::string describe() const;

 private:
  PerturbationSpec(MonotoneRule rule, MonotoneRule skeleton, bool standard, double p)
      : rule_(std::move(rule)), skeleton_(std::move(skeleton)), standard_(standard), p_(p) {}
  MonotoneRule rule_;
  MonotoneRule skeleton_;
  bool standard_ = true;
  double p_ = 1.0;
};

struct RandomRun {
  LatticeState state;
  RngKey key;
  unsigned threads = 1;
};

/// One coupled step: each vacant x draws U(seed, replica, x, t) and is
/// occupied iff U <= pi(S).
RandomRun sample_step(const PerturbationSpec& spec, const RandomRun& run);

/// Finite growth with per-cell first-occupation times.
class Trajectory {
 public:
  Trajectory(LatticeState final_state, Rect rect, std::vector<std::int32_t> times)
      : final_(std::move(final_state)), rect_(rect), times_(std::move(times)) {}
  const LatticeState& final_state() const { return final_; }
  std::int64_t horizon() const { return final_.time; }
  std::int32_t occupation_time(Vec2i c) const;
  /// Occupied set at time t (cells first occupied at or before t).
  LatticeState snapshot(std::int64_t t) const;
  std::vector<Vec2i> cells_at(std::int64_t t) const;

 private:
  LatticeState final_;
  Rect rect_;
  std::vector<std::int32_t> times_;
};

Trajectory grow_finite(const PerturbationSpec& spec, std::span<const Vec2i> seed, std::int64_t horizon, RngKey key,
                       unsigned threads = 1);

/// Tilted periodic strip. `direction` is any nonzero integer vector; it is
/// mapped by a lattice symmetry to (-a, b) with 0 <= a <= b, kappa = a/b.
/// The width is rounded up to a multiple of b so that kappa*M is an integer.
/// With one replica the error bar comes from block means of that run and
/// ignores correlation between blocks. With several independent replicas it
/// is the spread of the replica estimates.
struct StripConfig {
  Vec2i direction{0, 1};
  int width = 256;
  std::int64_t horizon = 1000;
  double burn_in = 0.5;
  int blocks = 16;
  int replicas = 1;
  unsigned threads = 1;
};

struct VelocityEstimate {
  Vec2i direction;
  double estimate = 0.0;  // cells per step along u
  double stderr_ = 0.0;
  std::int64_t samples = 0;  // measured steps, summed over replicas
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  int width = 0;        // effective M
  Rational kappa;       // after reduction
  Dihedral reduction;   // maps direction to (-a, b)
  /// Exact mean vertical advance per step over the measured window.
  Rational vertical_speed;
  std::vector<double> mean_h0;  // per step, first vacant height relative to the tilt (replica average)
  std::vector<double> mean_h1;  // per step, top height relative to the tilt (replica average)
  std::int64_t order_violations = 0;  // columns with h0 > h1, summed over steps
};

/// Lattice symmetry g with g(v) = (-a, b), 0 <= a <= b.
Dihedral strip_reduction(Vec2i v);

VelocityEstimate strip_velocity(const PerturbationSpec& spec, const StripConfig& cfg, RngKey key);

/// Strip estimates for several directions (replica = index), the empirical
/// radial function of K_{1/w_p}.
std::vector<VelocityEstimate> estimate_k_polygon(const PerturbationSpec& spec, std::span<const Vec2i> directions,
                                                 const StripConfig& tmpl, std::uint64_t seed);

/// Max of (a) distance from occupied cells to t*P and (b) distance from
/// boundary samples of t*P (spacing <= 1) to the occupied set.
double hausdorff_to_polygon(const LatticeState& state, const Polygon& p, double t);
double hausdorff_to_polygon(std::span<const Vec2i> cells, const Polygon& p, double t, Vec2i shift = {0, 0});

/// Seed t0*L ∩ Z^2 for the skeleton shape L.
std::vector<Vec2i> shape_seed(const Polygon& l, std::int64_t t0);

struct CornerLagTrace {
  std::vector<RPoint> corners;          // corners of L (skeleton)
  std::int64_t seed_scale = 0;          // seed is seed_scale * L ∩ Z^2
  std::vector<std::int64_t> times;
  std::vector<std::vector<double>> lag;  // lag[k][i]: corner i at times[k]
  std::vector<double> max_lag;
  /// OLS slope of max_lag against t over [t_lo, t_hi].
  double slope(std::int64_t t_lo, std::int64_t t_hi) const;
};

/// Distance from each corner of (t + seed_scale) L to the occupied set.
CornerLagTrace corner_lag(const PerturbationSpec& spec, std::int64_t horizon, RngKey key, std::int64_t seed_scale = 10,
                          std::int64_t sample_every = 10, unsigned threads = 1);

struct HoleSpec {
  enum class Where { Corner, EdgeMidpoint } where = Where::Corner;
  int index = 0;  // which corner / edge of L, counter-clockwise from the lowest vertex
  int cells = 3;
};
struct HoleRepair {
  bool repaired = false;
  std::int64_t repair_time = -1;
  std::vector<Vec2i> hole;
  std::vector<std::int64_t> deficit;  // |reference \ holed| per step
};
HoleRepair hole_repair(const MonotoneRule& rule, std::int64_t t0, const HoleSpec& hole, std::int64_t horizon = 200);

}  // namespace polygrowth
