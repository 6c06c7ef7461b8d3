#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polygrowth/lattice_types.hpp"
#include "polygrowth/rational.hpp"
#include "polygrowth/rng.hpp"
#include "polygrowth/rule.hpp"

namespace polygrowth {

/// Packed occupancy bits over a rectangle; reads outside the rectangle are 0.
class BitGrid {
 public:
  BitGrid() = default;
  explicit BitGrid(Rect r);

  const Rect& rect() const { return rect_; }
  bool get(Vec2i c) const {
    if (!rect_.contains(c)) return false;
    const std::size_t col = static_cast<std::size_t>(c.x - rect_.x0);
    return (words_[row_base(c.y) + (col >> 6)] >> (col & 63)) & 1U;
  }
  void set(Vec2i c, bool value = true);
  std::size_t count() const;
  /// Copy of the contents re-homed onto another rectangle.
  BitGrid rehomed(Rect r) const;
  std::vector<Vec2i> cells() const;

  friend bool operator==(const BitGrid& a, const BitGrid& b);

 private:
  std::size_t row_base(int y) const { return static_cast<std::size_t>(y - rect_.y0) * stride_; }

  Rect rect_;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Closed half-space {c : <normal, c> <= offset}. When `advance` is set, the
/// exact per-step evolution is known (offset grows by advance each step).
struct HalfSpace {
  Vec2i normal{0, 1};
  Rational offset{0};
  std::optional<std::int64_t> advance;

  bool contains(Vec2i c) const { return Rational(dot(normal, c)) <= offset; }
};

struct EmptyBackground {};
struct Wedge {
  HalfSpace a, b;
  bool contains(Vec2i c) const { return a.contains(c) && b.contains(c); }
};
using Background = std::variant<EmptyBackground, HalfSpace, Wedge>;

/// Thrown when a windowed simulation runs out of cells whose state is known.
class WindowExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupied set at one time. Inside `valid` the grid is authoritative; outside
/// it the background formula is used when it is exact (empty, or a
/// half-space with known advance). `valid` is contained in `window`.
struct LatticeState {
  Rect window;
  Rect valid;
  BitGrid grid;
  Background background;
  std::int64_t time = 0;

  bool exact_outside() const;
  /// Throws std::out_of_range where the state is not determined.
  bool occupied(Vec2i c) const;
  /// Occupied cells inside the valid region.
  std::vector<Vec2i> cells() const { return grid.cells(); }
  std::size_t count() const { return grid.count(); }
};

/// Finite set with empty background; the window is its bounding box grown by `margin`.
LatticeState finite_state(std::span<const Vec2i> cells, int margin = 4);
/// Infinite set given by a background formula, sampled on `window`.
LatticeState background_state(const Background& bg, Rect window);

bool same_cells(const LatticeState& a, const LatticeState& b);

/// Probability that a vacant cell with visible pattern S becomes occupied.
using ProbabilityFn = std::function<double(Subset)>;

struct StepOptions {
  /// Randomness key; unused when every probability is 0 or 1.
  std::optional<RngKey> key;
  unsigned threads = 1;
};

/// In-place stepping engine shared by the deterministic and random dynamics.
/// Finite states track a frontier of vacant cells touching the occupied set
/// and grow their window on demand; background states rescan the valid region.
class Stepper {
 public:
  Stepper(const Neighborhood& nbhd, ProbabilityFn prob, LatticeState state, StepOptions opts = {});

  /// Advance one step; returns the number of newly occupied cells.
  std::size_t step();
  const LatticeState& state() const { return state_; }
  LatticeState take() && { return std::move(state_); }

  /// Record first-occupation times (initial cells get 0).
  void track_times();
  /// First-occupation time of a cell, -1 if vacant or untracked.
  std::int32_t occupation_time(Vec2i c) const;
  const Rect& time_rect() const { return time_rect_; }

 private:
  bool finite_mode() const { return std::holds_alternative<EmptyBackground>(state_.background); }
  void ensure_room();
  void regrow(Rect r);
  void rebuild_frontier();
  void push_frontier_around(Vec2i c);
  Subset pattern(Vec2i c) const;
  bool decide(Vec2i c, Subset s) const;
  void evaluate(std::span<const Vec2i> cand, std::vector<char>& out) const;

  std::vector<Vec2i> offsets_;
  int radius_ = 0;
  ProbabilityFn prob_;
  LatticeState state_;
  StepOptions opts_;
  std::vector<Vec2i> frontier_;
  BitGrid in_frontier_;
  Rect occupied_box_{0, 0, 0, 0};
  bool tracking_ = false;
  Rect time_rect_;
  std::vector<std::int32_t> times_;
};

/// One deterministic step; the rule must be deterministic and mask-capable.
LatticeState step_deterministic(const MonotoneRule& rule, const LatticeState& state);
LatticeState iterate(const MonotoneRule& rule, const LatticeState& state, std::int64_t steps);

ProbabilityFn deterministic_probability(const MonotoneRule& rule);

/// Run-length export of the valid region: '#window', '#valid', '#time'
/// comment lines followed by rows top to bottom ('b' vacant, 'o' occupied,
/// '$' row end, '!' terminator). Background is not serialized.
void write_rle(std::ostream& os, const LatticeState& state);
LatticeState read_rle(std::istream& is);

}  // namespace polygrowth
