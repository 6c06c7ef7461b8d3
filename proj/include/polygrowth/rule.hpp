#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polygrowth/lattice_types.hpp"

namespace polygrowth {

/// Subset of a neighborhood encoded as a bitmask over offset indices.
using Subset = std::uint64_t;

/// Maximum neighborhood size for mask-encoded rules and for lattice simulation.
inline constexpr std::size_t kMaxMaskSites = 64;
/// Maximum neighborhood size for probability tables (dense 2^|N| storage).
inline constexpr std::size_t kMaxTableSites = 20;

/// Finite neighborhood of the origin. Offsets keep their construction order;
/// index i corresponds to bit i of a Subset.
class Neighborhood {
 public:
  Neighborhood() = default;
  explicit Neighborhood(std::vector<Vec2i> offsets);

  /// Range-r box (Chebyshev ball), rows bottom to top.
  static Neighborhood box(int range);
  /// Range-r diamond (l1 ball).
  static Neighborhood diamond(int range);
  static Neighborhood moore() { return box(1); }
  static Neighborhood von_neumann() { return diamond(1); }

  std::span<const Vec2i> offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  const Vec2i& operator[](std::size_t i) const { return offsets_[i]; }

  std::optional<int> index_of(Vec2i v) const;
  /// Index of (0,0), or -1 when absent.
  int origin_index() const { return origin_; }
  /// Largest Chebyshev norm of an offset.
  int radius() const { return radius_; }
  bool contains(Vec2i v) const { return index_of(v).has_value(); }

  /// Mask for a list of offsets; throws std::invalid_argument on an offset
  /// outside the neighborhood or when |N| exceeds the mask width.
  Subset mask_of(std::span<const Vec2i> subset) const;
  std::vector<Vec2i> offsets_of(Subset s) const;

  friend bool operator==(const Neighborhood& a, const Neighborhood& b) { return a.offsets_ == b.offsets_; }

 private:
  std::vector<Vec2i> offsets_;
  int origin_ = -1;
  int radius_ = 0;
};

/// Totalistic rule: |S| >= theta suffices.
struct Threshold {
  int theta = 1;
};

/// Monotone rule given by its inclusion-minimal sufficient sets.
struct Antichain {
  std::vector<std::vector<Vec2i>> minimal_sets;
};

/// Random monotone rule given by listed probabilities. Unlisted subsets take
/// the largest value of any listed subset they contain (1 if they contain the
/// origin, 0 if none).
struct ProbEntry {
  std::vector<Vec2i> set;
  double probability = 0.0;
};
struct ProbTable {
  std::vector<ProbEntry> entries;
};

using RuleKind = std::variant<Threshold, Antichain, ProbTable>;

/// Neighborhood plus monotone sufficiency map. Construction checks structure
/// (offsets inside the neighborhood, size limits, probabilities in [0,1]);
/// the standing assumptions are checked by validate_rule.
class MonotoneRule {
 public:
  MonotoneRule(Neighborhood nbhd, RuleKind kind);

  static MonotoneRule threshold(Neighborhood nbhd, int theta) {
    return MonotoneRule(std::move(nbhd), Threshold{theta});
  }

  const Neighborhood& neighborhood() const { return nbhd_; }
  const RuleKind& kind() const { return kind_; }
  bool is_threshold() const { return std::holds_alternative<Threshold>(kind_); }
  bool is_deterministic() const { return !std::holds_alternative<ProbTable>(kind_); }
  /// True when subsets can be encoded as masks (|N| <= 64).
  bool mask_capable() const { return nbhd_.size() <= kMaxMaskSites; }

  /// pi(S) for a mask; applies the solidification override.
  double probability(Subset s) const;
  /// pi(S) for threshold rules from the count of non-origin sites and whether
  /// the origin is present. Valid for any neighborhood size.
  double threshold_probability(std::size_t non_origin_count, bool has_origin) const;

  /// Compiled minimal-set masks (Antichain kind only).
  std::span<const Subset> minimal_masks() const { return minimal_masks_; }
  /// Dense raw table (ProbTable kind only), without the solidify override.
  std::span<const double> raw_table() const { return table_; }

  /// Deterministic skeleton pi_d(S) = 1{pi(S) > 0}. Identity for
  /// deterministic rules; an Antichain for probability tables.
  MonotoneRule skeleton() const;

  /// The same dynamics after applying a lattice symmetry to the plane.
  MonotoneRule transformed(Dihedral g) const;

  std::string describe() const;

 private:
  Neighborhood nbhd_;
  RuleKind kind_;
  std::vector<Subset> minimal_masks_;
  std::vector<double> table_;
  Subset origin_bit_ = 0;
};

/// Sufficiency for an explicit offset subset; throws std::invalid_argument if
/// an offset lies outside the neighborhood.
double sufficiency(const MonotoneRule& rule, std::span<const Vec2i> subset);

/// Standing-assumption violations of a rule; empty means valid.
struct RuleViolation {
  std::string code;  // "origin", "neighborhood-symmetry", "cardinality", "not an antichain",
                     // "monotonicity", "contact", "solidify", "symmetry"
  std::string detail;
};

std::vector<RuleViolation> validate_rule(const MonotoneRule& rule);

}  // namespace polygrowth
