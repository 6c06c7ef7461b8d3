#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "polygrowth/errors.hpp"
#include "polygrowth/lattice.hpp"
#include "polygrowth/lattice_types.hpp"
#include "polygrowth/rational.hpp"
#include "polygrowth/rule.hpp"

namespace polygrowth {

/// Primitive representative of a nonzero integer vector.
Vec2i primitive(Vec2i v);
inline bool is_primitive(Vec2i v) { return (v.x != 0 || v.y != 0) && std::gcd(v.x, v.y) == 1; }

struct RPoint {
  Rational x, y;
  friend bool operator==(const RPoint&, const RPoint&) = default;
  friend RPoint operator-(const RPoint& a, const RPoint& b) { return {a.x - b.x, a.y - b.y}; }
  friend RPoint operator+(const RPoint& a, const RPoint& b) { return {a.x + b.x, a.y + b.y}; }
  RPoint operator-() const { return {-x, -y}; }
  friend std::ostream& operator<<(std::ostream& os, const RPoint& p) { return os << "(" << p.x << "," << p.y << ")"; }
};
inline RPoint to_rpoint(Vec2i v) { return {Rational(v.x), Rational(v.y)}; }
inline Rational rcross(const RPoint& a, const RPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rational rdot(const RPoint& a, const RPoint& b) { return a.x * b.x + a.y * b.y; }
inline Rational rdot(Vec2i a, const RPoint& b) { return Rational(a.x) * b.x + Rational(a.y) * b.y; }

/// Ordered vertex list (counter-clockwise).
using Polygon = std::vector<RPoint>;

/// Scaled speed in direction v: w(u) = scaled / |v|. Zero means the
/// direction does not advance (flagged subcritical).
struct Speed {
  std::int64_t scaled = 0;
  bool subcritical = true;
};

/// Speed of the deterministic skeleton along v (any nonzero integer vector).
Speed speed(const MonotoneRule& rule, Vec2i v);

/// Primitive normals of all lines through two points of N u {0}, both
/// orientations, sorted by angle from the positive x-axis.
std::vector<Vec2i> critical_directions(const Neighborhood& nbhd);

/// Star-shaped boundary of K_{1/w}: edge i joins vertices[i] and
/// vertices[i+1] and lies on {y : <y,-edge_tags[i]> = 1}.
struct StarBoundary {
  std::vector<RPoint> vertices;
  std::vector<Vec2i> edge_tags;
  std::size_t size() const { return vertices.size(); }
};

StarBoundary k_star(const MonotoneRule& rule);

/// Strictly convex hull, counter-clockwise, starting at the lowest-then-leftmost point.
Polygon convex_hull(std::span<const RPoint> points);
/// Polar dual {x : <x,y> <= 1 for y in P}; P convex counter-clockwise with
/// the origin strictly inside (std::domain_error otherwise).
Polygon polar(const Polygon& p);
Polygon wulff_shape(const MonotoneRule& rule);
Polygon wulff_shape(const StarBoundary& star);

/// Canonical rotation: start at the lowest-then-leftmost vertex.
Polygon canonical(Polygon p);
bool contains(const Polygon& convex, const RPoint& q);  // closed

struct KSegment {
  RPoint a, b;
  Vec2i tag;
};
/// Boundary of K intersected with the boundary of its hull. Segments are
/// maximal straight pieces (a piece bending around a hull corner is split
/// there); points are isolated contact vertices.
struct KPrime {
  std::vector<RPoint> points;
  std::vector<KSegment> segments;
};
KPrime k_prime(const StarBoundary& star);

enum class Case { One = 1, Two = 2, Three = 3 };
struct CaseLabel {
  Case kind = Case::One;
  bool supercritical = true;
  bool quasi_additive = false;
};
std::string to_string(const CaseLabel& c);

CaseLabel classify(const StarBoundary& star);
/// Probability tables are classified through their skeleton. Throws NotSupercritical.
CaseLabel classify(const MonotoneRule& rule);

/// |closed lower cut| of the line through x with direction `dir`: sites of N
/// on the line or beyond it as seen from the origin. Throws
/// std::invalid_argument when the line passes through the origin.
int lambda_of_line(const Neighborhood& nbhd, Vec2i x, Vec2i dir);
/// Minimum of lambda_of_line over all lines through x.
int lambda_star(const Neighborhood& nbhd, Vec2i x);
int lambda_star(Vec2i x, int rho);
/// Same minimum restricted to lines leaving the square [-rho,rho]^2 through
/// two adjacent sides.
int lambda_star_adjacent_sides(Vec2i x, int rho);
/// {lambda_star(x) : x in box(rho) \ {0}}.
std::set<int> lambda_values(int rho);

/// Sorted depths -<x,v> for a fixed neighborhood, shared across thresholds.
class ThresholdSpeedTable {
 public:
  ThresholdSpeedTable(const Neighborhood& nbhd, std::vector<Vec2i> directions, int max_theta);
  std::span<const Vec2i> directions() const { return dirs_; }
  std::int64_t scaled(std::size_t dir, int theta) const;
  /// Site attaining the theta-th largest depth.
  Vec2i attaining(std::size_t dir, int theta) const;
  int max_theta() const { return max_theta_; }

 private:
  Neighborhood nbhd_;
  std::vector<Vec2i> dirs_;
  int max_theta_;
  std::vector<std::int32_t> depth_;
  std::vector<std::uint16_t> site_;
};

/// K for threshold theta on a box, using a precomputed table whose
/// directions are the interleaved critical/witness sequence from
/// star_directions(). Throws NotSupercritical.
StarBoundary k_star_threshold(const ThresholdSpeedTable& table, int theta);
/// Critical directions interleaved with one witness per gap.
std::vector<Vec2i> star_directions(const Neighborhood& nbhd);

struct SurveyRow {
  int theta = 0;
  bool supercritical = false;
  CaseLabel label;
  bool exactly_stable = false;
  std::size_t star_vertices = 0;
  std::size_t kprime_points = 0;
  std::size_t kprime_segments = 0;
};
struct Survey {
  int rho = 0;
  std::set<int> lambda_values;
  std::vector<SurveyRow> rows;
  /// Case 3 thresholds coincide with the lambda values in range.
  bool routes_agree = false;
};
/// Rows for theta = 1 .. rho(2rho+1) (+ `extra` further thresholds).
Survey survey(int rho, int extra = 0);

/// |{ m n : 1 <= m, n <= nmax }|
std::int64_t distinct_products(int nmax);

/// Stars for theta = 1 .. rho(2rho+1) on the range-rho box.
std::vector<StarBoundary> k_family(int rho);
/// K_theta contained in K_{theta+1} for every consecutive pair.
bool family_nested(int rho);
/// Boundaries of distinct members share no segment of positive length.
bool family_meets_discretely(const std::vector<StarBoundary>& family);
/// For each tag x, the number of hull-contact segments it carries across the family.
std::vector<std::pair<Vec2i, int>> kline_segment_counts(const std::vector<StarBoundary>& family);

/// Half-space {c : <v,c> <= offset} sampled on `window`; with `exact` the
/// background advances by the skeleton speed each step.
LatticeState half_space_state(const MonotoneRule& rule, Vec2i v, std::int64_t offset, Rect window, bool exact);

enum class FillVerdict { GrowsLikeL, Stalled, Inconclusive };
std::string to_string(FillVerdict v);
/// Runs the deterministic dynamics from a finite seed. GrowsLikeL once the
/// occupied set contains center + (horizon/2) L at the horizon; Stalled if a
/// step changes nothing before that.
FillVerdict fills_space_probe(const MonotoneRule& rule, std::span<const Vec2i> seed, std::int64_t horizon);

/// Lattice cells of center + scale * P (closed).
std::vector<Vec2i> lattice_points(const Polygon& p, const RPoint& center, const Rational& scale);

}  // namespace polygrowth
