#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polygrowth/geometry.hpp"
#include "polygrowth/random_sim.hpp"
#include "polygrowth/rule.hpp"

namespace polygrowth::solvable {

/// Seven sites: von Neumann plus (1,-1) and (-1,1).
Neighborhood neighborhood();

/// pi_p: 1 if (-1,0) or (1,0) is present, or both (1,-1),(0,-1), or both
/// (-1,1),(0,1), or the origin; p on the remaining nonempty sets; 0 on the
/// empty set.
MonotoneRule solvable_rule(double p);
/// The p -> 0 skeleton: only the sure conditions.
MonotoneRule sure_rule();

/// phi(y) = 1 - p - (1-2p) y + 2 sqrt(p(1-p) y(1-y)), y in [p,1].
double phi(double p, double y);
double y_zero(double p);

enum class Region { W1, W2, W3, W4, Lp };

/// Closed planar region bounded by the closed-form curves. Wedge regions are
/// unbounded; their missing side is reported as +-infinity.
class ShapeCurve {
 public:
  ShapeCurve(double p, Region which);
  double p() const { return p_; }
  Region which() const { return which_; }
  bool contains(double x, double y, double tol = 1e-12) const;
  /// Horizontal extent at height y (empty optional when the row is empty).
  std::optional<std::pair<double, double>> row(double y) const;
  /// (y, x_left, x_right) on n+1 evenly spaced heights of the region's y-range.
  std::vector<std::array<double, 3>> sample(int n) const;
  /// Closed boundary polyline (Lp only), counter-clockwise.
  std::vector<std::pair<double, double>> outline(int n) const;
  double y_min() const;
  double y_max() const;

 private:
  double left_w1(double y) const;   // boundary of L_W1 at height y <= 1
  double right_w2(double y) const;  // boundary of L_W2 at height y <= 1
  double p_;
  Region which_;
};

ShapeCurve wedge_shape(double p, Region which);
ShapeCurve shape_Lp(double p);

enum class Start {
  Wedge,  // h0(n) = -n, the image of the wedge {x >= 0, y <= 0}
  Flat    // h0(n) = 0
};

struct InterfaceState {
  std::vector<std::int64_t> h;  // h[n], n = 0..size-1
  std::int64_t t = 0;
};

/// Exclusion-type recursion: if h(n-1) > h(n) the site advances surely,
/// otherwise with probability p; n = 0 is a pure random walk. The draw for
/// (n, t) is the uniform of cell (-t+n-1, h_t(n)+n+1) at time t of the planar
/// model, which makes the two simulations agree pathwise.
InterfaceState simulate_interface(double p, std::int64_t horizon, RngKey key, std::int64_t sites = -1,
                                  Start start = Start::Wedge);

struct EquivalenceReport {
  bool match = true;
  std::int64_t compared = 0;
  std::int64_t mismatches = 0;
  std::int64_t lower_set_violations = 0;
  std::string first_divergence;
};

/// Runs the planar engine on the solvable rule from the wedge and compares
/// column heights with the recursion at every step.
EquivalenceReport equivalence_check(double p, std::int64_t horizon, RngKey key);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Fallback comparison of the marginal law of h_T(n) across independent seeds.
double distributional_check(double p, std::int64_t horizon, std::int64_t n, int seeds, std::uint64_t base_seed);

/// Law-of-large-numbers prediction lim h_T(alpha T)/T for 1-alpha in [p,1].
double interface_limit(double p, double alpha);

}  // namespace polygrowth::solvable
