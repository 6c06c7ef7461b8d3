#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polygrowth/geometry.hpp"
#include "polygrowth/random_sim.hpp"

namespace polygrowth::report {

using Pt = std::pair<double, double>;

struct Style {
  int pixels = 640;       // square canvas side
  int margin = 24;
  double stroke = 1.5;
  int precision = 3;      // decimals in emitted coordinates
};

/// SVG canvas in world coordinates: origin at the center, y pointing up,
/// [-extent, extent]^2 visible. Output is a pure function of the calls made.
class SvgCanvas {
 public:
  SvgCanvas(double extent, Style style = {});

  void polygon(std::span<const Pt> pts, const std::string& stroke, const std::string& fill, double fill_opacity = 1.0);
  void polyline(std::span<const Pt> pts, const std::string& stroke, double width = -1.0);
  void marker(Pt p, double radius_px, const std::string& fill);
  /// Unit cells centered at integer points, merged into horizontal runs.
  void cells(std::span<const Vec2i> cells, const std::string& fill);
  void text(Pt p, const std::string& s, int size_px = 12);
  void axes(const std::string& stroke = "#bbbbbb");

  std::string str() const;
  bool empty() const { return body_.empty(); }

 private:
  std::string xy(Pt p) const;
  std::string num(double v) const;
  double extent_;
  Style style_;
  std::string body_;
};

std::vector<Pt> to_points(const Polygon& p);
std::vector<Pt> to_points(std::span<const RPoint> p);

/// K with its hull and the contact set highlighted.
std::string render_star(const StarBoundary& star, Style style = {});
/// Several polygons overlaid with a grey ramp (family plots, L_p overlays).
std::string render_overlay(const std::vector<std::vector<Pt>>& shapes, Style style = {});
/// Occupied cells shaded by alternating bands of occupation time, with an
/// optional polygon outline.
std::string render_bands(const Trajectory& traj, std::int64_t band, const Polygon* outline, double outline_scale,
                         Style style = {});
std::string render_state(const LatticeState& state, Style style = {});
/// Estimated radial points u/w_p(u) against the exact star.
std::string render_kpoly(const StarBoundary* exact, const std::vector<VelocityEstimate>& rows, Style style = {});

/// Comma-separated table with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);
  CsvWriter& cell(const std::string& v);
  CsvWriter& cell(const char* v) { return cell(std::string(v)); }
  CsvWriter& cell(double v);
  CsvWriter& cell(std::int64_t v);
  CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  CsvWriter& cell(std::size_t v) { return cell(static_cast<std::int64_t>(v)); }
  CsvWriter& cell(bool v) { return cell(std::string(v ? "1" : "0")); }
  void end_row();

 private:
  std::ostream& os_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// Round-trip-safe decimal rendering of a double.
std::string fmt(double v);

nlohmann::json polygon_to_json(const Polygon& p);
nlohmann::json star_to_json(const StarBoundary& s);

/// Run manifest: written before the run, completed afterwards.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string tool_version;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
  std::string status = "running";

  nlohmann::json to_json() const;
  void write(const std::string& path) const;
};

extern const char* const kToolVersion;

}  // namespace polygrowth::report
