#include "polygrowth/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace polygrowth::report {

const char* const kToolVersion = "1.0.0";

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SvgCanvas::SvgCanvas(double extent, Style style) : extent_(extent > 0 ? extent : 1.0), style_(style) {}

std::string SvgCanvas::num(double v) const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", style_.precision, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string SvgCanvas::xy(Pt p) const {
  const double half = (style_.pixels - 2.0 * style_.margin) / 2.0;
  const double c = style_.pixels / 2.0;
  return num(c + p.first / extent_ * half) + "," + num(c - p.second / extent_ * half);
}

void SvgCanvas::polygon(std::span<const Pt> pts, const std::string& stroke, const std::string& fill, double fill_opacity) {
  if (pts.empty()) return;
  std::string d = "M";
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i ? " L" : "") + xy(pts[i]);
  body_ += "<path d=\"" + d + " Z\" stroke=\"" + stroke + "\" fill=\"" + fill + "\" fill-opacity=\"" + num(fill_opacity) +
           "\" stroke-width=\"" + num(style_.stroke) + "\"/>\n";
}

void SvgCanvas::polyline(std::span<const Pt> pts, const std::string& stroke, double width) {
  if (pts.empty()) return;
  std::string d = "M";
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i ? " L" : "") + xy(pts[i]);
  body_ += "<path d=\"" + d + "\" stroke=\"" + stroke + "\" fill=\"none\" stroke-width=\"" +
           num(width > 0 ? width : style_.stroke) + "\"/>\n";
}

void SvgCanvas::marker(Pt p, double radius_px, const std::string& fill) {
  const std::string at = xy(p);
  const auto comma = at.find(',');
  body_ += "<circle cx=\"" + at.substr(0, comma) + "\" cy=\"" + at.substr(comma + 1) + "\" r=\"" + num(radius_px) +
           "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::cells(std::span<const Vec2i> cs, const std::string& fill) {
  if (cs.empty()) return;
  std::vector<Vec2i> sorted(cs.begin(), cs.end());
  std::sort(sorted.begin(), sorted.end());
  std::string d;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1].y == sorted[i].y && sorted[j + 1].x == sorted[j].x + 1) ++j;
    const double x0 = sorted[i].x - 0.5, x1 = sorted[j].x + 0.5, y0 = sorted[i].y - 0.5, y1 = sorted[i].y + 0.5;
    d += "M" + xy({x0, y0}) + " L" + xy({x1, y0}) + " L" + xy({x1, y1}) + " L" + xy({x0, y1}) + " Z";
    i = j + 1;
  }
  body_ += "<path d=\"" + d + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
}

void SvgCanvas::text(Pt p, const std::string& s, int size_px) {
  const std::string at = xy(p);
  const auto comma = at.find(',');
  std::string esc;
  for (char ch : s) {
    if (ch == '<') esc += "&lt;";
    else if (ch == '>') esc += "&gt;";
    else if (ch == '&') esc += "&amp;";
    else esc += ch;
  }
  body_ += "<text x=\"" + at.substr(0, comma) + "\" y=\"" + at.substr(comma + 1) + "\" font-family=\"sans-serif\" font-size=\"" +
           std::to_string(size_px) + "\">" + esc + "</text>\n";
}

void SvgCanvas::axes(const std::string& stroke) {
  const std::vector<Pt> h{{-extent_, 0.0}, {extent_, 0.0}}, v{{0.0, -extent_}, {0.0, extent_}};
  polyline(h, stroke, 0.5);
  polyline(v, stroke, 0.5);
}

std::string SvgCanvas::str() const {
  const std::string n = std::to_string(style_.pixels);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n +
         "\" height=\"" + n + "\" viewBox=\"0 0 " + n + " " + n + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n" +
         body_ + "</svg>\n";
}

std::vector<Pt> to_points(std::span<const RPoint> p) {
  std::vector<Pt> out;
  for (const auto& v : p) out.push_back({v.x.to_double(), v.y.to_double()});
  return out;
}
std::vector<Pt> to_points(const Polygon& p) { return to_points(std::span<const RPoint>(p)); }

namespace {

double extent_of(std::span<const Pt> pts, double fallback = 1.0) {
  double e = 0.0;
  for (auto [x, y] : pts) {
    if (std::isfinite(x)) e = std::max(e, std::abs(x));
    if (std::isfinite(y)) e = std::max(e, std::abs(y));
  }
  return e > 0 ? e * 1.08 : fallback;
}

}  // namespace

std::string render_star(const StarBoundary& star, Style style) {
  const auto pts = to_points(star.vertices);
  SvgCanvas c(extent_of(pts), style);
  if (pts.empty()) return c.str();
  c.axes();
  const auto hull = to_points(convex_hull(star.vertices));
  c.polygon(hull, "#888888", "none");
  c.polygon(pts, "#1f4e9c", "#1f4e9c", 0.15);
  const KPrime kp = k_prime(star);
  for (const auto& s : kp.segments) {
    const std::vector<Pt> seg{{s.a.x.to_double(), s.a.y.to_double()}, {s.b.x.to_double(), s.b.y.to_double()}};
    c.polyline(seg, "#c0392b", 3.0);
  }
  for (const auto& p : kp.points) c.marker({p.x.to_double(), p.y.to_double()}, 3.5, "#c0392b");
  return c.str();
}

std::string render_overlay(const std::vector<std::vector<Pt>>& shapes, Style style) {
  double e = 0.0;
  for (const auto& s : shapes) e = std::max(e, extent_of(s, 0.0));
  SvgCanvas c(e > 0 ? e : 1.0, style);
  if (shapes.empty()) return c.str();
  c.axes();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const int g = shapes.size() > 1 ? static_cast<int>(40 + 160 * i / (shapes.size() - 1)) : 40;
    char col[8];
    std::snprintf(col, sizeof col, "#%02x%02x%02x", g, g, g);
    c.polygon(shapes[i], col, "none");
  }
  return c.str();
}

std::string render_bands(const Trajectory& traj, std::int64_t band, const Polygon* outline, double outline_scale,
                         Style style) {
  const auto cells = traj.cells_at(traj.horizon());
  double e = 1.0;
  for (Vec2i v : cells) e = std::max({e, std::abs(v.x) + 1.0, std::abs(v.y) + 1.0});
  SvgCanvas c(e * 1.05, style);
  if (band < 1) band = 1;
  std::vector<Vec2i> even, odd;
  for (Vec2i v : cells) ((traj.occupation_time(v) / band) % 2 == 0 ? even : odd).push_back(v);
  c.cells(even, "#2c3e50");
  c.cells(odd, "#95a5a6");
  if (outline) {
    auto pts = to_points(*outline);
    for (auto& p : pts) p = {p.first * outline_scale, p.second * outline_scale};
    c.polygon(pts, "#c0392b", "none");
  }
  return c.str();
}

std::string render_state(const LatticeState& state, Style style) {
  const auto cells = state.cells();
  double e = 1.0;
  for (Vec2i v : cells) e = std::max({e, std::abs(v.x) + 1.0, std::abs(v.y) + 1.0});
  SvgCanvas c(e * 1.05, style);
  c.cells(cells, "#2c3e50");
  return c.str();
}

std::string render_kpoly(const StarBoundary* exact, const std::vector<VelocityEstimate>& rows, Style style) {
  std::vector<Pt> est;
  for (const auto& r : rows) {
    if (r.estimate <= 0) continue;
    const double n = std::hypot(r.direction.x, r.direction.y);
    est.push_back({r.direction.x / n / r.estimate, r.direction.y / n / r.estimate});
  }
  std::vector<Pt> star = exact ? to_points(exact->vertices) : std::vector<Pt>{};
  SvgCanvas c(std::max(extent_of(est, 0.0), extent_of(star, 0.0)) + 1e-9, style);
  c.axes();
  if (!star.empty()) c.polygon(star, "#1f4e9c", "none");
  for (auto p : est) c.marker(p, 3.0, "#c0392b");
  return c.str();
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (filled_ == columns_) throw std::logic_error("CSV row has too many cells");
  const bool quote = v.find_first_of(",\"\n") != std::string::npos;
  os_ << (filled_ ? "," : "");
  if (quote) {
    os_ << '"';
    for (char ch : v) os_ << (ch == '"' ? "\"\"" : std::string(1, ch));
    os_ << '"';
  } else {
    os_ << v;
  }
  ++filled_;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(fmt(v)); }
CsvWriter& CsvWriter::cell(std::int64_t v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row has too few cells");
  os_ << '\n';
  filled_ = 0;
}

nlohmann::json polygon_to_json(const Polygon& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : p)
    a.push_back({{"x", {v.x.num(), v.x.den()}}, {"y", {v.y.num(), v.y.den()}}});
  return a;
}

nlohmann::json star_to_json(const StarBoundary& s) {
  nlohmann::json j;
  j["vertices"] = polygon_to_json(s.vertices);
  j["edge_tags"] = nlohmann::json::array();
  for (Vec2i t : s.edge_tags) j["edge_tags"].push_back({t.x, t.y});
  return j;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  if (has_seed) j["seed"] = seed;
  j["tool_version"] = tool_version.empty() ? kToolVersion : tool_version;
  j["outputs"] = outputs;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["status"] = status;
  return j;
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path);
  out << to_json().dump(2) << '\n';
}

}  // namespace polygrowth::report
