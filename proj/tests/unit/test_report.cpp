#include <doctest.h>

#include <sstream>

#include "polygrowth/report.hpp"
#include "polygrowth/solvable.hpp"

using namespace polygrowth;
using namespace polygrowth::report;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("svg canvas") {
  SvgCanvas c(2.0);
  CHECK(c.empty());
  const std::vector<Pt> square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  c.polygon(square, "#000", "none");
  const std::string doc = c.str();
  CHECK(count(doc, "<path") == 1);
  CHECK(count(doc, " L") == 3);
  // y points up: world (0, 2) maps to the top margin
  SvgCanvas top(2.0);
  top.marker({0, 2}, 1, "#000");
  CHECK(top.str().find("cx=\"320\" cy=\"24\"") != std::string::npos);
}

TEST_CASE("empty geometry gives an empty canvas") {
  const std::string doc = render_overlay({});
  CHECK(doc.find("<svg") != std::string::npos);
  CHECK(count(doc, "<path") == 0);
  CHECK(render_star(StarBoundary{}).find("</svg>") != std::string::npos);
}

TEST_CASE("star rendering") {
  const auto star = k_star(MonotoneRule::threshold(Neighborhood::moore(), 3));
  const std::string doc = render_star(star);
  CHECK(doc == render_star(star));
  // axes (2), hull, star
  CHECK(count(doc, "<path") == 4);
  CHECK(count(doc, "<circle") == 8);
  // one 16-vertex path plus the two axis segments
  CHECK(count(render_overlay({to_points(star.vertices)}), " L") == 15 + 2);
}

TEST_CASE("cells merge into row runs") {
  SvgCanvas c(5.0);
  const std::vector<Vec2i> cells{{0, 0}, {1, 0}, {2, 0}, {0, 1}};
  c.cells(cells, "#000");
  CHECK(count(c.str(), "Z") == 2);
}

TEST_CASE("csv writer") {
  std::ostringstream os;
  CsvWriter w(os, {"a", "b", "c"});
  w.cell(1).cell(0.5).cell("x,y");
  w.end_row();
  CHECK(os.str() == "a,b,c\n1,0.5,\"x,y\"\n");
  w.cell(1);
  CHECK_THROWS(w.end_row());
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("manifest json") {
  RunManifest m;
  m.command = "strip";
  m.config = {{"p", 0.9}};
  m.seed = 7;
  m.has_seed = true;
  m.outputs = {"out/velocities.csv"};
  const auto j = m.to_json();
  CHECK(j["command"] == "strip");
  CHECK(j["seed"] == 7);
  CHECK(j["config"]["p"] == 0.9);
  CHECK(j["tool_version"] == kToolVersion);
}

TEST_CASE("exact polygon export") {
  const auto l = wulff_shape(solvable::sure_rule());
  const auto j = polygon_to_json(l);
  REQUIRE(j.size() == 4);
  bool found = false;
  for (const auto& v : j) found = found || (v["x"] == nlohmann::json{-1, 3} && v["y"] == nlohmann::json{2, 3});
  CHECK(found);
}
