#include <doctest.h>

#include <set>

#include "polygrowth/geometry.hpp"
#include "polygrowth/solvable.hpp"

using namespace polygrowth;

namespace {

RPoint rp(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }
RPoint rp(Rational x, Rational y) { return {x, y}; }

MonotoneRule moore(int theta) { return MonotoneRule::threshold(Neighborhood::moore(), theta); }
MonotoneRule box(int rho, int theta) { return MonotoneRule::threshold(Neighborhood::box(rho), theta); }

bool same_polygon(const Polygon& a, const Polygon& b) { return canonical(a) == canonical(b); }

/// Vertices a, b, c appear consecutively (in either orientation).
bool consecutive(const std::vector<RPoint>& v, RPoint a, RPoint b, RPoint c) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == a && v[(i + 1) % n] == b && v[(i + 2) % n] == c) return true;
    if (v[i] == c && v[(i + 1) % n] == b && v[(i + 2) % n] == a) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("speed examples") {
  CHECK(speed(moore(3), {1, 2}).scaled == 1);
  CHECK(speed(moore(2), {1, 1}).scaled == 1);
  CHECK(speed(moore(1), {1, 0}).scaled == 1);
  CHECK(speed(box(2, 11), {1, 0}).subcritical);
}

TEST_CASE("speed is symmetric and nonincreasing in theta") {
  for (int rho = 1; rho <= 3; ++rho) {
    const auto nbhd = Neighborhood::box(rho);
    for (Vec2i v : critical_directions(nbhd)) {
      std::int64_t prev = std::numeric_limits<std::int64_t>::max();
      for (int theta = 1; theta <= rho * (2 * rho + 1); ++theta) {
        const auto r = box(rho, theta);
        const auto s = speed(r, v).scaled;
        CHECK(s == speed(r, -v).scaled);
        CHECK(s <= prev);
        prev = s;
      }
    }
  }
}

TEST_CASE("critical directions") {
  const auto vn = critical_directions(Neighborhood::von_neumann());
  const std::set<Vec2i> vs(vn.begin(), vn.end());
  for (Vec2i v : std::vector<Vec2i>{{1, 0}, {0, 1}, {1, 1}, {1, -1}}) CHECK((vs.count(v) || vs.count(-v)));
  CHECK(critical_directions(Neighborhood({{0, 0}})).empty());
  const auto m = critical_directions(Neighborhood::moore());
  CHECK(m.size() == 16);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) CHECK(angle_less(m[i], m[i + 1]));
}

TEST_CASE("k_star for Moore rules") {
  SUBCASE("theta=3: sixteen vertices, eight isolated contact points, Case 1") {
    const auto s = k_star(moore(3));
    CHECK(s.size() == 16);
    CHECK(consecutive(s.vertices, rp(0, 1), rp(1, 2), rp(1, 1)));
    const auto kp = k_prime(s);
    CHECK(kp.points.size() == 8);
    CHECK(kp.segments.empty());
    const auto label = classify(s);
    CHECK(label.kind == Case::One);
    CHECK_FALSE(label.quasi_additive);
    CHECK(to_string(label) == "Case 1, supercritical, not quasi-additive");
  }
  SUBCASE("theta=2: K = co(N)") {
    CHECK(same_polygon(k_star(moore(2)).vertices, {rp(-1, -1), rp(1, -1), rp(1, 1), rp(-1, 1)}));
    CHECK(classify(moore(2)).quasi_additive);
  }
  SUBCASE("theta=1: K = N*") {
    CHECK(same_polygon(k_star(moore(1)).vertices, {rp(0, -1), rp(1, 0), rp(0, 1), rp(-1, 0)}));
  }
  SUBCASE("edges lie on their K-lines; boundary is point symmetric") {
    for (int theta = 1; theta <= 3; ++theta) {
      const auto s = k_star(moore(theta));
      const std::set<std::pair<Rational, Rational>> pts = [&] {
        std::set<std::pair<Rational, Rational>> out;
        for (const auto& v : s.vertices) out.insert({v.x, v.y});
        return out;
      }();
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& a = s.vertices[i];
        const auto& b = s.vertices[(i + 1) % s.size()];
        const Vec2i tag = s.edge_tags[i];
        CHECK(rdot(-tag, a) == Rational(1));
        CHECK(rdot(-tag, b) == Rational(1));
        CHECK(pts.count({-a.x, -a.y}));
      }
    }
  }
  SUBCASE("not supercritical") { CHECK_THROWS_AS(k_star(box(2, 11)), NotSupercritical); }
}

TEST_CASE("polar") {
  const Polygon square{rp(-1, -1), rp(1, -1), rp(1, 1), rp(-1, 1)};
  const Polygon diamond{rp(0, -1), rp(1, 0), rp(0, 1), rp(-1, 0)};
  CHECK(same_polygon(polar(square), diamond));
  CHECK(same_polygon(polar(polar(square)), square));
  const Polygon off_center{rp(1, 1), rp(2, 1), rp(2, 2)};
  CHECK_THROWS_AS(polar(off_center), std::domain_error);

  const std::vector<RPoint> k0{rp(0, 1), rp(0, -1), rp(-1, 1), rp(1, -1), rp(1, 2), rp(-1, -2)};
  const Polygon l0 = polar(convex_hull(k0));
  const Rational third(1, 3), two_thirds(2, 3);
  CHECK(same_polygon(l0, {rp(1, 0), rp(-third, two_thirds), rp(-1, 0), rp(third, -two_thirds)}));
  CHECK(same_polygon(polar(l0), convex_hull(k0)));

  // involution over every convex hull of a survey star
  for (const auto& s : k_family(3)) {
    const Polygon h = convex_hull(s.vertices);
    CHECK(same_polygon(polar(polar(h)), h));
  }
}

TEST_CASE("wulff shapes") {
  CHECK(same_polygon(wulff_shape(moore(1)), {rp(-1, -1), rp(1, -1), rp(1, 1), rp(-1, 1)}));
  CHECK(same_polygon(wulff_shape(moore(2)), {rp(0, -1), rp(1, 0), rp(0, 1), rp(-1, 0)}));
  const Polygon hex{rp(0, -1), rp(1, -1), rp(1, 0), rp(0, 1), rp(-1, 1), rp(-1, 0)};
  CHECK(same_polygon(wulff_shape(solvable::solvable_rule(1.0)), hex));
  // von Neumann additive: L = co(N)
  CHECK(same_polygon(wulff_shape(MonotoneRule::threshold(Neighborhood::von_neumann(), 1)),
                     {rp(0, -1), rp(1, 0), rp(0, 1), rp(-1, 0)}));
}

TEST_CASE("classification on the range-2 box") {
  CHECK(classify(box(2, 7)).kind == Case::Two);
  CHECK(classify(box(2, 8)).kind == Case::Three);
  CHECK_FALSE(k_prime(k_star(box(2, 8))).segments.empty());
  CHECK(classify(box(2, 4)).kind == Case::One);
  CHECK_THROWS_AS(classify(box(2, 11)), NotSupercritical);
}

TEST_CASE("lambda") {
  const auto b2 = Neighborhood::box(2);
  CHECK(lambda_star({-2, -2}, 2) == 1);
  CHECK(lambda_of_line(Neighborhood::moore(), {0, -1}, {1, 0}) == 3);
  CHECK_THROWS_AS(lambda_of_line(b2, {1, 1}, {1, 1}), std::invalid_argument);
  // perpendicular line through x counts {y : <y,x> >= <x,x>}
  for (Vec2i x : b2.offsets()) {
    if (x == Vec2i{0, 0}) continue;
    int expected = 0;
    for (Vec2i y : b2.offsets()) expected += dot(y, x) >= dot(x, x);
    CHECK(lambda_of_line(b2, x, {-x.y, x.x}) == expected);
  }
  for (int rho = 1; rho <= 6; ++rho)
    for (int theta = 1; theta <= rho; ++theta) CHECK(lambda_star({-rho + theta - 1, -rho}, rho) == theta);
  CHECK(lambda_values(2) == std::set<int>{1, 2, 3, 5, 8});
  for (int rho = 1; rho <= 4; ++rho)
    for (int y = -rho; y <= rho; ++y)
      for (int x = -rho; x <= rho; ++x)
        if (x || y) CHECK(lambda_star({x, y}, rho) == lambda_star_adjacent_sides({x, y}, rho));
}

TEST_CASE("survey") {
  const auto s1 = survey(1);
  REQUIRE(s1.rows.size() == 3);
  CHECK_FALSE(s1.rows[0].exactly_stable);
  CHECK_FALSE(s1.rows[1].exactly_stable);
  CHECK(s1.rows[2].exactly_stable);

  const auto s2 = survey(2, 1);
  std::set<int> c1, c2, c3, sub;
  for (const auto& r : s2.rows) {
    if (!r.supercritical) sub.insert(r.theta);
    else if (r.label.kind == Case::One) c1.insert(r.theta);
    else if (r.label.kind == Case::Two) c2.insert(r.theta);
    else c3.insert(r.theta);
  }
  CHECK(c1 == std::set<int>{4, 6});
  CHECK(c2 == std::set<int>{7, 9, 10});
  CHECK(c3 == std::set<int>{1, 2, 3, 5, 8});
  CHECK(sub == std::set<int>{11});
  CHECK(s2.routes_agree);
  for (int rho = 3; rho <= 5; ++rho) CHECK(survey(rho).routes_agree);
}

TEST_CASE("family invariants") {
  for (int rho = 1; rho <= 3; ++rho) {
    CHECK(family_nested(rho));
    const auto fam = k_family(rho);
    CHECK(fam.size() == static_cast<std::size_t>(rho * (2 * rho + 1)));
    CHECK(family_meets_discretely(fam));
    // each K-line carries exactly one contact segment across the family
    for (const auto& [tag, count] : kline_segment_counts(fam)) CHECK(count == 1);
  }
  const auto fam1 = k_family(1);
  CHECK(fam1[0].size() == 4);
  CHECK(fam1[1].size() == 4);
  CHECK(fam1[2].size() == 16);
}

TEST_CASE("distinct products") {
  CHECK(distinct_products(1) == 1);
  CHECK(distinct_products(2) == 3);
  CHECK(distinct_products(4) == 9);
}

TEST_CASE("lattice points and containment") {
  const Polygon square{rp(-1, -1), rp(1, -1), rp(1, 1), rp(-1, 1)};
  CHECK(contains(square, rp(1, 1)));
  CHECK_FALSE(contains(square, rp(Rational(3, 2), Rational(0))));
  CHECK(lattice_points(square, rp(0, 0), Rational(2)).size() == 25);
}

TEST_CASE("solvable skeleton geometry") {
  const auto s = k_star(solvable::sure_rule());
  const Polygon expected{rp(1, 2), rp(0, 1), rp(-1, 1), rp(-1, -2), rp(0, -1), rp(1, -1)};
  CHECK(same_polygon(convex_hull(s.vertices), convex_hull(expected)));
  std::set<std::pair<Rational, Rational>> got;
  for (const auto& v : s.vertices) got.insert({v.x, v.y});
  for (const auto& v : expected) CHECK(got.count({v.x, v.y}));
}
