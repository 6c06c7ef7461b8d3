#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "polygrowth/geometry.hpp"
#include "polygrowth/lattice.hpp"
#include "polygrowth/rule.hpp"
#include "polygrowth/rule_io.hpp"
#include "polygrowth/solvable.hpp"

using namespace polygrowth;

namespace {

std::set<Vec2i> as_set(const std::vector<Vec2i>& v) { return {v.begin(), v.end()}; }

std::vector<Vec2i> block(int x0, int y0, int w, int h) {
  std::vector<Vec2i> out;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) out.push_back({x, y});
  return out;
}

bool has_code(const std::vector<RuleViolation>& v, const std::string& code) {
  for (const auto& r : v)
    if (r.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("neighborhood construction") {
  CHECK(Neighborhood::moore().size() == 9);
  CHECK(Neighborhood::von_neumann().size() == 5);
  CHECK(Neighborhood::box(2).size() == 25);
  CHECK(Neighborhood::box(2).radius() == 2);
  CHECK(Neighborhood::moore().origin_index() >= 0);
  CHECK_THROWS_AS(Neighborhood({{0, 0}, {1, 0}, {1, 0}}), std::invalid_argument);
  const auto n = Neighborhood::moore();
  const std::vector<Vec2i> s{{1, 0}, {-1, 1}};
  CHECK(n.offsets_of(n.mask_of(s)).size() == 2);
  const std::vector<Vec2i> outside{{2, 0}};
  CHECK_THROWS_AS(n.mask_of(outside), std::invalid_argument);
}

TEST_CASE("validate_rule") {
  SUBCASE("threshold rules are valid") {
    CHECK(validate_rule(MonotoneRule::threshold(Neighborhood::moore(), 3)).empty());
    CHECK(validate_rule(MonotoneRule::threshold(Neighborhood::box(3), 20)).empty());
  }
  SUBCASE("containment among minimal sets") {
    const MonotoneRule r(Neighborhood::von_neumann(), Antichain{{{{1, 0}}, {{1, 0}, {0, 1}}}});
    CHECK(has_code(validate_rule(r), "not an antichain"));
  }
  SUBCASE("non-monotone table") {
    const MonotoneRule r(Neighborhood::von_neumann(),
                         ProbTable{{{{{1, 0}}, 0.5}, {{{1, 0}, {0, 1}}, 0.3}}});
    CHECK(has_code(validate_rule(r), "monotonicity"));
  }
  SUBCASE("asymmetric rule") {
    const MonotoneRule r(Neighborhood::von_neumann(), Antichain{{{{1, 0}}}});
    CHECK(has_code(validate_rule(r), "symmetry"));
  }
  SUBCASE("missing origin") {
    const MonotoneRule r(Neighborhood({{1, 0}, {-1, 0}}), Threshold{1});
    CHECK(has_code(validate_rule(r), "origin"));
  }
  SUBCASE("solvable table") { CHECK(validate_rule(solvable::solvable_rule(0.4)).empty()); }
}

TEST_CASE("sufficiency") {
  const auto r = MonotoneRule::threshold(Neighborhood::moore(), 3);
  const std::vector<Vec2i> two{{1, 0}, {0, 1}}, origin{{0, 0}}, three{{1, 0}, {0, 1}, {-1, -1}};
  CHECK(sufficiency(r, two) == 0.0);
  CHECK(sufficiency(r, origin) == 1.0);
  CHECK(sufficiency(r, three) == 1.0);
  const std::vector<Vec2i> bad{{3, 0}};
  CHECK_THROWS_AS(sufficiency(r, bad), std::invalid_argument);

  const auto s = solvable::solvable_rule(0.3);
  const std::vector<Vec2i> left{{-1, 0}}, diag{{1, -1}}, pair{{1, -1}, {0, -1}}, none{};
  CHECK(sufficiency(s, left) == 1.0);
  CHECK(sufficiency(s, diag) == doctest::Approx(0.3));
  CHECK(sufficiency(s, pair) == 1.0);
  CHECK(sufficiency(s, none) == 0.0);
}

TEST_CASE("probability table fill rule") {
  const MonotoneRule r(Neighborhood::von_neumann(), ProbTable{{{{{1, 0}}, 0.4}, {{{-1, 0}}, 0.4}}});
  const auto& n = r.neighborhood();
  const std::vector<Vec2i> sup{{1, 0}, {0, 1}}, unlisted{{0, 1}}, with_origin{{0, 0}};
  CHECK(r.probability(n.mask_of(sup)) == doctest::Approx(0.4));
  CHECK(r.probability(n.mask_of(unlisted)) == 0.0);
  CHECK(r.probability(n.mask_of(with_origin)) == 1.0);
  const MonotoneRule skel = r.skeleton();
  CHECK(skel.is_deterministic());
  CHECK(skel.probability(n.mask_of(sup)) == 1.0);
}

TEST_CASE("rule JSON round trip and schema errors") {
  const auto doc = nlohmann::json::parse(R"({"neighborhood": {"box": 2}, "kind": "threshold", "theta": 8})");
  const MonotoneRule r = rule_from_json(doc);
  CHECK(r.neighborhood().size() == 25);
  const MonotoneRule back = rule_from_json(rule_to_json(r));
  CHECK(back.neighborhood() == r.neighborhood());
  CHECK(std::get<Threshold>(back.kind()).theta == 8);

  const auto anti = rule_from_json(rule_to_json(solvable::sure_rule()));
  CHECK(anti.minimal_masks().size() == solvable::sure_rule().minimal_masks().size());

  auto field_of = [](const char* text) {
    try {
      rule_from_json(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("no error");
  };
  CHECK(field_of(R"({"neighborhood": "moore", "kind": "threshold"})") == "rule.theta");
  CHECK(field_of(R"({"neighborhood": "moore", "kind": "bogus"})") == "rule.kind");
  CHECK(field_of(R"({"neighborhood": [[0,0],[1]], "kind": "threshold", "theta": 1})") == "rule.neighborhood[1]");
  CHECK(field_of(R"({"kind": "threshold", "theta": 1})") == "rule.neighborhood");
}

TEST_CASE("step_deterministic examples") {
  SUBCASE("additive rule from a point") {
    const auto r = MonotoneRule::threshold(Neighborhood::moore(), 1);
    const std::vector<Vec2i> origin{{0, 0}};
    const auto s1 = step_deterministic(r, finite_state(origin));
    CHECK(as_set(s1.cells()) == as_set(block(-1, -1, 3, 3)));
    const auto s5 = iterate(r, finite_state(origin), 5);
    CHECK(as_set(s5.cells()) == as_set(block(-5, -5, 11, 11)));
    CHECK(s5.time == 5);
  }
  SUBCASE("2x2 block is fixed under Moore theta=3") {
    const auto r = MonotoneRule::threshold(Neighborhood::moore(), 3);
    const auto a0 = finite_state(block(0, 0, 2, 2));
    CHECK(same_cells(step_deterministic(r, a0), a0));
  }
  SUBCASE("zero steps is the identity") {
    const auto r = MonotoneRule::threshold(Neighborhood::moore(), 2);
    const auto a0 = finite_state(block(0, 0, 3, 2));
    CHECK(same_cells(iterate(r, a0, 0), a0));
  }
  SUBCASE("half-space under Moore theta=2 moves up one row") {
    const auto r = MonotoneRule::threshold(Neighborhood::moore(), 2);
    const Rect w{-10, -10, 10, 10};
    const auto s = step_deterministic(r, background_state(HalfSpace{{0, 1}, Rational(0), {}}, w));
    for (Vec2i c : std::vector<Vec2i>{{0, 1}, {5, 1}, {-3, 0}}) CHECK(s.occupied(c));
    CHECK_FALSE(s.occupied({0, 2}));
    CHECK(s.valid == w.shrunk(1));
  }
}

TEST_CASE("window exhaustion") {
  const auto r = MonotoneRule::threshold(Neighborhood::moore(), 2);
  auto s = background_state(HalfSpace{{0, 1}, Rational(0), {}}, Rect{-3, -3, 3, 3});
  CHECK_THROWS_AS(iterate(r, s, 10), WindowExhausted);
  CHECK_THROWS_AS(iterate(r, s, 2).occupied({0, -3}), std::out_of_range);
}

TEST_CASE("fills_space_probe") {
  const std::vector<Vec2i> origin{{0, 0}};
  CHECK(fills_space_probe(MonotoneRule::threshold(Neighborhood::moore(), 1), origin, 20) == FillVerdict::GrowsLikeL);
  const auto t3 = MonotoneRule::threshold(Neighborhood::moore(), 3);
  CHECK(fills_space_probe(t3, block(0, 0, 2, 2), 50) == FillVerdict::Stalled);
  CHECK(fills_space_probe(t3, block(0, 0, 4, 4), 50) == FillVerdict::GrowsLikeL);
}

TEST_CASE("solidification, monotonicity in the initial set, point-reflection equivariance") {
  std::mt19937 gen(12345);
  std::bernoulli_distribution coin(0.35);
  const std::vector<MonotoneRule> rules{MonotoneRule::threshold(Neighborhood::moore(), 3),
                                        MonotoneRule::threshold(Neighborhood::box(2), 7), solvable::sure_rule()};
  for (const auto& rule : rules) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec2i> a, b, neg;
      for (int y = -4; y <= 4; ++y)
        for (int x = -4; x <= 4; ++x) {
          const bool in_a = coin(gen);
          if (in_a) a.push_back({x, y}), neg.push_back({-x, -y});
          if (in_a || coin(gen)) b.push_back({x, y});
        }
      if (a.empty()) continue;
      const auto sa = step_deterministic(rule, finite_state(a));
      const auto sb = step_deterministic(rule, finite_state(b));
      const auto ca = as_set(sa.cells()), cb = as_set(sb.cells());
      for (Vec2i c : a) CHECK(ca.count(c));
      for (Vec2i c : ca) CHECK(cb.count(c));
      std::set<Vec2i> reflected;
      for (Vec2i c : step_deterministic(rule, finite_state(neg)).cells()) reflected.insert(-c);
      CHECK(reflected == ca);
    }
  }
}

TEST_CASE("transformed rules commute with the lattice symmetry") {
  const MonotoneRule r(Neighborhood::von_neumann(), Antichain{{{{1, 0}, {0, 1}}, {{-1, 0}, {0, -1}}}});
  const std::vector<Vec2i> a0 = block(0, 0, 3, 1);
  for (Dihedral g : Dihedral::all()) {
    std::vector<Vec2i> ga;
    for (Vec2i c : a0) ga.push_back(g.apply(c));
    std::set<Vec2i> expected;
    for (Vec2i c : iterate(r, finite_state(a0), 3).cells()) expected.insert(g.apply(c));
    CHECK(as_set(iterate(r.transformed(g), finite_state(ga), 3).cells()) == expected);
  }
}

TEST_CASE("half-space oracle") {
  struct Case {
    MonotoneRule rule;
    Vec2i v;
  };
  const std::vector<Case> cases{{MonotoneRule::threshold(Neighborhood::moore(), 3), {1, 2}},
                                {MonotoneRule::threshold(Neighborhood::moore(), 2), {0, 1}},
                                {MonotoneRule::threshold(Neighborhood::box(2), 8), {1, 1}},
                                {solvable::sure_rule(), {-1, 1}}};
  for (const auto& c : cases) {
    const Speed sp = speed(c.rule, c.v);
    REQUIRE(sp.scaled > 0);
    const auto s0 = half_space_state(c.rule, c.v, 0, Rect{-40, -40, 40, 40}, false);
    const auto s = iterate(c.rule, s0, 12);
    const HalfSpace expected{c.v, Rational(12 * sp.scaled), {}};
    for (int y = s.valid.y0; y < s.valid.y1; ++y)
      for (int x = s.valid.x0; x < s.valid.x1; ++x) REQUIRE(s.occupied({x, y}) == expected.contains({x, y}));
  }
}

TEST_CASE("RLE round trip") {
  const auto r = MonotoneRule::threshold(Neighborhood::moore(), 3);
  const auto s = iterate(r, finite_state(block(0, 0, 5, 4)), 6);
  std::stringstream io;
  write_rle(io, s);
  const auto back = read_rle(io);
  CHECK(back.time == s.time);
  CHECK(back.valid == s.valid);
  CHECK(same_cells(back, s));
}
