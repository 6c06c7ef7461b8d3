#include <doctest.h>

#include <cmath>
#include <set>

#include "polygrowth/random_sim.hpp"

using namespace polygrowth;

namespace {

MonotoneRule moore(int theta) { return MonotoneRule::threshold(Neighborhood::moore(), theta); }

std::set<Vec2i> as_set(const std::vector<Vec2i>& v) { return {v.begin(), v.end()}; }

std::vector<Vec2i> block(int x0, int y0, int w, int h) {
  std::vector<Vec2i> out;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) out.push_back({x, y});
  return out;
}

bool subset_of(const std::vector<Vec2i>& a, const std::set<Vec2i>& b) {
  for (Vec2i c : a)
    if (!b.count(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("counter-based uniforms") {
  const RngKey k{42, 0};
  CHECK(uniform01(k, 3, 4, 5) == uniform01(k, 3, 4, 5));
  CHECK(uniform01(k, 3, 4, 5) != uniform01(k, 4, 3, 5));
  CHECK(uniform01(k, 3, 4, 5) != uniform01(RngKey{42, 1}, 3, 4, 5));
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = uniform01(k, i, -i, 7);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("perturbation spec") {
  const auto spec = PerturbationSpec::standard(moore(3), 0.7);
  const auto& n = spec.neighborhood();
  const std::vector<Vec2i> three{{1, 0}, {0, 1}, {-1, 0}}, two{{1, 0}, {0, 1}}, origin{{0, 0}};
  CHECK(spec.probability(n.mask_of(three)) == doctest::Approx(0.7));
  CHECK(spec.probability(n.mask_of(two)) == 0.0);
  CHECK(spec.probability(n.mask_of(origin)) == 1.0);
  CHECK_THROWS(PerturbationSpec::standard(moore(3), 0.0));
  CHECK_THROWS(PerturbationSpec::standard(moore(3), 1.5));

  const MonotoneRule table(Neighborhood::von_neumann(),
                           ProbTable{{{{{1, 0}}, 0.3}, {{{-1, 0}}, 0.3}, {{{0, 1}}, 0.6}, {{{0, -1}}, 0.6}}});
  const auto custom = PerturbationSpec::custom(table);
  CHECK(custom.p() == doctest::Approx(0.3));
  CHECK_FALSE(custom.is_standard());
}

TEST_CASE("p = 1 reproduces the deterministic step") {
  const auto rule = moore(3);
  const auto spec = PerturbationSpec::standard(rule, 1.0);
  RandomRun run{finite_state(block(0, 0, 4, 3)), RngKey{9, 0}, 1};
  auto det = run.state;
  for (int t = 0; t < 10; ++t) {
    run = sample_step(spec, run);
    det = step_deterministic(rule, det);
    CHECK(as_set(run.state.cells()) == as_set(det.cells()));
  }
  const std::vector<Vec2i> origin{{0, 0}};
  const auto traj = grow_finite(PerturbationSpec::standard(moore(1), 1.0), origin, 10, RngKey{1, 0});
  CHECK(as_set(traj.final_state().cells()) == as_set(block(-10, -10, 21, 21)));
}

TEST_CASE("coupling sandwich: A_t within A_{t+1} within T_d(A_t)") {
  for (double p : {0.3, 0.7, 0.95}) {
    const auto spec = PerturbationSpec::standard(MonotoneRule::threshold(Neighborhood::box(2), 7), p);
    RandomRun run{finite_state(block(-3, -3, 7, 7)), RngKey{77, 3}, 1};
    for (int t = 0; t < 25; ++t) {
      const auto upper = as_set(step_deterministic(spec.skeleton(), run.state).cells());
      const auto before = run.state.cells();
      run = sample_step(spec, run);
      const auto after = run.state.cells();
      CHECK(subset_of(before, as_set(after)));
      CHECK(subset_of(after, upper));
    }
  }
}

TEST_CASE("monotone coupling in p on small grids") {
  const auto rule = moore(2);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    std::vector<Vec2i> a0;
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x)
        if (uniform01(RngKey{seed, 99}, x, y, 0) < 0.2) a0.push_back({x, y});
    if (a0.empty()) continue;
    std::vector<RandomRun> runs;
    const std::vector<double> ps{0.2, 0.5, 0.8, 1.0};
    for (std::size_t i = 0; i < ps.size(); ++i) runs.push_back({finite_state(a0), RngKey{seed, 0}, 1});
    for (int t = 0; t < 10; ++t) {
      for (std::size_t i = 0; i < ps.size(); ++i) runs[i] = sample_step(PerturbationSpec::standard(rule, ps[i]), runs[i]);
      for (std::size_t i = 0; i + 1 < ps.size(); ++i)
        CHECK(subset_of(runs[i].state.cells(), as_set(runs[i + 1].state.cells())));
    }
  }
}

TEST_CASE("reproducibility does not depend on threads") {
  const auto spec = PerturbationSpec::standard(moore(3), 0.8);
  const auto seed = block(0, 0, 6, 6);
  const auto a = grow_finite(spec, seed, 60, RngKey{5, 2}, 1);
  const auto b = grow_finite(spec, seed, 60, RngKey{5, 2}, 4);
  CHECK(as_set(a.final_state().cells()) == as_set(b.final_state().cells()));
  for (Vec2i c : a.final_state().cells()) REQUIRE(a.occupation_time(c) == b.occupation_time(c));
  const auto c = grow_finite(spec, seed, 60, RngKey{6, 2}, 1);
  CHECK(as_set(a.final_state().cells()) != as_set(c.final_state().cells()));
  CHECK(as_set(a.snapshot(30).cells()) == as_set(a.cells_at(30)));

  StripConfig cfg;
  cfg.width = 64;
  cfg.horizon = 200;
  const auto s1 = strip_velocity(spec, cfg, RngKey{11, 0});
  cfg.threads = 3;
  const auto s3 = strip_velocity(spec, cfg, RngKey{11, 0});
  CHECK(s1.estimate == s3.estimate);
  CHECK(s1.stderr_ == s3.stderr_);
}

TEST_CASE("finite growth is bounded by the deterministic iterate") {
  const auto rule = moore(3);
  const auto seed = block(0, 0, 6, 6);
  const auto traj = grow_finite(PerturbationSpec::standard(rule, 0.6), seed, 40, RngKey{3, 0});
  const auto det = as_set(iterate(rule, finite_state(seed), 40).cells());
  CHECK(subset_of(traj.final_state().cells(), det));
}

TEST_CASE("hausdorff_to_polygon") {
  const RPoint o{Rational(0), Rational(0)};
  const Polygon square{{Rational(-1), Rational(-1)}, {Rational(1), Rational(-1)}, {Rational(1), Rational(1)},
                       {Rational(-1), Rational(1)}};
  const auto cells = lattice_points(square, o, Rational(7));
  CHECK(hausdorff_to_polygon(cells, square, 7.0) <= 1.0);
  const std::vector<Vec2i> origin{{0, 0}};
  CHECK(hausdorff_to_polygon(origin, square, 10.0) == doctest::Approx(10 * std::sqrt(2.0)).epsilon(0.1));
  const std::vector<Vec2i> none;
  CHECK_THROWS(hausdorff_to_polygon(none, square, 1.0));

  // deterministic Moore theta=3 stays within a constant of tL
  const auto rule = moore(3);
  const Polygon l = wulff_shape(rule);
  LatticeState s = finite_state(shape_seed(l, 4));
  for (int t = 1; t <= 200; ++t) {
    s = step_deterministic(rule, s);
    if (t >= 50 && t % 25 == 0) CHECK(hausdorff_to_polygon(s, l, double(t + 4)) <= 10.0);
  }
}

TEST_CASE("random growth approaches tL at p = 0.9") {
  const auto spec = PerturbationSpec::standard(moore(3), 0.9);
  const Polygon l = wulff_shape(moore(3));
  const auto seed = block(-3, -3, 6, 6);
  int close = 0;
  const int runs = 10;
  for (int r = 0; r < runs; ++r) {
    const auto traj = grow_finite(spec, seed, 300, RngKey{2024, std::uint64_t(r)});
    close += hausdorff_to_polygon(traj.final_state(), l, 300.0) <= 30.0;
  }
  CHECK(close == runs);
}

TEST_CASE("strip estimator") {
  SUBCASE("p = 1 is exact") {
    for (int theta : {2, 3}) {
      const auto spec = PerturbationSpec::standard(moore(theta), 1.0);
      for (Vec2i v : std::vector<Vec2i>{{0, 1}, {1, 2}, {1, 1}, {2, -1}, {-1, -3}}) {
        StripConfig cfg;
        cfg.direction = v;
        cfg.width = 40;
        cfg.horizon = 200;
        const auto e = strip_velocity(spec, cfg, RngKey{1, 0});
        const Speed sp = speed(moore(theta), v);
        const Vec2i red = e.reduction.apply(v);
        CHECK(red.x <= 0);
        CHECK(-red.x <= red.y);
        CHECK(e.vertical_speed == Rational(sp.scaled, red.y));
        CHECK(e.stderr_ == 0.0);
        CHECK(e.estimate == doctest::Approx(sp.scaled / std::hypot(v.x, v.y)).epsilon(1e-12));
        CHECK(e.order_violations == 0);
      }
    }
  }
  SUBCASE("p < 1 respects the coupling bound, heights are ordered and nondecreasing") {
    const auto spec = PerturbationSpec::standard(moore(3), 0.9);
    StripConfig cfg;
    cfg.width = 128;
    cfg.horizon = 600;
    const auto dirs = star_directions(spec.neighborhood());
    const auto rows = estimate_k_polygon(spec, dirs, cfg, 31337);
    for (const auto& e : rows) {
      const double w1 = speed(moore(3), e.direction).scaled / std::hypot(e.direction.x, e.direction.y);
      CHECK(e.estimate <= w1 + 3 * e.stderr_);
      CHECK(e.order_violations == 0);
      for (std::size_t t = 1; t < e.mean_h1.size(); ++t) REQUIRE(e.mean_h1[t] >= e.mean_h1[t - 1]);
    }
    // replica spread is the calibrated error bar; v and -v sample the same law
    StripConfig rep;
    rep.width = 64;
    rep.horizon = 400;
    rep.replicas = 8;
    const std::vector<Vec2i> pairs{{0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, 2}, {-1, -2}};
    const auto sym = estimate_k_polygon(spec, pairs, rep, 4242);
    for (std::size_t i = 0; i < sym.size(); i += 2) {
      const double pooled = std::hypot(sym[i].stderr_, sym[i + 1].stderr_);
      CHECK(std::abs(sym[i].estimate - sym[i + 1].estimate) <= 3 * pooled + 1e-9);
      CHECK(sym[i].samples == 8 * 192);
    }
  }
}

TEST_CASE("strip reduction") {
  for (Vec2i v : std::vector<Vec2i>{{0, 1}, {1, 0}, {3, -2}, {-5, -7}, {2, 2}, {-1, 4}}) {
    const Vec2i r = strip_reduction(v).apply(v);
    CHECK(r.x <= 0);
    CHECK(-r.x <= r.y);
    CHECK(std::abs(r.x) + std::abs(r.y) == std::abs(v.x) + std::abs(v.y));
  }
}

TEST_CASE("hole repair") {
  const auto corner = HoleSpec{HoleSpec::Where::Corner, 0, 3};
  const auto edge = HoleSpec{HoleSpec::Where::EdgeMidpoint, 0, 3};
  CHECK(hole_repair(moore(3), 20, corner).repaired);
  CHECK(hole_repair(moore(3), 20, edge).repaired);
  const auto notch = hole_repair(moore(2), 20, corner);
  CHECK_FALSE(notch.repaired);
  CHECK(notch.deficit.back() > 0);
  CHECK(hole_repair(moore(2), 20, edge).repaired);
}

TEST_CASE("corner lag at p = 1 is bounded") {
  const auto trace = corner_lag(PerturbationSpec::standard(moore(3), 1.0), 200, RngKey{0, 0}, 10, 10);
  REQUIRE_FALSE(trace.max_lag.empty());
  for (double lag : trace.max_lag) CHECK(lag <= 2.0);
  CHECK(trace.corners.size() == wulff_shape(moore(3)).size());
}
