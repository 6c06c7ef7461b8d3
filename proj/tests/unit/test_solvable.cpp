#include <doctest.h>

#include <cmath>

#include "polygrowth/solvable.hpp"

using namespace polygrowth;
using namespace polygrowth::solvable;

TEST_CASE("phi closed forms") {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    CHECK(std::abs(phi(p, 1.0) - p) < 1e-12);
    CHECK(std::abs(phi(p, p) - 1.0) < 1e-12);
    for (int j = 0; j <= 20; ++j) {
      const double y = p + (1.0 - p) * j / 20.0;
      CHECK(std::abs(phi(p, phi(p, y)) - y) < 1e-12);
    }
  }
  CHECK(phi(0.5, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(phi(0.5, 0.2), std::domain_error);
}

TEST_CASE("y_zero") {
  CHECK(y_zero(0.5) == doctest::Approx(1.0));
  CHECK(y_zero(0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(y_zero(0.9) == 1.0);
  CHECK(std::abs(y_zero(0.5 - 1e-9) - 1.0) < 1e-4);
  // the two curves meet at the top corner
  for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.45}) {
    const double y0 = y_zero(p);
    CHECK(std::abs(-phi(p, y0) - (phi(p, y0) - y0)) < 1e-10);
    const auto row = shape_Lp(p).row(y0);
    REQUIRE(row.has_value());
    CHECK(row->first == doctest::Approx(-y0 / 2).epsilon(1e-9));
  }
}

TEST_CASE("wedge shapes") {
  for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    CHECK(wedge_shape(p, Region::W1).contains(-1.0, p / 2));
    for (double y = -0.9; y <= 0.9; y += 0.3)
      for (double x = -1.5; x <= 1.5; x += 0.25) {
        CHECK(wedge_shape(p, Region::W3).contains(x, y) == wedge_shape(p, Region::W1).contains(-x, -y));
        CHECK(wedge_shape(p, Region::W4).contains(x, y) == wedge_shape(p, Region::W2).contains(-x, -y));
      }
  }
}

TEST_CASE("L_p equals the intersection of the wedge shapes") {
  for (double p : {0.0, 0.15, 0.35, 0.5, 0.75, 1.0}) {
    const ShapeCurve lp = shape_Lp(p);
    for (int i = -30; i <= 30; ++i)
      for (int j = -30; j <= 30; ++j) {
        const double x = i / 25.0 + 1e-7, y = j / 25.0 + 2e-7;
        bool all = true;
        for (Region r : {Region::W1, Region::W2, Region::W3, Region::W4}) all = all && wedge_shape(p, r).contains(x, y);
        REQUIRE(lp.contains(x, y) == all);
      }
  }
}

TEST_CASE("L_0 and L_1 extremes") {
  const auto l0 = shape_Lp(0.0);
  CHECK(l0.y_max() == doctest::Approx(2.0 / 3.0));
  CHECK(l0.contains(-1.0 / 3.0, 2.0 / 3.0, 1e-9));
  CHECK(l0.contains(1.0, 0.0, 1e-9));
  CHECK_FALSE(l0.contains(0.0, 0.8));
  const auto l1 = shape_Lp(1.0);
  for (auto [x, y] : std::vector<std::pair<double, double>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}})
    CHECK(l1.contains(x, y, 1e-9));
  CHECK_FALSE(l1.contains(0.6, 0.6));
}

TEST_CASE("interface recursion") {
  const auto all = simulate_interface(1.0, 50, RngKey{1, 0}, -1, Start::Flat);
  for (auto h : all.h) CHECK(h == 50);
  InterfaceState prev = simulate_interface(0.4, 0, RngKey{8, 0}, 60);
  for (int t = 1; t <= 40; ++t) {
    const auto cur = simulate_interface(0.4, t, RngKey{8, 0}, 60);
    for (std::size_t n = 0; n < cur.h.size(); ++n) {
      const auto d = cur.h[n] - prev.h[n];
      REQUIRE((d == 0 || d == 1));
      REQUIRE(cur.h[n] <= t);
    }
    prev = cur;
  }
}

TEST_CASE("planar engine and recursion agree pathwise") {
  for (double p : {1.0, 0.7, 0.3}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rep = equivalence_check(p, 40, RngKey{seed, 0});
      CHECK(rep.match);
      CHECK(rep.mismatches == 0);
      CHECK(rep.lower_set_violations == 0);
      CHECK(rep.compared > 0);
    }
  }
}

TEST_CASE("law of large numbers") {
  const double p = 0.5;
  const std::int64_t T = 1000;
  for (double alpha : {0.3}) {
    double mean = 0;
    for (int s = 0; s < 10; ++s) mean += double(simulate_interface(p, T, RngKey{555, std::uint64_t(s)}).h[std::size_t(alpha * T)]) / T / 10;
    CHECK(std::abs(mean - interface_limit(p, alpha)) < 0.03);
  }
  CHECK(interface_limit(0.95, 0.1) == doctest::Approx(0.9));
  CHECK(interface_limit(0.3, 0.1) == doctest::Approx(phi(0.3, 0.9) - 0.1));
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_statistic({0, 0}, {1, 1}) == 1.0);
}
