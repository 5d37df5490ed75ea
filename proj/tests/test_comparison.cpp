#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ballcurv/comparison.hpp"
#include "oracles.hpp"

using namespace ballcurv;

namespace {

const double kTwoOverRoot3 = 2.0 / std::sqrt(3.0);

MinimaxResult solve_sides(double d12, double d13, double d23) {
  return rho_bar(build_comparison(d12, d13, d23), gromov_radii(d12, d13, d23));
}

// Random valid triangle with all Gromov radii at least `floor` of the perimeter.
std::array<double, 3> random_sides(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const double r1 = u(gen), r2 = u(gen), r3 = u(gen);
  return {r1 + r2, r1 + r3, r2 + r3};
}

}  // namespace

TEST_CASE("gromov radii examples") {
  const GromovRadii g = gromov_radii(3, 4, 5);
  CHECK(g.r1 == 1.0);
  CHECK(g.r2 == 2.0);
  CHECK(g.r3 == 3.0);
  const GromovRadii e = gromov_radii(0.7, 0.7, 0.7);
  CHECK(e.r1 == 0.35);
  CHECK(e.r3 == 0.35);
  const GromovRadii c = gromov_radii(2, 1, 1);  // x1 between x2... d23 = d12 - d13
  CHECK(c.min() == 0.0);
  CHECK(gromov_radii(1, 3, 1).r1 == 1.5);
  CHECK(gromov_radii(1, 3, 1).r2 == 0.0);
}

TEST_CASE("gromov radii sum back to the sides") {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 1000; ++t) {
    const auto s = random_sides(gen);
    const GromovRadii g = gromov_radii(s[0], s[1], s[2]);
    CHECK(oracle::within_ulps(g.r1 + g.r2, s[0], 4));
    CHECK(oracle::within_ulps(g.r1 + g.r3, s[1], 4));
    CHECK(oracle::within_ulps(g.r2 + g.r3, s[2], 4));
  }
}

TEST_CASE("comparison triangle placement") {
  const ComparisonTriangle t = build_comparison(3, 4, 5);
  CHECK(t.p[0].x == 0.0);
  CHECK(t.p[0].y == 0.0);
  CHECK(t.p[1].x == 3.0);
  CHECK(t.p[1].y == 0.0);
  CHECK(t.p[2].x == 0.0);
  CHECK(t.p[2].y == 4.0);

  const ComparisonTriangle c = build_comparison(2, 1, 1);
  CHECK(c.p[2].x == 1.0);
  CHECK(c.p[2].y == 0.0);

  const ComparisonTriangle e = build_comparison(1, 1, 1);
  CHECK(e.p[2].x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.p[2].y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));

  CHECK_THROWS_AS(build_comparison(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_comparison(1, -1, 1), std::invalid_argument);
  CHECK_NOTHROW(build_comparison(1, 1, 2 + 1e-12));
}

TEST_CASE("placement reproduces the sides") {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 1000; ++t) {
    const auto s = random_sides(gen);
    const ComparisonTriangle tri = build_comparison(s[0], s[1], s[2]);
    CHECK(tri.p[2].y >= 0.0);
    CHECK(std::fabs(distance(tri.p[0], tri.p[1]) - s[0]) <= 4 * 2.2e-16 * s[0]);
    CHECK(std::fabs(distance(tri.p[0], tri.p[2]) - s[1]) <= 8 * 2.2e-16 * (s[0] + s[1] + s[2]));
    CHECK(std::fabs(distance(tri.p[1], tri.p[2]) - s[2]) <= 8 * 2.2e-16 * (s[0] + s[1] + s[2]));
  }
}

TEST_CASE("equilateral value is 2/sqrt(3) at the circumcenter") {
  for (double s : {1.0, 0.001, 37.5}) {
    const MinimaxResult m = solve_sides(s, s, s);
    CHECK(m.rho_bar == doctest::Approx(kTwoOverRoot3).epsilon(1e-12));
    CHECK(m.center.x == doctest::Approx(s / 2).epsilon(1e-12));
    CHECK(m.center.y == doctest::Approx(s / (2 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(m.active_set == std::vector<std::size_t>{0, 1, 2});
  }
}

TEST_CASE("colinear input returns 1 at the middle point") {
  const MinimaxResult m = solve_sides(2, 1, 1);  // r3 = 0, p3 is the middle
  CHECK(m.rho_bar == 1.0);
  CHECK(m.center.x == 1.0);
  CHECK(m.center.y == 0.0);
  CHECK(m.active_set == std::vector<std::size_t>{0, 1});
}

TEST_CASE("3-4-5 triangle agrees with the grid oracle") {
  const ComparisonTriangle t = build_comparison(3, 4, 5);
  const GromovRadii g = gromov_radii(3, 4, 5);
  const double exact = rho_bar(t, g).rho_bar;
  CHECK(rho_bar_bruteforce(t, g, 1e-3, 2) == doctest::Approx(exact).epsilon(1e-6));
  CHECK(rho_bar_bruteforce(t, g, 1e-3, 2) >= exact * (1 - 1e-12));
}

TEST_CASE("equilateral brute force at step 1e-3") {
  const ComparisonTriangle t = build_comparison(1, 1, 1);
  const double v = rho_bar_bruteforce(t, gromov_radii(1, 1, 1), 1e-3);
  CHECK(std::fabs(v - kTwoOverRoot3) <= 1e-4);
}

TEST_CASE("one very large radius drives rho_bar to 1") {
  // Ball 3 approaches a half plane and the weighted midpoint of p1p2 wins.
  const double r1 = 0.1, r2 = 0.15;
  double prev = 2.0;
  for (double r3 : {5.0, 100.0, 1e4, 1e6}) {
    const double v = solve_sides(r1 + r2, r1 + r3, r2 + r3).rho_bar;
    CHECK(v > 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-6));
  const double r3 = 20.0;
  const ComparisonTriangle t = build_comparison(r1 + r2, r1 + r3, r2 + r3);
  const GromovRadii g = gromov_radii(r1 + r2, r1 + r3, r2 + r3);
  CHECK(rho_bar_bruteforce(t, g, 1e-2, 4, 10.0) == doctest::Approx(rho_bar(t, g).rho_bar).epsilon(1e-6));
}

TEST_CASE("a nondegenerate triangle never reaches 1") {
  // The weighted point of p_i p_j lies on the boundary of ball k only when
  // it is on the segment to p_k, which forces a colinear triangle.
  std::mt19937_64 gen(7);
  for (int t = 0; t < 1000; ++t) {
    const auto s = random_sides(gen);
    CHECK(solve_sides(s[0], s[1], s[2]).rho_bar > 1.0);
  }
}

TEST_CASE("minimax invariants on random triangles") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 20000; ++t) {
    const auto s = random_sides(gen);
    const ComparisonTriangle tri = build_comparison(s[0], s[1], s[2]);
    const GromovRadii g = gromov_radii(s[0], s[1], s[2]);
    const MinimaxResult m = rho_bar(tri, g);
    REQUIRE(m.rho_bar >= 1.0);
    REQUIRE(m.rho_bar <= kTwoOverRoot3 + 1e-9);
    REQUIRE(m.active_set.size() >= 2);
    const auto r = g.values();
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double v = distance(m.center, tri.p[i]) / r[i];
      worst = std::max(worst, v);
      const bool active = std::find(m.active_set.begin(), m.active_set.end(), i) != m.active_set.end();
      if (!active) REQUIRE(v < m.rho_bar);
    }
    REQUIRE(std::fabs(worst - m.rho_bar) <= 1e-9 * m.rho_bar);
  }
}

TEST_CASE("rho_bar is bitwise permutation invariant") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 5000; ++t) {
    const auto s = random_sides(gen);
    // Sides of the relabelled triangle (x_a, x_b, x_c) for each permutation.
    const double side[3][3] = {{0, s[0], s[1]}, {s[0], 0, s[2]}, {s[1], s[2], 0}};
    std::array<int, 3> perm{0, 1, 2};
    const double base = solve_sides(s[0], s[1], s[2]).rho_bar;
    do {
      const auto [a, b, c] = perm;
      REQUIRE(solve_sides(side[a][b], side[a][c], side[b][c]).rho_bar == base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("rho_bar is scale invariant") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 2000; ++t) {
    const auto s = random_sides(gen);
    const double base = solve_sides(s[0], s[1], s[2]).rho_bar;
    // Powers of two scale exactly.
    for (double c : {0.125, 2.0, 1024.0}) {
      REQUIRE(solve_sides(c * s[0], c * s[1], c * s[2]).rho_bar == base);
    }
    for (double c : {0.3, 7.0, 123.456}) {
      REQUIRE(std::fabs(solve_sides(c * s[0], c * s[1], c * s[2]).rho_bar - base) <= 1e-12);
    }
  }
}

TEST_CASE("rho_bar matches the grid oracle on random triangles") {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.01, 0.1);
  for (int t = 0; t < 300; ++t) {
    const double r1 = u(gen), r2 = u(gen), r3 = u(gen);
    const double s12 = r1 + r2, s13 = r1 + r3, s23 = r2 + r3;
    const ComparisonTriangle tri = build_comparison(s12, s13, s23);
    const GromovRadii g = gromov_radii(s12, s13, s23);
    const double exact = rho_bar(tri, g).rho_bar;
    const double brute = rho_bar_bruteforce(tri, g, 1e-3, 4, 10.0);
    REQUIRE(brute >= exact * (1 - 1e-12));
    REQUIRE(brute - exact <= 1e-5);
  }
}

TEST_CASE("brute force argument checks") {
  const ComparisonTriangle t = build_comparison(1, 1, 1);
  CHECK_THROWS(rho_bar_bruteforce(t, gromov_radii(1, 1, 1), 0.0));
  CHECK_THROWS(rho_bar_bruteforce(t, gromov_radii(1, 1, 1), 1e-2, 1, 1.0));
  CHECK_THROWS(rho_bar_bruteforce(build_comparison(2, 1, 1), gromov_radii(2, 1, 1), 1e-2));
}
