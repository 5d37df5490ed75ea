#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ballcurv/curvature.hpp"
#include "ballcurv/generators.hpp"
#include "oracles.hpp"

using namespace ballcurv;

namespace {

// Star with leaves at distances a, b, c from the center (index 3).
DistanceMatrix weighted_star(double a, double b, double c) {
  return oracle::from_rows({{0, a + b, a + c, a}, {a + b, 0, b + c, b}, {a + c, b + c, 0, c}, {a, b, c, 0}});
}

DistanceMatrix l1_grid(std::size_t side) {
  return lp_distance_matrix(gen_lp_grid({side, 2, 1.0, MetricExponent{1.0}}));
}

}  // namespace

TEST_CASE("gromov_products checks its indices") {
  const DistanceMatrix d = oracle::from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}});
  const GromovRadii g = gromov_products(d, 0, 1, 2);
  CHECK(g.r1 == 1.0);
  CHECK(g.r2 == 2.0);
  CHECK(g.r3 == 3.0);
  CHECK_THROWS_AS(gromov_products(d, 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(gromov_products(d, 0, 1, 3), std::out_of_range);
}

TEST_CASE("rho on a star is 1 at the center") {
  const DistanceMatrix d = weighted_star(1.0, 2.5, 0.75);
  const Witnessed r = rho_discrete(d, 0, 1, 2);
  CHECK(r.value == 1.0);
  CHECK(r.witness == 3);
  const GromovRadii g = gromov_products(d, 0, 1, 2);
  const Witnessed f = rho_family(d, {{{0, g.r1}, {1, g.r2}, {2, g.r3}}});
  CHECK(f.value == r.value);
  CHECK(f.witness == r.witness);
}

TEST_CASE("rho with an off-center fourth point") {
  const DistanceMatrix d = oracle::from_rows({{0, 2, 2, 1.2}, {2, 0, 2, 1.2}, {2, 2, 0, 1.2}, {1.2, 1.2, 1.2, 0}});
  const Witnessed r = rho_discrete(d, 0, 1, 2);
  CHECK(r.value == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(r.witness == 3);
}

TEST_CASE("three isolated points") {
  const DistanceMatrix d = oracle::equilateral(2.0);
  const Witnessed r = rho_discrete(d, 0, 1, 2);
  CHECK(r.value == 2.0);
  CHECK(r.witness == 0);
  const Witnessed t = tripod_defect(d, 0, 1, 2);
  CHECK(t.value == 2.0);
  CHECK(t.witness == 0);
  const TripleReport rep = evaluate_triple(d, 0, 1, 2);
  CHECK(rep.verdict == Verdict::Positive);
  CHECK(rep.rho_bar == doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("rho_pair examples") {
  const DistanceMatrix path = gen_path({3, 1.0});
  const Witnessed p = rho_pair(path, 0, 2);
  CHECK(p.value == 1.0);
  CHECK(p.witness == 1);
  const DistanceMatrix two = oracle::from_rows({{0, 1}, {1, 0}});
  CHECK(rho_pair(two, 0, 1).value == 2.0);
  CHECK(rho_pair(two, 0, 1).witness == 0);
  const DistanceMatrix sq = lp_distance_matrix(gen_lp_grid({2, 2, 1.0, MetricExponent{1.0}}));
  const Witnessed c = rho_pair(sq, 0, 3);  // (0,0) and (1,1)
  CHECK(c.value == 1.0);
  CHECK(c.witness == 1);
  CHECK_THROWS(rho_pair(two, 0, 0));
}

TEST_CASE("rho_family examples") {
  const DistanceMatrix d = oracle::equilateral(1.0);
  const Witnessed s = rho_family(d, {{{1, 0.3}}});
  CHECK(s.value == 0.0);
  CHECK(s.witness == 1);
  // Unit square corners plus center, l2.
  const PointCloud c(2, {0, 0, 1, 0, 0, 1, 1, 1, 0.5, 0.5}, MetricExponent{2.0});
  const DistanceMatrix sq = lp_distance_matrix(c);
  const double r = std::sqrt(2.0) / 2;
  const Witnessed w = rho_family(sq, {{{0, r}, {1, r}, {2, r}, {3, r}}});
  CHECK(w.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.witness == 4);
  CHECK_THROWS(rho_family(sq, {}));
  CHECK_THROWS(rho_family(sq, {{{0, 0.0}}}));
}

TEST_CASE("tripod defect examples") {
  const DistanceMatrix tree = gen_weighted_tree({20, 4});
  for (const auto& [i, j, k] : all_tuples<3>(20)) CHECK(tripod_defect(tree, i, j, k).value == 0.0);
  const DistanceMatrix grid = l1_grid(4);
  const Witnessed t = tripod_defect(grid, 0, 7, 13);  // (0,0), (1,3), (3,1)
  CHECK(t.value == 0.0);
  CHECK(t.witness == 5);  // (1,1)
}

TEST_CASE("quad inequality examples") {
  const DistanceMatrix sq = lp_distance_matrix(gen_lp_grid({2, 2, 1.0, MetricExponent{2.0}}));
  // grid order: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1)
  CHECK(quad_inequality_defect(sq, {0, 2, 1, 3}) == doctest::Approx(0.0).epsilon(1e-15));
  const DistanceMatrix c4 = gen_cycle({4, 4.0});
  CHECK(quad_inequality_defect(c4, {0, 1, 2, 3}) == -8.0);
  CHECK(quad_inequality_defect(c4, {0, 2, 1, 3}) == -8.0);
  // Both diagonals as the squared pairs: 4 + 4 - 1 - 1 - 2.
  CHECK(quad_inequality_defect(c4, {0, 1, 3, 2}) == 4.0);
  CHECK(quad_inequality_defect_max(c4, {0, 1, 2, 3}) == 4.0);
  CHECK_THROWS(quad_inequality_defect(c4, {0, 1, 1, 3}));
  const DistanceMatrix tree = gen_weighted_tree({12, 9});
  for (const auto& q : all_tuples<4>(12)) CHECK(quad_inequality_defect_max(tree, q) <= 0.0);
  const DistanceMatrix c6 = gen_cycle({6, 6.0});
  double worst = -1e300;
  for (const auto& q : all_tuples<4>(6)) worst = std::max(worst, quad_inequality_defect_max(c6, q));
  CHECK(worst > 0.0);
}

TEST_CASE("degenerate triples") {
  const DistanceMatrix path = gen_path({5, 1.0});
  const TripleReport r = evaluate_triple(path, 0, 2, 4);
  CHECK(r.verdict == Verdict::Degenerate);
  CHECK(r.rho == 1.0);
  CHECK(r.witness == 2);
  CHECK(r.rho_bar == 1.0);
  CHECK(r.tripod_defect == 0.0);
  CHECK(r.tripod_witness == 2);
  // Endpoint-middle-neighbour: radius at the middle point vanishes.
  CHECK(evaluate_triple(path, 0, 1, 3).verdict == Verdict::Degenerate);
}

TEST_CASE("tree scan: every triple rho 1, nonpositive or degenerate") {
  const DistanceMatrix d = gen_weighted_tree({30, 1});
  const TripleScan s = scan_triples(d, {});
  CHECK(s.summary.exhaustive);
  CHECK(s.summary.count == 4060);
  CHECK(s.summary.positive == 0);
  CHECK(s.summary.fraction_nonpositive == 1.0);
  CHECK(s.summary.nonpositive + s.summary.degenerate == 4060);
  for (const auto& t : s.triples) {
    CHECK(t.rho == 1.0);
    CHECK(t.tripod_defect == 0.0);
  }
}

TEST_CASE("6-cycle: nondegenerate triples are positive") {
  const DistanceMatrix d = gen_cycle({6, 6.0});
  const TripleScan s = scan_triples(d, {});
  CHECK(s.summary.nonpositive == 0);
  CHECK(s.summary.positive > 0);
  for (const auto& t : s.triples) {
    if (t.verdict != Verdict::Degenerate) CHECK(t.rho > t.rho_bar);
  }
}

TEST_CASE("sampled scans clamp, warn and are worker independent") {
  const DistanceMatrix d = lp_distance_matrix(gen_euclidean_sample({70, 2, 8, 1.0}));
  SamplingPlan plan;
  plan.sample_size = 300;
  plan.seed = 4;
  const TripleScan a = scan_triples(d, plan);
  CHECK_FALSE(a.summary.exhaustive);
  CHECK(a.summary.count == 300);
  plan.workers = 5;
  const TripleScan b = scan_triples(d, plan);
  REQUIRE(b.triples.size() == a.triples.size());
  for (std::size_t t = 0; t < a.triples.size(); ++t) {
    CHECK(a.triples[t].indices == b.triples[t].indices);
    CHECK(a.triples[t].rho == b.triples[t].rho);
    CHECK(a.triples[t].rho_bar == b.triples[t].rho_bar);
  }
  CHECK(a.summary.mean_excess == b.summary.mean_excess);

  plan.sample_size = 100000;
  const TripleScan c = scan_triples(d, plan);
  CHECK(c.summary.exhaustive);
  CHECK(c.summary.count == binomial(70, 3));
  CHECK(c.summary.warnings.size() == 1);
  CHECK_THROWS(scan_triples(oracle::from_rows({{0, 1}, {1, 0}}), {}));
}

TEST_CASE("l1 grid triples all have rho 1") {
  const TripleScan s = scan_triples(l1_grid(5), {});
  for (const auto& t : s.triples) CHECK(t.rho == 1.0);
}

TEST_CASE("random spaces: rho matches the oracle and tripod defect zero iff rho one") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + trial % 8;
    const DistanceMatrix d = trial % 2 ? oracle::random_graph_metric(n, gen) : oracle::random_plane_metric(n, gen);
    for (const auto& [i, j, k] : all_tuples<3>(n)) {
      const GromovRadii g = gromov_products(d, i, j, k);
      if (is_degenerate(d, g)) continue;
      const Witnessed r = rho_discrete(d, i, j, k);
      const auto [value, arg] = oracle::rho(d, i, j, k);
      REQUIRE(r.value == doctest::Approx(value).epsilon(1e-14));
      REQUIRE(r.value >= 1.0 - 4 * 2.2e-16);
      const Witnessed t = tripod_defect(d, i, j, k);
      REQUIRE(t.value == doctest::Approx(oracle::tripod(d, i, j, k)).epsilon(1e-14));
      if (trial % 2) {  // integer metrics: exact equivalence
        REQUIRE((t.value == 0.0) == (r.value == 1.0));
        if (t.value == 0.0) {
          // The median witnesses rho = 1 as well.
          const auto m = t.witness;
          REQUIRE(std::max({d(i, m) / g.r1, d(j, m) / g.r2, d(k, m) / g.r3}) == 1.0);
        }
      }
    }
  }
}

TEST_CASE("expansion estimate") {
  SUBCASE("tree: canonical triples give 1, pairs can force 2") {
    const DistanceMatrix d = gen_weighted_tree({15, 2});
    ExpansionOptions opt;
    opt.trials = 0;
    opt.include_pairs = false;
    CHECK(expansion_constant_estimate(d, opt).lower_bound == 1.0);
    opt.include_pairs = true;
    CHECK(expansion_constant_estimate(d, opt).lower_bound == 2.0);
  }
  SUBCASE("three isolated points give at least 2") {
    const ExpansionEstimate e = expansion_constant_estimate(oracle::equilateral(2.0));
    CHECK(e.lower_bound >= 2.0);
    CHECK(e.exhaustive_canonical);
  }
  SUBCASE("fine plane lattice gives at least 2/sqrt(3) - 0.05") {
    const DistanceMatrix d = lp_distance_matrix(gen_lp_grid({20, 2, 1.0 / 19, MetricExponent{2.0}}));
    ExpansionOptions opt;
    opt.include_pairs = false;
    opt.trials = 50;
    opt.sample_size = 3000;
    const ExpansionEstimate e = expansion_constant_estimate(d, opt);
    CHECK(e.lower_bound >= 2.0 / std::sqrt(3.0) - 0.05);
    CHECK_FALSE(e.exhaustive_canonical);
    CHECK(is_pairwise_feasible(d, e.worst_system));
  }
  SUBCASE("worker count does not change the estimate") {
    const DistanceMatrix d = gen_cycle({11, 3.0});
    ExpansionOptions opt;
    opt.seed = 8;
    const ExpansionEstimate a = expansion_constant_estimate(d, opt);
    opt.workers = 6;
    const ExpansionEstimate b = expansion_constant_estimate(d, opt);
    CHECK(a.lower_bound == b.lower_bound);
    CHECK(a.witness == b.witness);
    CHECK(a.systems_checked == b.systems_checked);
  }
}

TEST_CASE("random feasible systems satisfy the pair constraints") {
  std::mt19937_64 gen(31);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const DistanceMatrix d = oracle::random_graph_metric(9, gen);
    std::vector<std::size_t> centers{0, 3, 5, 8};
    const BallSystem s = random_feasible_system(d, centers, rng);
    CHECK(s.members.size() == 4);
    CHECK(is_pairwise_feasible(d, s));
    for (const auto& b : s.members) CHECK(b.radius > 0.0);
  }
  const DistanceMatrix d = oracle::equilateral(2.0);
  CHECK_FALSE(is_pairwise_feasible(d, {{{0, 0.5}, {1, 0.5}}}));
}
