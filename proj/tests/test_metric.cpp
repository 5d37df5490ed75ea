#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "ballcurv/csv.hpp"
#include "ballcurv/generators.hpp"
#include "ballcurv/metric.hpp"
#include "oracles.hpp"

using namespace ballcurv;

namespace {

std::size_t count_kind(const ValidationResult& v, ViolationKind kind) {
  std::size_t c = 0;
  for (const auto& x : v.violations) c += x.kind == kind;
  return c;
}


}  // namespace

TEST_CASE("3-4-5 triangle validates") {
  const auto v = validate_metric({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}});
  REQUIRE(v.ok());
  CHECK(v.violations.empty());
  CHECK((*v.metric)(1, 2) == 5.0);
  CHECK(v.metric->diameter() == 5.0);
}

TEST_CASE("triangle violation reports the triple and its defect") {
  const auto v = validate_metric({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  REQUIRE_FALSE(v.ok());
  REQUIRE(v.violations.size() == 1);
  const Violation& x = v.violations[0];
  CHECK(x.kind == ViolationKind::Triangle);
  CHECK(x.i == 0);
  CHECK(x.j == 1);
  CHECK(x.k == 2);
  CHECK(x.defect == 3.0);
}

TEST_CASE("non-finite, negative, diagonal and asymmetric entries are violations") {
  const double nan = std::nan("");
  CHECK(count_kind(validate_metric({{0, nan}, {nan, 0}}), ViolationKind::NonFinite) == 2);
  CHECK(count_kind(validate_metric({{0, -1}, {-1, 0}}), ViolationKind::Negative) == 1);
  CHECK(count_kind(validate_metric({{1, 1}, {1, 0}}), ViolationKind::Diagonal) == 1);
  CHECK(count_kind(validate_metric({{0, 1}, {2, 0}}), ViolationKind::Asymmetric) == 1);
}

TEST_CASE("round-off within tolerance is accepted and clamped") {
  const double e = 1e-12;
  const auto v = validate_metric({{0, 1 + e, 1}, {1, 0, 2 + e}, {1, 2, e}});
  REQUIRE(v.ok());
  CHECK((*v.metric)(0, 1) == doctest::Approx(1.0));
  CHECK((*v.metric)(2, 2) == 0.0);
  CHECK((*v.metric)(0, 1) == (*v.metric)(1, 0));
}

TEST_CASE("non-square table and cap overflow throw") {
  CHECK_THROWS_AS(validate_metric({{0, 1}, {1}}), std::invalid_argument);
  ValidationOptions opt;
  opt.point_cap = 2;
  CHECK_THROWS_AS(validate_metric({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, opt), CapExceeded);
}

TEST_CASE("duplicates are rejected unless merged into a quotient") {
  const std::vector<std::vector<double>> t = {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}};
  const auto strict = validate_metric(t);
  CHECK_FALSE(strict.ok());
  CHECK(count_kind(strict, ViolationKind::Coincident) == 1);

  ValidationOptions opt;
  opt.allow_pseudometric = true;
  const auto merged = validate_metric(t, opt, {"a", "b", "c"});
  REQUIRE(merged.ok());
  CHECK(merged.metric->size() == 2);
  CHECK(merged.quotient == std::vector<std::size_t>{0, 0, 1});
  CHECK(merged.metric->labels() == std::vector<std::string>{"a", "c"});
  CHECK((*merged.metric)(0, 1) == 1.0);
}

TEST_CASE("1000-point random tree validates") {
  WeightedTreeSpec spec;
  spec.nodes = 1000;
  spec.seed = 3;
  const DistanceMatrix d = gen_weighted_tree(spec);
  std::vector<std::vector<double>> t(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t[i].assign(d.row(i).begin(), d.row(i).end());
  ValidationOptions opt;
  opt.rel_tolerance = 0.0;
  CHECK(validate_metric(t, opt).ok());
}

TEST_CASE("lp distances") {
  const PointCloud l1(2, {0, 0, 1, 1}, MetricExponent{1.0});
  CHECK(lp_distance_matrix(l1)(0, 1) == 2.0);
  const PointCloud linf(2, {0, 0, 1, 1}, MetricExponent::infinity());
  CHECK(lp_distance_matrix(linf)(0, 1) == 1.0);
  const PointCloud l3(2, {0, 0, 1, 1}, MetricExponent{3.0});
  CHECK(lp_distance_matrix(l3)(0, 1) == doctest::Approx(std::cbrt(2.0)));

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<double> c(6);
  for (auto& x : c) x = u(gen);
  const DistanceMatrix d = lp_distance_matrix(PointCloud(2, c, MetricExponent{2.0}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(d(i, j) == doctest::Approx(std::hypot(c[2 * i] - c[2 * j], c[2 * i + 1] - c[2 * j + 1]))
                           .epsilon(1e-15));
}

TEST_CASE("lp matrices are metrics at zero tolerance up to round-off") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (MetricExponent e : {MetricExponent{1.0}, MetricExponent{2.0}, MetricExponent{3.5},
                           MetricExponent::infinity()}) {
    std::vector<double> c(3 * 25);
    for (auto& x : c) x = u(gen);
    const DistanceMatrix d = lp_distance_matrix(PointCloud(3, c, e), 4);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        CHECK(d(i, j) == d(j, i));
        for (std::size_t k = 0; k < d.size(); ++k)
          CHECK(d(i, j) <= (d(i, k) + d(k, j)) * (1 + 8 * std::numeric_limits<double>::epsilon()));
      }
  }
}

TEST_CASE("worker count does not change lp matrices") {
  std::vector<double> c(2 * 40);
  std::mt19937_64 gen(9);
  for (auto& x : c) x = std::uniform_real_distribution<double>(0, 1)(gen);
  const PointCloud cloud(2, c, MetricExponent{2.0});
  CHECK(lp_distance_matrix(cloud, 1) == lp_distance_matrix(cloud, 7));
}

TEST_CASE("invalid exponents and clouds") {
  CHECK_THROWS(parse_exponent("0.5"));
  CHECK_THROWS(parse_exponent("abc"));
  CHECK(parse_exponent("inf").is_infinite());
  CHECK(parse_exponent("1.5").p == 1.5);
  CHECK_THROWS(PointCloud(2, {0, 0, 1}, MetricExponent{2.0}));
  CHECK_THROWS(PointCloud(1, {0, std::nan("")}, MetricExponent{2.0}));
}

TEST_CASE("kuratowski embedding is an isometry") {
  auto check_iso = [](const DistanceMatrix& d, std::size_t base) {
    const DistanceMatrix e = lp_distance_matrix(kuratowski_embed(d, base));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) CHECK(oracle::within_ulps(e(i, j), d(i, j), 4));
  };
  check_iso(oracle::from_rows({{0, 2.5}, {2.5, 0}}), 0);
  check_iso(oracle::from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}), 0);
  check_iso(gen_path({4, 1.0}), 2);
  std::mt19937_64 gen(1);
  check_iso(oracle::random_plane_metric(15, gen), 7);
  CHECK_THROWS_AS(kuratowski_embed(gen_path({4, 1.0}), 4), std::out_of_range);
}

TEST_CASE("l1 and linf products") {
  const DistanceMatrix two = oracle::from_rows({{0, 1}, {1, 0}});
  const DistanceMatrix sq1 = product_l1(two, two);
  REQUIRE(sq1.size() == 4);
  CHECK(sq1(0, 1) == 1.0);
  CHECK(sq1(0, 2) == 1.0);
  CHECK(sq1(0, 3) == 2.0);
  CHECK(sq1(1, 2) == 2.0);
  CHECK(sq1.label(3) == "1:1");
  const DistanceMatrix sqinf = product_linf(two, two);
  CHECK(sqinf(0, 3) == 1.0);
  CHECK(sqinf(1, 2) == 1.0);

  const DistanceMatrix p3 = gen_path({3, 1.0});
  const DistanceMatrix g1 = product_l1(p3, p3);
  const DistanceMatrix ginf = product_linf(p3, p3);
  const DistanceMatrix grid1 = lp_distance_matrix(gen_lp_grid({3, 2, 1.0, MetricExponent{1.0}}));
  const DistanceMatrix gridinf =
      lp_distance_matrix(gen_lp_grid({3, 2, 1.0, MetricExponent::infinity()}));
  CHECK(g1.entries().size() == grid1.entries().size());
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(g1(i, j) == grid1(i, j));
      CHECK(ginf(i, j) == gridinf(i, j));
    }
  CHECK(ginf.diameter() == std::max(p3.diameter(), p3.diameter()));
  const DistanceMatrix mixed = product_linf(p3, two);
  CHECK(mixed.diameter() == 2.0);
}

TEST_CASE("products validate and their projections are 1-Lipschitz") {
  std::mt19937_64 gen(4);
  const DistanceMatrix a = oracle::random_graph_metric(5, gen);
  const DistanceMatrix b = oracle::random_plane_metric(4, gen);
  for (const DistanceMatrix& p : {product_l1(a, b), product_linf(a, b)}) {
    std::vector<std::vector<double>> t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) t[i].assign(p.row(i).begin(), p.row(i).end());
    CHECK(validate_metric(t).ok());
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = 0; y < p.size(); ++y) {
        CHECK(a(x / 4, y / 4) <= p(x, y));
        CHECK(b(x % 4, y % 4) <= p(x, y));
      }
  }
}

TEST_CASE("product over the cap throws") {
  const DistanceMatrix p = gen_path({50, 1.0});
  CHECK_THROWS_AS(product_l1(p, p, 2048), CapExceeded);
  CHECK_NOTHROW(product_l1(p, gen_path({40, 1.0}), 2048));
}

TEST_CASE("restricted and scaled copies") {
  const DistanceMatrix d = oracle::from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}, {"a", "b", "c"});
  const std::vector<std::size_t> idx{2, 0};
  const DistanceMatrix r = d.restricted(idx);
  CHECK(r.size() == 2);
  CHECK(r(0, 1) == 4.0);
  CHECK(r.label(0) == "c");
  CHECK(d.scaled(2.0)(1, 2) == 10.0);
  CHECK_THROWS(d.scaled(0.0));
}

TEST_CASE("csv ingestion") {
  std::istringstream with_header("a,b,c\n0,3,4\n3,0,5\n\n4,5,0\n");
  const RawTable t = read_csv_table(with_header);
  CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[2][1] == 5.0);

  std::istringstream ragged("0,1\n1\n");
  CHECK_THROWS_AS(read_csv_table(ragged), InputError);
  std::istringstream junk("0,1\n1,x\n");
  CHECK_THROWS_AS(read_csv_table(junk), InputError);
  std::istringstream empty("a,b\n");
  CHECK_THROWS_AS(read_csv_table(empty), InputError);
  CHECK_THROWS_AS(read_matrix_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("matrix csv round trip is exact") {
  std::mt19937_64 gen(2);
  const DistanceMatrix d = oracle::random_plane_metric(7, gen);
  const std::string path = "roundtrip_matrix.csv";
  {
    std::ofstream out(path);
    write_matrix_csv(out, d);
  }
  const RawTable t = read_matrix_csv(path);
  REQUIRE(t.rows.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(t.rows[i][j] == d(i, j));
  CHECK(format_double(0.1) == "0.1");
}
