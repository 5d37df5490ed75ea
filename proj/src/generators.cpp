#include "ballcurv/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "ballcurv/sampling.hpp"

namespace ballcurv {

namespace {

struct Edge {
  std::size_t to;
  double weight;
};

using Adjacency = std::vector<std::vector<Edge>>;

// Tree distances by one traversal per source; sums along the unique path
// are accumulated in root-to-leaf order so they are reproducible.
DistanceMatrix tree_metric(const Adjacency& adj, std::vector<std::string> labels = {}) {
  const std::size_t n = adj.size();
  std::vector<double> d(n * n, 0.0);
  std::vector<std::size_t> stack;
  std::vector<char> seen(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const Edge& e : adj[u]) {
        if (seen[e.to]) continue;
        seen[e.to] = 1;
        d[s * n + e.to] = d[s * n + u] + e.weight;
        stack.push_back(e.to);
      }
    }
  }
  // Path sums from the two ends can round differently for non-dyadic weights.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  }
  return DistanceMatrix::from_trusted(n, std::move(d), std::move(labels));
}

}  // namespace

DistanceMatrix gen_weighted_tree(const WeightedTreeSpec& spec) {
  if (spec.nodes < 1) throw std::invalid_argument("weighted tree needs at least one node");
  if (!(spec.weight_min > 0.0) || !(spec.weight_min <= spec.weight_max) ||
      !std::isfinite(spec.weight_max)) {
    throw std::invalid_argument("empty or nonpositive weight range");
  }
  constexpr double kDyadicUnit = 1.0 / 1024.0;
  std::int64_t kmin = 0, kmax = 0;
  if (spec.dyadic) {
    kmin = static_cast<std::int64_t>(std::ceil(spec.weight_min / kDyadicUnit));
    kmax = static_cast<std::int64_t>(std::floor(spec.weight_max / kDyadicUnit));
    if (kmin > kmax) throw std::invalid_argument("weight range contains no multiple of 2^-10");
  }

  const std::size_t n = spec.nodes;
  Rng rng(spec.seed);
  Adjacency adj(n);
  auto weight = [&] {
    if (spec.dyadic) return static_cast<double>(rng.between(kmin, kmax)) * kDyadicUnit;
    return rng.uniform(spec.weight_min, spec.weight_max);
  };
  auto connect = [&](std::size_t a, std::size_t b) {
    const double w = weight();
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  };

  if (n == 2) connect(0, 1);
  if (n > 2) {
    std::vector<std::size_t> code(n - 2);
    for (auto& c : code) c = static_cast<std::size_t>(rng.below(n));
    std::vector<std::size_t> degree(n, 1);
    for (auto c : code) ++degree[c];
    std::set<std::size_t> leaves;
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] == 1) leaves.insert(v);
    }
    for (auto c : code) {
      const std::size_t leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      connect(leaf, c);
      if (--degree[c] == 1) leaves.insert(c);
    }
    const std::size_t u = *leaves.begin();
    const std::size_t v = *std::next(leaves.begin());
    connect(u, v);
  }
  return tree_metric(adj);
}

DistanceMatrix gen_star(const StarSpec& spec) {
  if (!(spec.weight > 0.0)) throw std::invalid_argument("star weight must be positive");
  const std::size_t n = spec.leaves + 1;
  Adjacency adj(n);
  std::vector<std::string> labels{"center"};
  for (std::size_t v = 1; v < n; ++v) {
    adj[0].push_back({v, spec.weight});
    adj[v].push_back({0, spec.weight});
    labels.push_back("leaf" + std::to_string(v));
  }
  return tree_metric(adj, std::move(labels));
}

DistanceMatrix gen_path(const PathSpec& spec) {
  if (spec.nodes < 1) throw std::invalid_argument("path needs at least one node");
  if (!(spec.spacing > 0.0)) throw std::invalid_argument("path spacing must be positive");
  const std::size_t n = spec.nodes;
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = static_cast<double>(i > j ? i - j : j - i) * spec.spacing;
    }
  }
  return DistanceMatrix::from_trusted(n, std::move(d));
}

namespace {

double arc_distance(double a, double b, double circumference) {
  const double diff = std::abs(a - b);
  return std::min(diff, circumference - diff);
}

DistanceMatrix arc_metric(const std::vector<double>& positions, double circumference) {
  const std::size_t n = positions.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = arc_distance(positions[i], positions[j], circumference);
    }
  }
  return DistanceMatrix::from_trusted(n, std::move(d));
}

}  // namespace

DistanceMatrix gen_cycle(const CycleSpec& spec) {
  if (spec.nodes < 3) throw std::invalid_argument("cycle needs at least three nodes");
  if (!(spec.circumference > 0.0)) throw std::invalid_argument("circumference must be positive");
  const std::size_t n = spec.nodes;
  // Integer step counts keep symmetric pairs bitwise equal.
  const double step = spec.circumference / static_cast<double>(n);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d[i * n + j] = static_cast<double>(std::min(k, n - k)) * step;
    }
  }
  return DistanceMatrix::from_trusted(n, std::move(d));
}

PointCloud gen_lp_grid(const LpGridSpec& spec, std::size_t point_cap) {
  if (spec.side < 2) throw std::invalid_argument("grid side must be at least 2");
  if (spec.dim < 1 || spec.dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!(spec.spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  std::size_t count = 1;
  for (std::size_t a = 0; a < spec.dim; ++a) {
    if (count > point_cap / spec.side) {
      throw CapExceeded("grid of side " + std::to_string(spec.side) + " in dimension " +
                        std::to_string(spec.dim) + " exceeds point cap " +
                        std::to_string(point_cap));
    }
    count *= spec.side;
  }
  std::vector<double> coords;
  coords.reserve(count * spec.dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    // First coordinate varies slowest.
    std::size_t rest = idx;
    std::vector<double> p(spec.dim);
    for (std::size_t a = spec.dim; a-- > 0;) {
      p[a] = static_cast<double>(rest % spec.side) * spec.spacing;
      rest /= spec.side;
    }
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(spec.dim, std::move(coords), spec.exponent);
}

PointCloud gen_euclidean_sample(const EuclideanSampleSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("sample needs at least one point");
  if (spec.dim < 1) throw std::invalid_argument("sample dimension must be positive");
  if (!(spec.box > 0.0)) throw std::invalid_argument("sample box must be positive");
  Rng rng(spec.seed);
  std::vector<double> coords(spec.count * spec.dim);
  for (auto& c : coords) c = spec.box * rng.unit();
  return PointCloud(spec.dim, std::move(coords), MetricExponent{2.0});
}

DistanceMatrix gen_circle_geodesic(const CircleGeodesicSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("circle sample needs at least one point");
  if (!(spec.circumference > 0.0)) throw std::invalid_argument("circumference must be positive");
  Rng rng(spec.seed);
  std::vector<double> positions(spec.count);
  for (auto& p : positions) p = spec.circumference * rng.unit();
  return arc_metric(positions, spec.circumference);
}

DistanceMatrix generate(const GeneratorSpec& spec, std::size_t point_cap) {
  const std::size_t expected = std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WeightedTreeSpec> || std::is_same_v<T, PathSpec> ||
                      std::is_same_v<T, CycleSpec>) {
          return s.nodes;
        } else if constexpr (std::is_same_v<T, StarSpec>) {
          return s.leaves + 1;
        } else if constexpr (std::is_same_v<T, LpGridSpec>) {
          return 0;  // checked by gen_lp_grid without overflow
        } else {
          return s.count;
        }
      },
      spec);
  if (expected > point_cap) {
    throw CapExceeded("generated space would have " + std::to_string(expected) +
                      " points, over the cap of " + std::to_string(point_cap));
  }
  DistanceMatrix d = std::visit(
      [&](const auto& s) -> DistanceMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WeightedTreeSpec>) return gen_weighted_tree(s);
        else if constexpr (std::is_same_v<T, StarSpec>) return gen_star(s);
        else if constexpr (std::is_same_v<T, PathSpec>) return gen_path(s);
        else if constexpr (std::is_same_v<T, CycleSpec>) return gen_cycle(s);
        else if constexpr (std::is_same_v<T, LpGridSpec>) {
          return lp_distance_matrix(gen_lp_grid(s, point_cap));
        } else if constexpr (std::is_same_v<T, EuclideanSampleSpec>) {
          return lp_distance_matrix(gen_euclidean_sample(s));
        } else {
          return gen_circle_geodesic(s);
        }
      },
      spec);
  if (d.size() > point_cap) {
    throw CapExceeded("generated space has " + std::to_string(d.size()) +
                      " points, over the cap of " + std::to_string(point_cap));
  }
  return d;
}

std::string generator_kind(const GeneratorSpec& spec) {
  static const char* const kNames[] = {"weighted-tree", "star",  "path",
                                       "cycle",         "lp-grid", "euclidean-sample",
                                       "circle-geodesic"};
  return kNames[spec.index()];
}

}  // namespace ballcurv
