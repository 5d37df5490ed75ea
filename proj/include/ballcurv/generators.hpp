#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "ballcurv/metric.hpp"

namespace ballcurv {

/// Uniformly random labeled tree (Pruefer sequence) with random edge weights.
/// When `dyadic` is set, weights are multiples of 2^-10 so that all path
/// sums are exact in double precision.
struct WeightedTreeSpec {
  std::size_t nodes = 10;
  std::uint64_t seed = 0;
  double weight_min = 0.5;
  double weight_max = 2.0;
  bool dyadic = true;
};

/// Star: center (index 0) plus `leaves` leaves at distance `weight`.
struct StarSpec {
  std::size_t leaves = 3;
  double weight = 1.0;
};

struct PathSpec {
  std::size_t nodes = 5;
  double spacing = 1.0;
};

/// Equally spaced points on a circle with the arc-length metric.
struct CycleSpec {
  std::size_t nodes = 6;
  double circumference = 6.0;
};

/// Integer lattice {0..side-1}^dim scaled by `spacing`.
struct LpGridSpec {
  std::size_t side = 5;
  std::size_t dim = 2;
  double spacing = 1.0;
  MetricExponent exponent{1.0};
};

/// i.i.d. uniform points in [0, box]^dim, Euclidean metric.
struct EuclideanSampleSpec {
  std::size_t count = 20;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  double box = 1.0;
};

/// i.i.d. uniform points on a circle, arc-length metric.
struct CircleGeodesicSpec {
  std::size_t count = 12;
  double circumference = 1.0;
  std::uint64_t seed = 0;
};

using GeneratorSpec = std::variant<WeightedTreeSpec, StarSpec, PathSpec, CycleSpec, LpGridSpec,
                                   EuclideanSampleSpec, CircleGeodesicSpec>;

DistanceMatrix gen_weighted_tree(const WeightedTreeSpec& spec);
DistanceMatrix gen_star(const StarSpec& spec);
DistanceMatrix gen_path(const PathSpec& spec);
DistanceMatrix gen_cycle(const CycleSpec& spec);
PointCloud gen_lp_grid(const LpGridSpec& spec, std::size_t point_cap = kDefaultPointCap);
PointCloud gen_euclidean_sample(const EuclideanSampleSpec& spec);
DistanceMatrix gen_circle_geodesic(const CircleGeodesicSpec& spec);

/// Dispatches on the spec kind; point clouds are converted to their matrices.
DistanceMatrix generate(const GeneratorSpec& spec, std::size_t point_cap = kDefaultPointCap);

/// Kebab-case kind name, e.g. "weighted-tree".
std::string generator_kind(const GeneratorSpec& spec);

}  // namespace ballcurv
