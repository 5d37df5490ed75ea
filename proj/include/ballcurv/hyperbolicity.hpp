#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ballcurv/metric.hpp"
#include "ballcurv/sampling.hpp"

namespace ballcurv {

inline constexpr std::size_t kQuadrupleExhaustiveThreshold = 80;

struct QuadrupleDefect {
  std::array<std::size_t, 4> indices{};
  double defect = 0.0;
};

struct DeltaReport {
  double delta = 0.0;
  std::array<std::size_t, 4> witness_quadruple{};
  std::uint64_t quadruples_checked = 0;
  bool exhaustive = true;
  /// Largest defects, descending, ties in lexicographic index order.
  std::vector<QuadrupleDefect> top;
};

/// Largest minus second-largest of the three pair sums
/// d(a,b)+d(c,e), d(a,c)+d(b,e), d(a,e)+d(b,c).
double four_point_defect(const DistanceMatrix& d, const std::array<std::size_t, 4>& q);

/// Four-point hyperbolicity: max defect over quadruples, exhaustive up to
/// plan.exhaustive_threshold points (use kQuadrupleExhaustiveThreshold for
/// the usual cut-off), else over plan.sample_size sampled quadruples.
/// Keeps the `top_k` largest defects. Ties keep the smallest quadruple.
DeltaReport four_point_delta(const DistanceMatrix& d, const SamplingPlan& plan,
                             std::size_t top_k = 10);

/// four_point_delta(...).delta divided by the diameter.
double delta_normalized(const DistanceMatrix& d, const SamplingPlan& plan);

}  // namespace ballcurv
