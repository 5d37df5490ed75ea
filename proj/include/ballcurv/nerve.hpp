#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ballcurv/metric.hpp"

namespace ballcurv {

inline constexpr std::size_t kDefaultDimCap = 3;
inline constexpr std::size_t kDefaultSimplexCap = 20000;

/// Simplex as sorted vertex indices (vertices of the complex, not points).
using Simplex = std::vector<std::size_t>;

/// Nerve of a family of closed balls whose intersections are witnessed by
/// points of the space itself.
///
/// Vertex v is the ball B(centers[v], radii[v]). simplices[q] holds the
/// q-simplices in lexicographic order and witnesses[q] the smallest point
/// index lying in all of their balls.
struct NerveComplex {
  std::vector<std::size_t> centers;
  std::vector<double> radii;
  std::size_t dim_cap = kDefaultDimCap;
  std::vector<std::vector<Simplex>> simplices;
  std::vector<std::vector<std::size_t>> witnesses;

  std::size_t vertex_count() const { return centers.size(); }
  std::size_t count(std::size_t q) const { return q < simplices.size() ? simplices[q].size() : 0; }
  bool contains(const Simplex& s) const;
  /// Alternating sum of simplex counts.
  long euler_characteristic() const;
};

struct NerveOptions {
  std::size_t dim_cap = kDefaultDimCap;
  double rel_tolerance = kDefaultRelTolerance;
  /// Throws CapExceeded once the total simplex count would pass this.
  std::size_t simplex_cap = kDefaultSimplexCap;
};

/// Nerve with one ball per listed center. Membership is
/// d(center, x) <= radius + rel_tolerance * diameter.
NerveComplex build_nerve(const DistanceMatrix& d, const std::vector<std::size_t>& centers,
                         const std::vector<double>& radii, const NerveOptions& options = {});

/// Nerve with one ball around every point.
NerveComplex build_nerve(const DistanceMatrix& d, const std::vector<double>& radii,
                         const NerveOptions& options = {});

/// Three-ball nerve of a nondegenerate triple with Gromov radii times `scale`.
NerveComplex gromov_radii_nerve(const DistanceMatrix& d, const std::array<std::size_t, 3>& triple,
                                double scale = 1.0);

/// Vertex set whose facets are all in the complex while it is not.
struct HellyDefect {
  Simplex vertices;
  std::size_t size() const { return vertices.size(); }
};

/// All Helly defects with 3 <= |J| <= k_max, ordered by size then
/// lexicographically. k_max may not exceed dim_cap + 1.
std::vector<HellyDefect> helly_defects(const NerveComplex& nerve, std::size_t k_max);

/// Mod-2 Betti numbers b_0..b_max_dim by column reduction of the boundary
/// matrices. max_dim <= dim_cap; the top value is that of the stored
/// dim_cap-skeleton.
std::vector<std::size_t> betti_mod2(const NerveComplex& nerve, std::size_t max_dim);

/// Rank over GF(2) of the boundary map from q-simplices to (q-1)-simplices.
std::size_t boundary_rank_mod2(const NerveComplex& nerve, std::size_t q);

}  // namespace ballcurv
