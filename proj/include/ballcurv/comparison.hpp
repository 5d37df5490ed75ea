#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace ballcurv {

/// Gromov radii of a triple: the unique (r1, r2, r3) with r_i + r_j = d(x_i, x_j).
struct GromovRadii {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;

  std::array<double, 3> values() const { return {r1, r2, r3}; }
  double min() const;
};

/// Radii from the three side lengths. Values that come out negative because
/// the sides only satisfy the triangle inequality within tolerance are
/// clamped to zero.
GromovRadii gromov_radii(double d12, double d13, double d23);

struct Point2 {
  double x = 0.0, y = 0.0;
};

double distance(Point2 a, Point2 b);

/// Planar triangle with prescribed side lengths in canonical placement:
/// p1 at the origin, p2 on the nonnegative x axis, p3 in the closed upper
/// half plane.
struct ComparisonTriangle {
  std::array<Point2, 3> p;
  double a12 = 0.0, a13 = 0.0, a23 = 0.0;
};

/// Throws std::invalid_argument when the sides violate the triangle
/// inequality by more than rel_tolerance times the longest side.
ComparisonTriangle build_comparison(double d12, double d13, double d23,
                                    double rel_tolerance = 1e-9);

struct MinimaxResult {
  double rho_bar = 1.0;
  Point2 center;
  /// Vertex indices (0-based) whose ratio equals rho_bar at the center.
  std::vector<std::size_t> active_set;
};

/// Exact planar minimax  min_x max_i |x - p_i| / r_i  for a comparison
/// triangle and its Gromov radii.
///
/// Candidates are the three weighted pair points (value exactly 1) and the
/// points where all three ratios agree, found as roots of a quadratic in
/// t = rho^2. The smallest feasible candidate is the global minimum. A
/// triangle with a vanishing radius r_k is colinear; the result is 1 at p_k.
///
/// The computation runs on a canonical relabeling of the vertices, so the
/// value is bitwise invariant under permutations of the input.
MinimaxResult rho_bar(const ComparisonTriangle& tri, const GromovRadii& radii);

/// Grid search for the same minimum, used as an independent check.
///
/// Scans the triangle's bounding box at `grid_step`, then refines
/// `refine_levels` times: each level searches a window of three previous steps
/// around the incumbent at step / refine_factor, re-centering while the
/// incumbent sits on the window edge. The result never undercuts rho_bar.
double rho_bar_bruteforce(const ComparisonTriangle& tri, const GromovRadii& radii,
                          double grid_step, int refine_levels = 1, double refine_factor = 100.0);

}  // namespace ballcurv
