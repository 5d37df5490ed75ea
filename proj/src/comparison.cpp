#include "ballcurv/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace ballcurv {

double GromovRadii::min() const { return std::min({r1, r2, r3}); }

GromovRadii gromov_radii(double d12, double d13, double d23) {
  auto half = [](double plus_a, double plus_b, double minus) {
    return std::max(0.0, 0.5 * ((plus_a + plus_b) - minus));
  };
  return {half(d12, d13, d23), half(d12, d23, d13), half(d13, d23, d12)};
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

constexpr double kColinearRel = 1e-12;
constexpr double kFeasibleRel = 1e-9;
constexpr double kRootLow = 1.0 - 1e-12;
constexpr double kRootHigh = 4.0 / 3.0 + 1e-9;
constexpr double kActiveRel = 1e-9;

// Canonical placement without validation.
std::array<Point2, 3> place(double a12, double a13, double a23, bool colinear) {
  std::array<Point2, 3> p{};
  p[1] = {a12, 0.0};
  if (a12 == 0.0) {
    p[2] = {a13, 0.0};
    return p;
  }
  double x = (a12 * a12 + a13 * a13 - a23 * a23) / (2.0 * a12);
  x = std::clamp(x, -a13, a13);
  const double y = colinear ? 0.0 : std::sqrt(std::max(0.0, (a13 - x) * (a13 + x)));
  p[2] = {x, y};
  return p;
}

bool is_colinear(double a12, double a13, double a23) {
  const GromovRadii r = gromov_radii(a12, a13, a23);
  return r.min() <= kColinearRel * std::max({a12, a13, a23});
}

struct Solution {
  double rho = 1.0;
  Point2 center;
};

// Minimax on the canonical triangle q with radii s (all positive).
Solution solve(const std::array<Point2, 3>& q, const std::array<double, 3>& s) {
  static constexpr std::array<std::array<std::size_t, 3>, 3> kPairs{
      {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& [i, j, k] : kPairs) {
    const double w = s[i] / (s[i] + s[j]);
    const Point2 x{q[i].x + w * (q[j].x - q[i].x), q[i].y + w * (q[j].y - q[i].y)};
    if (distance(x, q[k]) <= s[k] * (1.0 + kFeasibleRel)) return {1.0, x};
  }

  // All three ratios equal: |x - q_i|^2 = t s_i^2. With q0 at the origin and
  // q1 on the x axis, subtracting the i = 0 equation gives x = P + t Q.
  const double a = q[1].x;
  const double s0 = s[0] * s[0], s1 = s[1] * s[1], s2 = s[2] * s[2];
  const double px = 0.5 * a;
  const double qx = -(s1 - s0) / (2.0 * a);
  const double norm3 = q[2].x * q[2].x + q[2].y * q[2].y;
  const double py = (0.5 * norm3 - px * q[2].x) / q[2].y;
  const double qy = (-0.5 * (s2 - s0) - qx * q[2].x) / q[2].y;

  const double qa = qx * qx + qy * qy;
  const double qb = 2.0 * (px * qx + py * qy) - s0;
  const double qc = px * px + py * py;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) {
    if (disc < -1e-12 * (qb * qb + 4.0 * qa * qc)) {
      throw std::logic_error("rho_bar: no three-active candidate");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  const double half = -0.5 * (qb + std::copysign(root, qb));
  double best = std::numeric_limits<double>::infinity();
  for (double t : {half != 0.0 ? qc / half : std::numeric_limits<double>::quiet_NaN(),
                   qa != 0.0 ? half / qa : std::numeric_limits<double>::quiet_NaN()}) {
    if (!(t >= kRootLow && t <= kRootHigh)) continue;
    best = std::min(best, std::max(t, 1.0));
  }
  if (!std::isfinite(best)) {
    throw std::logic_error("rho_bar: no feasible candidate");
  }
  return {std::sqrt(best), {px + best * qx, py + best * qy}};
}

}  // namespace

ComparisonTriangle build_comparison(double d12, double d13, double d23, double rel_tolerance) {
  for (double v : {d12, d13, d23}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("comparison sides must be finite and nonnegative");
    }
  }
  const double tol = rel_tolerance * std::max({d12, d13, d23});
  if (d12 > d13 + d23 + tol || d13 > d12 + d23 + tol || d23 > d12 + d13 + tol) {
    throw std::invalid_argument("comparison sides violate the triangle inequality");
  }
  ComparisonTriangle tri;
  tri.a12 = d12;
  tri.a13 = d13;
  tri.a23 = d23;
  tri.p = place(d12, d13, d23, is_colinear(d12, d13, d23));
  return tri;
}

MinimaxResult rho_bar(const ComparisonTriangle& tri, const GromovRadii& radii) {
  const std::array<double, 3> r = radii.values();
  const double side[3][3] = {{0.0, tri.a12, tri.a13},
                             {tri.a12, 0.0, tri.a23},
                             {tri.a13, tri.a23, 0.0}};
  const double longest = std::max({tri.a12, tri.a13, tri.a23});

  MinimaxResult result;
  const auto kmin = static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
  if (r[kmin] <= kColinearRel * longest) {
    result.rho_bar = 1.0;
    result.center = tri.p[kmin];
    for (std::size_t i = 0; i < 3; ++i) {
      if (i != kmin) result.active_set.push_back(i);
    }
    return result;
  }

  auto key = [&](std::size_t i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    return std::make_tuple(r[i], std::min(side[i][j], side[i][k]),
                           std::max(side[i][j], side[i][k]));
  };
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  const auto q = place(side[order[0]][order[1]], side[order[0]][order[2]],
                       side[order[1]][order[2]], false);
  const Solution sol = solve(q, {r[order[0]], r[order[1]], r[order[2]]});

  // Express the canonical center in affine coordinates of the canonical
  // vertices and replay them on the caller's placement.
  const double beta = sol.center.y / q[2].y;
  const double alpha = (sol.center.x - beta * q[2].x) / q[1].x;
  const Point2 o = tri.p[order[0]], u = tri.p[order[1]], v = tri.p[order[2]];
  result.rho_bar = sol.rho;
  result.center = {o.x + alpha * (u.x - o.x) + beta * (v.x - o.x),
                   o.y + alpha * (u.y - o.y) + beta * (v.y - o.y)};
  for (std::size_t i = 0; i < 3; ++i) {
    if (distance(result.center, tri.p[i]) / r[i] >= result.rho_bar * (1.0 - kActiveRel)) {
      result.active_set.push_back(i);
    }
  }
  return result;
}

double rho_bar_bruteforce(const ComparisonTriangle& tri, const GromovRadii& radii,
                          double grid_step, int refine_levels, double refine_factor) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(refine_factor > 1.0)) throw std::invalid_argument("refine factor must exceed 1");
  const std::array<double, 3> r = radii.values();
  std::array<double, 3> inv{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(r[i] > 0.0)) throw std::invalid_argument("brute force needs positive radii");
    inv[i] = 1.0 / (r[i] * r[i]);
  }
  const auto& p = tri.p;
  auto objective = [&](double x, double y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double dx = x - p[i].x, dy = y - p[i].y;
      worst = std::max(worst, (dx * dx + dy * dy) * inv[i]);
    }
    return worst;
  };

  double best = std::numeric_limits<double>::infinity();
  double bx = 0.0, by = 0.0;
  auto scan = [&](double x0, double y0, long nx, long ny, double step) {
    for (long a = 0; a <= nx; ++a) {
      const double x = x0 + static_cast<double>(a) * step;
      for (long b = 0; b <= ny; ++b) {
        const double y = y0 + static_cast<double>(b) * step;
        const double v = objective(x, y);
        if (v < best) {
          best = v;
          bx = x;
          by = y;
        }
      }
    }
  };

  const double xmin = std::min({p[0].x, p[1].x, p[2].x}) - grid_step;
  const double xmax = std::max({p[0].x, p[1].x, p[2].x}) + grid_step;
  const double ymin = std::min({p[0].y, p[1].y, p[2].y}) - grid_step;
  const double ymax = std::max({p[0].y, p[1].y, p[2].y}) + grid_step;
  scan(xmin, ymin, static_cast<long>(std::ceil((xmax - xmin) / grid_step)),
       static_cast<long>(std::ceil((ymax - ymin) / grid_step)), grid_step);

  double step = grid_step;
  for (int level = 0; level < refine_levels; ++level) {
    const double window = 3.0 * step;
    step /= refine_factor;
    const long half = static_cast<long>(std::ceil(window / step));
    for (int moves = 0; moves < 64; ++moves) {
      const double cx = bx, cy = by;
      scan(cx - static_cast<double>(half) * step, cy - static_cast<double>(half) * step,
           2 * half, 2 * half, step);
      const bool on_edge = std::abs(bx - cx) >= (static_cast<double>(half) - 0.5) * step ||
                           std::abs(by - cy) >= (static_cast<double>(half) - 0.5) * step;
      if (!on_edge) break;
    }
  }
  return std::sqrt(best);
}

}  // namespace ballcurv
