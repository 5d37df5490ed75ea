#include "ballcurv/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ballcurv {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Nonpositive: return "nonpositive";
    case Verdict::Positive: return "positive";
    case Verdict::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

void require_distinct(const DistanceMatrix& d, std::initializer_list<std::size_t> idx) {
  for (auto a = idx.begin(); a != idx.end(); ++a) {
    if (*a >= d.size()) throw std::out_of_range("point index out of range");
    for (auto b = std::next(a); b != idx.end(); ++b) {
      if (*a == *b) throw std::invalid_argument("indices must be distinct");
    }
  }
}

// min_x max_m d(c_m, x) / r_m over all points, smallest index on ties.
template <std::size_t N>
Witnessed minimax_ratio(const DistanceMatrix& d, const std::array<std::size_t, N>& centers,
                        const std::array<double, N>& radii) {
  Witnessed best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t x = 0; x < d.size(); ++x) {
    double worst = 0.0;
    for (std::size_t m = 0; m < N; ++m) worst = std::max(worst, d(centers[m], x) / radii[m]);
    if (worst < best.value) best = {worst, x};
  }
  return best;
}

}  // namespace

GromovRadii gromov_products(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
  require_distinct(d, {i, j, k});
  return gromov_radii(d(i, j), d(i, k), d(j, k));
}

bool is_degenerate(const DistanceMatrix& d, const GromovRadii& radii, double degenerate_rel) {
  return radii.min() <= degenerate_rel * d.diameter();
}

Witnessed rho_discrete(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                       double degenerate_rel) {
  const GromovRadii g = gromov_products(d, i, j, k);
  const std::array<std::size_t, 3> c{i, j, k};
  const std::array<double, 3> r = g.values();
  if (!is_degenerate(d, g, degenerate_rel)) return minimax_ratio(d, c, r);

  const double tau = degenerate_rel * d.diameter();
  Witnessed best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t x = 0; x < d.size(); ++x) {
    double worst = 0.0;
    bool admissible = true;
    for (std::size_t m = 0; m < 3; ++m) {
      if (r[m] <= tau) {
        admissible = admissible && d(c[m], x) <= tau;
      } else {
        worst = std::max(worst, d(c[m], x) / r[m]);
      }
    }
    if (admissible && worst < best.value) best = {worst, x};
  }
  return best;
}

Witnessed rho_pair(const DistanceMatrix& d, std::size_t i, std::size_t j) {
  require_distinct(d, {i, j});
  const double dij = d(i, j);
  if (!(dij > 0.0)) throw std::invalid_argument("rho_pair: coincident points");
  Witnessed best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double v = 2.0 * std::max(d(i, x), d(j, x)) / dij;
    if (v < best.value) best = {v, x};
  }
  return best;
}

Witnessed rho_family(const DistanceMatrix& d, const BallSystem& system) {
  if (system.members.empty()) throw std::invalid_argument("rho_family: empty ball system");
  for (const auto& b : system.members) {
    if (b.center >= d.size()) throw std::out_of_range("rho_family: center out of range");
    if (!(b.radius > 0.0)) throw std::invalid_argument("rho_family: radii must be positive");
  }
  Witnessed best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t x = 0; x < d.size(); ++x) {
    double worst = 0.0;
    for (const auto& b : system.members) worst = std::max(worst, d(b.center, x) / b.radius);
    if (worst < best.value) best = {worst, x};
  }
  return best;
}

Witnessed tripod_defect(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
  require_distinct(d, {i, j, k});
  const double dij = d(i, j), dik = d(i, k), djk = d(j, k);
  Witnessed best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t m = 0; m < d.size(); ++m) {
    const double a = d(i, m), b = d(j, m), c = d(k, m);
    const double v =
        std::max({std::abs(a + b - dij), std::abs(a + c - dik), std::abs(b + c - djk)});
    if (v < best.value) best = {v, m};
  }
  return best;
}

double quad_inequality_defect(const DistanceMatrix& d, const std::array<std::size_t, 4>& q) {
  require_distinct(d, {q[0], q[1], q[2], q[3]});
  const double d14 = d(q[0], q[3]), d23 = d(q[1], q[2]), d13 = d(q[0], q[2]);
  const double d24 = d(q[1], q[3]), d12 = d(q[0], q[1]), d34 = d(q[2], q[3]);
  return d14 * d14 + d23 * d23 - d13 * d13 - d24 * d24 - 2.0 * d12 * d34;
}

double quad_inequality_defect_max(const DistanceMatrix& d, const std::array<std::size_t, 4>& q) {
  std::array<std::size_t, 4> perm = q;
  std::sort(perm.begin(), perm.end());
  double worst = -std::numeric_limits<double>::infinity();
  do {
    worst = std::max(worst, quad_inequality_defect(d, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return worst;
}

TripleReport evaluate_triple(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                             const CurvatureTolerances& tol) {
  TripleReport rep;
  rep.indices = {i, j, k};
  rep.radii = gromov_products(d, i, j, k);
  const Witnessed tri = tripod_defect(d, i, j, k);
  rep.tripod_defect = tri.value;
  rep.tripod_witness = tri.witness;
  const Witnessed rho = rho_discrete(d, i, j, k, tol.degenerate_rel);
  rep.rho = rho.value;
  rep.witness = rho.witness;
  if (is_degenerate(d, rep.radii, tol.degenerate_rel)) {
    rep.verdict = Verdict::Degenerate;
    rep.rho_bar = 1.0;
    return rep;
  }
  // Matrices are validated upstream; the loose tolerance only absorbs
  // round-off accepted at validation time.
  const ComparisonTriangle cmp = build_comparison(d(i, j), d(i, k), d(j, k), 1e-6);
  rep.rho_bar = rho_bar(cmp, rep.radii).rho_bar;
  const double slack = tol.compare_rel * std::max(1.0, rep.rho_bar);
  rep.verdict = rep.rho <= rep.rho_bar + slack ? Verdict::Nonpositive : Verdict::Positive;
  return rep;
}

TripleScan scan_triples(const DistanceMatrix& d, const SamplingPlan& plan,
                        const CurvatureTolerances& tol) {
  const std::size_t n = d.size();
  if (n < 3) throw std::invalid_argument("scan_triples needs at least three points");
  TripleScan scan;
  ScanSummary& s = scan.summary;
  s.total_triples = binomial(n, 3);
  std::vector<std::array<std::size_t, 3>> tuples;
  if (n <= plan.exhaustive_threshold) {
    tuples = all_tuples<3>(n);
  } else {
    if (plan.sample_size >= s.total_triples) {
      s.warnings.push_back("sample size " + std::to_string(plan.sample_size) +
                           " clamped to the " + std::to_string(s.total_triples) +
                           " available triples");
    }
    tuples = sample_tuples<3>(n, plan.sample_size, plan.seed);
  }
  s.exhaustive = tuples.size() == s.total_triples;
  s.count = tuples.size();

  scan.triples.resize(tuples.size());
  parallel_for(tuples.size(), plan.workers, [&](std::size_t t) {
    const auto& [i, j, k] = tuples[t];
    scan.triples[t] = evaluate_triple(d, i, j, k, tol);
  });

  double excess_sum = 0.0;
  bool first = true;
  for (const auto& r : scan.triples) {
    if (first || r.rho < s.rho_min) s.rho_min = r.rho;
    if (first || r.rho > s.rho_max) s.rho_max = r.rho;
    first = false;
    switch (r.verdict) {
      case Verdict::Degenerate: ++s.degenerate; continue;
      case Verdict::Nonpositive: ++s.nonpositive; break;
      case Verdict::Positive: ++s.positive; break;
    }
    const double excess = r.rho - r.rho_bar;
    if (s.nonpositive + s.positive == 1 || excess > s.max_excess) s.max_excess = excess;
    excess_sum += excess;
  }
  const std::size_t nondegenerate = s.nonpositive + s.positive;
  if (nondegenerate > 0) {
    s.fraction_nonpositive = static_cast<double>(s.nonpositive) / static_cast<double>(nondegenerate);
    s.mean_excess = excess_sum / static_cast<double>(nondegenerate);
  }
  return scan;
}

BallSystem random_feasible_system(const DistanceMatrix& d, std::vector<std::size_t> centers,
                                  Rng& rng) {
  const std::size_t k = centers.size();
  std::vector<double> r(k);
  for (std::size_t a = 0; a < k; ++a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < k; ++b) {
      if (b != a && d(centers[a], centers[b]) > 0.0) {
        nearest = std::min(nearest, d(centers[a], centers[b]));
      }
    }
    if (!std::isfinite(nearest)) nearest = d.diameter() > 0.0 ? d.diameter() : 1.0;
    r[a] = nearest * rng.uniform(0.05, 0.5);
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (b != a) r[a] = std::max(r[a], d(centers[a], centers[b]) - r[b]);
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double shortfall = d(centers[a], centers[b]) - r[a] - r[b];
      if (shortfall > 0.0) {
        r[a] += 0.5 * shortfall;
        r[b] += 0.5 * shortfall;
      }
    }
  }
  BallSystem sys;
  for (std::size_t a = 0; a < k; ++a) sys.members.push_back({centers[a], r[a]});
  return sys;
}

bool is_pairwise_feasible(const DistanceMatrix& d, const BallSystem& system,
                          double rel_tolerance) {
  const double tol = rel_tolerance * d.diameter();
  const auto& m = system.members;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      if (m[a].radius + m[b].radius < d(m[a].center, m[b].center) - tol) return false;
    }
  }
  return true;
}

ExpansionEstimate expansion_constant_estimate(const DistanceMatrix& d,
                                              const ExpansionOptions& options) {
  const std::size_t n = d.size();
  if (n < 2) throw std::invalid_argument("expansion estimate needs at least two points");

  std::vector<BallSystem> systems;
  ExpansionEstimate est;
  const bool exhaustive = n <= options.exhaustive_threshold;
  est.exhaustive_canonical = exhaustive;

  const auto triples =
      exhaustive ? all_tuples<3>(n) : sample_tuples<3>(n, options.sample_size, options.seed);
  for (const auto& [i, j, k] : triples) {
    const GromovRadii g = gromov_products(d, i, j, k);
    if (is_degenerate(d, g)) continue;
    systems.push_back({{{i, g.r1}, {j, g.r2}, {k, g.r3}}});
  }
  if (options.include_pairs) {
    const auto pairs = exhaustive ? all_tuples<2>(n)
                                  : sample_tuples<2>(n, options.sample_size, options.seed + 1);
    for (const auto& [i, j] : pairs) {
      const double h = 0.5 * d(i, j);
      systems.push_back({{{i, h}, {j, h}}});
    }
  }
  Rng rng(options.seed);
  const std::size_t kcap = std::min(std::max<std::size_t>(options.k_max, 2), n);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const auto size = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(kcap)));
    std::vector<std::size_t> centers;
    while (centers.size() < size) {
      const auto c = static_cast<std::size_t>(rng.below(n));
      if (std::find(centers.begin(), centers.end(), c) == centers.end()) centers.push_back(c);
    }
    systems.push_back(random_feasible_system(d, std::move(centers), rng));
  }

  std::vector<Witnessed> values(systems.size());
  parallel_for(systems.size(), options.workers,
               [&](std::size_t s) { values[s] = rho_family(d, systems[s]); });

  est.systems_checked = systems.size();
  std::size_t best = systems.size();
  for (std::size_t s = 0; s < systems.size(); ++s) {
    if (best == systems.size() || values[s].value > values[best].value) best = s;
  }
  if (best < systems.size()) {
    est.lower_bound = values[best].value;
    est.witness = values[best].witness;
    est.worst_system = systems[best];
  }
  return est;
}

}  // namespace ballcurv
