#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ballcurv/comparison.hpp"
#include "ballcurv/metric.hpp"
#include "ballcurv/sampling.hpp"

namespace ballcurv {

inline constexpr double kDegenerateRel = 1e-12;

/// Minimum of an objective over the points of the space, with the smallest
/// index attaining it.
struct Witnessed {
  double value = 0.0;
  std::size_t witness = 0;
};

enum class Verdict { Nonpositive, Positive, Degenerate };

const char* to_string(Verdict v);

struct TripleReport {
  std::array<std::size_t, 3> indices{};
  GromovRadii radii;
  double rho = 1.0;
  std::size_t witness = 0;
  double rho_bar = 1.0;
  Verdict verdict = Verdict::Degenerate;
  double tripod_defect = 0.0;
  std::size_t tripod_witness = 0;
};

struct BallSystem {
  struct Ball {
    std::size_t center;
    double radius;
  };
  std::vector<Ball> members;
};

/// Throws std::invalid_argument unless i, j, k are distinct and in range.
GromovRadii gromov_products(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k);

/// True when some Gromov radius is at most degenerate_rel times the diameter.
bool is_degenerate(const DistanceMatrix& d, const GromovRadii& radii,
                   double degenerate_rel = kDegenerateRel);

/// min over points x of max_i d(x_i, x) / r_i with Gromov radii.
///
/// For a degenerate triple the vanishing-radius constraints are read as
/// "x coincides with that center": the minimum runs over points within the
/// degeneracy tolerance of every degenerate center and only divides by the
/// positive radii.
Witnessed rho_discrete(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                       double degenerate_rel = kDegenerateRel);

/// min over x of max(2 d(i,x), 2 d(j,x)) / d(i,j). Equals 1 iff a midpoint exists.
Witnessed rho_pair(const DistanceMatrix& d, std::size_t i, std::size_t j);

/// min over x of max over members of d(center, x) / radius.
Witnessed rho_family(const DistanceMatrix& d, const BallSystem& system);

/// min over m of the worst median defect |d(x_a,m) + d(x_b,m) - d(x_a,x_b)|.
Witnessed tripod_defect(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k);

/// d^2(x1,x4) + d^2(x2,x3) - d^2(x1,x3) - d^2(x2,x4) - 2 d(x1,x2) d(x3,x4)
/// for the quadruple in the order given. Nonpositive in CAT(0) spaces.
double quad_inequality_defect(const DistanceMatrix& d, const std::array<std::size_t, 4>& q);

/// Largest defect over the 24 orderings of four distinct points.
double quad_inequality_defect_max(const DistanceMatrix& d, const std::array<std::size_t, 4>& q);

struct CurvatureTolerances {
  double degenerate_rel = kDegenerateRel;
  /// Verdict slack is compare_rel * max(1, rho_bar).
  double compare_rel = 1e-9;
};

/// Full per-triple evaluation: rho, comparison, verdict and tripod defect.
TripleReport evaluate_triple(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                             const CurvatureTolerances& tol = {});

struct ScanSummary {
  std::size_t count = 0;
  std::uint64_t total_triples = 0;
  bool exhaustive = true;
  std::size_t nonpositive = 0;
  std::size_t positive = 0;
  std::size_t degenerate = 0;
  /// Nonpositive share among nondegenerate triples (1 when there are none).
  double fraction_nonpositive = 1.0;
  double max_excess = 0.0;   // max of rho - rho_bar over nondegenerate triples
  double mean_excess = 0.0;  // mean of the same
  double rho_min = 0.0, rho_max = 0.0;
  std::vector<std::string> warnings;
};

struct TripleScan {
  std::vector<TripleReport> triples;
  ScanSummary summary;
};

/// Evaluates every triple when n <= plan.exhaustive_threshold, otherwise a
/// seeded uniform sample of plan.sample_size distinct triples. Output order
/// and values do not depend on plan.workers.
TripleScan scan_triples(const DistanceMatrix& d, const SamplingPlan& plan,
                        const CurvatureTolerances& tol = {});

struct ExpansionOptions {
  std::size_t trials = 200;
  std::size_t k_max = 6;
  std::uint64_t seed = 0;
  bool include_pairs = true;
  /// Triples and pairs are enumerated exhaustively up to this n and
  /// sampled (sample_size each) above it.
  std::size_t exhaustive_threshold = 60;
  std::size_t sample_size = 2000;
  unsigned workers = 1;
};

struct ExpansionEstimate {
  /// A lower bound on the expansion constant, never its value.
  double lower_bound = 0.0;
  BallSystem worst_system;
  std::size_t witness = 0;
  std::size_t systems_checked = 0;
  bool exhaustive_canonical = true;
};

/// Max of rho_family over canonical triple systems (Gromov radii), canonical
/// pair systems (half-distance radii) and random pairwise-feasible systems.
ExpansionEstimate expansion_constant_estimate(const DistanceMatrix& d,
                                              const ExpansionOptions& options = {});

/// Pairwise-feasible radii for the given centers: random positive start,
/// two greedy saturation sweeps r_i = max(r_i, max_j d(i,j) - r_j), then
/// equal inflation of any pair still short.
BallSystem random_feasible_system(const DistanceMatrix& d, std::vector<std::size_t> centers,
                                  Rng& rng);

/// True when r_i + r_j >= d(c_i, c_j) - rel_tolerance * diameter for all pairs.
bool is_pairwise_feasible(const DistanceMatrix& d, const BallSystem& system,
                          double rel_tolerance = kDefaultRelTolerance);

}  // namespace ballcurv
