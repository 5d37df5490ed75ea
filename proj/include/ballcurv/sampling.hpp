#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ballcurv {

/// Seeded generator with platform-independent derived distributions.
///
/// std::uniform_*_distribution are implementation-defined, so the bounded
/// integer and unit-interval draws are derived here directly from the
/// mt19937_64 output stream, which the standard fixes bit-for-bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// Controls exhaustive-vs-sampled enumeration of index tuples.
struct SamplingPlan {
  std::size_t exhaustive_threshold = 60;  // n at or below this scans everything
  std::size_t sample_size = 2000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Runs body(i) for i in [0, count) on up to `workers` threads.
///
/// Indices are split into contiguous blocks; body must only write to
/// per-index storage so results do not depend on the worker count.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// Distinct sorted index tuples of size K drawn uniformly without
/// replacement from [0, n). Returned in lexicographic order.
template <std::size_t K>
std::vector<std::array<std::size_t, K>> sample_tuples(std::size_t n, std::size_t count,
                                                      std::uint64_t seed);

/// All sorted K-tuples of [0, n) in lexicographic order.
template <std::size_t K>
std::vector<std::array<std::size_t, K>> all_tuples(std::size_t n);

}  // namespace ballcurv
