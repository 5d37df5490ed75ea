#include "ballcurv/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace ballcurv {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t begin = count * t / threads;
      const std::size_t end = count * (t + 1) / threads;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

template <std::size_t K>
std::uint64_t encode(const std::array<std::size_t, K>& t, std::size_t n) {
  std::uint64_t key = 0;
  for (auto v : t) key = key * n + v;
  return key;
}

}  // namespace

template <std::size_t K>
std::vector<std::array<std::size_t, K>> sample_tuples(std::size_t n, std::size_t count,
                                                      std::uint64_t seed) {
  const std::uint64_t total = binomial(n, K);
  if (count >= total) return all_tuples<K>(n);
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::array<std::size_t, K>> out;
  out.reserve(count);
  while (out.size() < count) {
    std::array<std::size_t, K> t{};
    for (std::size_t a = 0; a < K; ++a) {
      bool fresh = false;
      while (!fresh) {
        t[a] = static_cast<std::size_t>(rng.below(n));
        fresh = std::find(t.begin(), t.begin() + a, t[a]) == t.begin() + a;
      }
    }
    std::sort(t.begin(), t.end());
    if (seen.insert(encode(t, n)).second) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <std::size_t K>
std::vector<std::array<std::size_t, K>> all_tuples(std::size_t n) {
  std::vector<std::array<std::size_t, K>> out;
  if (n < K) return out;
  out.reserve(binomial(n, K));
  std::array<std::size_t, K> t{};
  for (std::size_t a = 0; a < K; ++a) t[a] = a;
  while (true) {
    out.push_back(t);
    std::size_t a = K;
    while (a > 0 && t[a - 1] == n - K + (a - 1)) --a;
    if (a == 0) break;
    ++t[a - 1];
    for (std::size_t b = a; b < K; ++b) t[b] = t[b - 1] + 1;
  }
  return out;
}

template std::vector<std::array<std::size_t, 2>> sample_tuples<2>(std::size_t, std::size_t,
                                                                  std::uint64_t);
template std::vector<std::array<std::size_t, 3>> sample_tuples<3>(std::size_t, std::size_t,
                                                                  std::uint64_t);
template std::vector<std::array<std::size_t, 4>> sample_tuples<4>(std::size_t, std::size_t,
                                                                  std::uint64_t);
template std::vector<std::array<std::size_t, 2>> all_tuples<2>(std::size_t);
template std::vector<std::array<std::size_t, 3>> all_tuples<3>(std::size_t);
template std::vector<std::array<std::size_t, 4>> all_tuples<4>(std::size_t);

}  // namespace ballcurv
