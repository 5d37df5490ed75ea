#include "ballcurv/hyperbolicity.hpp"

#include <algorithm>
#include <stdexcept>

namespace ballcurv {

double four_point_defect(const DistanceMatrix& d, const std::array<std::size_t, 4>& q) {
  const auto [a, b, c, e] = q;
  std::array<double, 3> s{d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)};
  std::sort(s.begin(), s.end());
  return s[2] - s[1];
}

namespace {

bool ranks_before(const QuadrupleDefect& x, const QuadrupleDefect& y) {
  if (x.defect != y.defect) return x.defect > y.defect;
  return x.indices < y.indices;
}

void keep_top(std::vector<QuadrupleDefect>& top, const QuadrupleDefect& q, std::size_t k) {
  if (k == 0) return;
  if (top.size() == k && !ranks_before(q, top.back())) return;
  top.insert(std::upper_bound(top.begin(), top.end(), q, ranks_before), q);
  if (top.size() > k) top.pop_back();
}

}  // namespace

DeltaReport four_point_delta(const DistanceMatrix& d, const SamplingPlan& plan, std::size_t top_k) {
  const std::size_t n = d.size();
  DeltaReport rep;
  if (n < 4) return rep;

  const std::uint64_t total = binomial(n, 4);
  std::vector<std::vector<QuadrupleDefect>> partial;
  // Keep at least one entry per block so the overall maximum survives.
  const std::size_t keep = std::max<std::size_t>(top_k, 1);

  if (n <= plan.exhaustive_threshold) {
    // Block by the smallest index; each block scans its own lexicographic run.
    partial.resize(n - 3);
    parallel_for(n - 3, plan.workers, [&](std::size_t a) {
      auto& top = partial[a];
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          for (std::size_t e = c + 1; e < n; ++e) {
            const std::array<std::size_t, 4> q{a, b, c, e};
            keep_top(top, {q, four_point_defect(d, q)}, keep);
          }
        }
      }
    });
    rep.quadruples_checked = total;
  } else {
    const auto quads = sample_tuples<4>(n, plan.sample_size, plan.seed);
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(quads.size(), 64));
    partial.resize(blocks);
    parallel_for(blocks, plan.workers, [&](std::size_t blk) {
      const std::size_t begin = quads.size() * blk / blocks;
      const std::size_t end = quads.size() * (blk + 1) / blocks;
      for (std::size_t t = begin; t < end; ++t) {
        keep_top(partial[blk], {quads[t], four_point_defect(d, quads[t])}, keep);
      }
    });
    rep.quadruples_checked = quads.size();
  }
  rep.exhaustive = rep.quadruples_checked == total;

  std::vector<QuadrupleDefect> merged;
  for (const auto& p : partial) {
    for (const auto& q : p) keep_top(merged, q, keep);
  }
  if (!merged.empty()) {
    rep.delta = merged.front().defect;
    rep.witness_quadruple = merged.front().indices;
  }
  if (merged.size() > top_k) merged.resize(top_k);
  rep.top = std::move(merged);
  return rep;
}

double delta_normalized(const DistanceMatrix& d, const SamplingPlan& plan) {
  if (!(d.diameter() > 0.0)) throw std::invalid_argument("delta_normalized: zero diameter");
  return four_point_delta(d, plan, 1).delta / d.diameter();
}

}  // namespace ballcurv
