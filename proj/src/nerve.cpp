#include "ballcurv/nerve.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "ballcurv/curvature.hpp"

namespace ballcurv {

namespace {

// Fixed-width bit set over points or simplices.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return npos;
  }
  // Highest set index, npos when empty.
  std::size_t last() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w]) return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
    }
    return npos;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

std::size_t index_of(const std::vector<Simplex>& level, const Simplex& s) {
  const auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || *it != s) return Bits::npos;
  return static_cast<std::size_t>(it - level.begin());
}

}  // namespace

bool NerveComplex::contains(const Simplex& s) const {
  if (s.empty() || s.size() > simplices.size()) return false;
  return index_of(simplices[s.size() - 1], s) != Bits::npos;
}

long NerveComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t q = 0; q < simplices.size(); ++q) {
    chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(simplices[q].size());
  }
  return chi;
}

NerveComplex build_nerve(const DistanceMatrix& d, const std::vector<std::size_t>& centers,
                         const std::vector<double>& radii, const NerveOptions& options) {
  if (centers.size() != radii.size()) {
    throw std::invalid_argument("build_nerve: one radius per center required");
  }
  if (options.dim_cap < 1) throw std::invalid_argument("build_nerve: dim_cap must be >= 1");
  const std::size_t n = d.size();
  const double tol = options.rel_tolerance * d.diameter();
  for (std::size_t v = 0; v < centers.size(); ++v) {
    if (centers[v] >= n) throw std::out_of_range("build_nerve: center out of range");
    if (!(radii[v] > 0.0)) throw std::invalid_argument("build_nerve: radii must be positive");
  }

  NerveComplex nerve;
  nerve.centers = centers;
  nerve.radii = radii;
  nerve.dim_cap = options.dim_cap;

  std::vector<Bits> cover(centers.size(), Bits(n));
  for (std::size_t v = 0; v < centers.size(); ++v) {
    for (std::size_t x = 0; x < n; ++x) {
      if (d(centers[v], x) <= radii[v] + tol) cover[v].set(x);
    }
  }

  std::size_t total = centers.size();
  if (total > options.simplex_cap) throw CapExceeded("nerve vertex count exceeds simplex cap");
  std::vector<Simplex> level;
  std::vector<std::size_t> level_witness;
  std::vector<Bits> level_cover = cover;
  for (std::size_t v = 0; v < centers.size(); ++v) {
    level.push_back({v});
    level_witness.push_back(cover[v].first());
  }
  nerve.simplices.push_back(level);
  nerve.witnesses.push_back(level_witness);

  for (std::size_t q = 1; q <= options.dim_cap && !level.empty(); ++q) {
    std::vector<Simplex> next;
    std::vector<std::size_t> next_witness;
    std::vector<Bits> next_cover;
    for (std::size_t s = 0; s < level.size(); ++s) {
      for (std::size_t v = level[s].back() + 1; v < centers.size(); ++v) {
        Bits common = level_cover[s] & cover[v];
        const std::size_t w = common.first();
        if (w == Bits::npos) continue;
        if (++total > options.simplex_cap) {
          throw CapExceeded("nerve exceeds the simplex cap of " +
                            std::to_string(options.simplex_cap));
        }
        Simplex sigma = level[s];
        sigma.push_back(v);
        next.push_back(std::move(sigma));
        next_witness.push_back(w);
        next_cover.push_back(std::move(common));
      }
    }
    level = std::move(next);
    level_cover = std::move(next_cover);
    nerve.simplices.push_back(level);
    nerve.witnesses.push_back(std::move(next_witness));
  }
  while (nerve.simplices.size() <= options.dim_cap) {
    nerve.simplices.emplace_back();
    nerve.witnesses.emplace_back();
  }
  return nerve;
}

NerveComplex build_nerve(const DistanceMatrix& d, const std::vector<double>& radii,
                         const NerveOptions& options) {
  if (radii.size() != d.size()) throw std::invalid_argument("build_nerve: one radius per point");
  std::vector<std::size_t> centers(d.size());
  for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = i;
  return build_nerve(d, centers, radii, options);
}

NerveComplex gromov_radii_nerve(const DistanceMatrix& d, const std::array<std::size_t, 3>& triple,
                                double scale) {
  const auto [i, j, k] = triple;
  const GromovRadii g = gromov_products(d, i, j, k);
  if (is_degenerate(d, g)) throw std::invalid_argument("gromov_radii_nerve: degenerate triple");
  if (!(scale > 0.0)) throw std::invalid_argument("gromov_radii_nerve: scale must be positive");
  NerveOptions opt;
  opt.dim_cap = 2;
  return build_nerve(d, {i, j, k}, {scale * g.r1, scale * g.r2, scale * g.r3}, opt);
}

std::vector<HellyDefect> helly_defects(const NerveComplex& nerve, std::size_t k_max) {
  if (k_max > nerve.dim_cap + 1) {
    throw std::invalid_argument("helly_defects: k_max exceeds dim_cap + 1");
  }
  std::vector<HellyDefect> out;
  const std::size_t nv = nerve.vertex_count();
  for (std::size_t k = 3; k <= k_max; ++k) {
    const auto& faces = nerve.simplices[k - 2];
    const auto& full = nerve.simplices[k - 1];
    for (const Simplex& sigma : faces) {
      for (std::size_t v = sigma.back() + 1; v < nv; ++v) {
        Simplex j = sigma;
        j.push_back(v);
        if (index_of(full, j) != Bits::npos) continue;
        bool boundary = true;
        for (std::size_t drop = 0; drop + 1 < j.size() && boundary; ++drop) {
          Simplex facet = j;
          facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
          boundary = index_of(faces, facet) != Bits::npos;
        }
        if (boundary) out.push_back({std::move(j)});
      }
    }
  }
  return out;
}

std::size_t boundary_rank_mod2(const NerveComplex& nerve, std::size_t q) {
  if (q == 0 || q >= nerve.simplices.size()) return 0;
  const auto& cols = nerve.simplices[q];
  const auto& rows = nerve.simplices[q - 1];
  std::vector<Bits> matrix;
  matrix.reserve(cols.size());
  for (const Simplex& s : cols) {
    Bits col(rows.size());
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex facet = s;
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
      col.set(index_of(rows, facet));
    }
    matrix.push_back(std::move(col));
  }
  // Column reduction: pivot_of[row] is the reduced column owning that lowest one.
  std::vector<std::size_t> pivot_of(rows.size(), Bits::npos);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < matrix.size(); ++c) {
    std::size_t low = matrix[c].last();
    while (low != Bits::npos && pivot_of[low] != Bits::npos) {
      matrix[c] ^= matrix[pivot_of[low]];
      low = matrix[c].last();
    }
    if (low != Bits::npos) {
      pivot_of[low] = c;
      ++rank;
    }
  }
  return rank;
}

std::vector<std::size_t> betti_mod2(const NerveComplex& nerve, std::size_t max_dim) {
  if (max_dim > nerve.dim_cap) throw std::invalid_argument("betti_mod2: max_dim exceeds dim_cap");
  std::vector<std::size_t> ranks(max_dim + 2, 0);
  for (std::size_t q = 1; q <= max_dim + 1; ++q) ranks[q] = boundary_rank_mod2(nerve, q);
  std::vector<std::size_t> betti;
  for (std::size_t q = 0; q <= max_dim; ++q) betti.push_back(nerve.count(q) - ranks[q] - ranks[q + 1]);
  return betti;
}

}  // namespace ballcurv
