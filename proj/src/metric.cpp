#include "ballcurv/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ballcurv/sampling.hpp"

namespace ballcurv {

DistanceMatrix DistanceMatrix::from_trusted(std::size_t n, std::vector<double> entries,
                                            std::vector<std::string> labels) {
  if (entries.size() != n * n) {
    throw std::invalid_argument("distance table is not n*n");
  }
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count does not match point count");
  }
  DistanceMatrix m;
  m.n_ = n;
  m.d_ = std::move(entries);
  m.labels_ = std::move(labels);
  for (std::size_t i = 0; i < n; ++i) {
    if (m.d_[i * n + i] != 0.0) throw std::invalid_argument("nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = m.d_[i * n + j];
      if (v != m.d_[j * n + i]) throw std::invalid_argument("asymmetric distance table");
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("negative or non-finite distance");
      }
      m.diameter_ = std::max(m.diameter_, v);
    }
  }
  return m;
}

std::string DistanceMatrix::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> e(d_);
  for (auto& v : e) v *= factor;
  return from_trusted(n_, std::move(e), labels_);
}

DistanceMatrix DistanceMatrix::restricted(std::span<const std::size_t> points) const {
  const std::size_t m = points.size();
  std::vector<double> e(m * m);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    if (points[a] >= n_) throw std::out_of_range("restricted: point index out of range");
    for (std::size_t b = 0; b < m; ++b) e[a * m + b] = (*this)(points[a], points[b]);
    if (!labels_.empty()) labels.push_back(labels_[points[a]]);
  }
  return from_trusted(m, std::move(e), std::move(labels));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonFinite: return "non_finite";
    case ViolationKind::Negative: return "negative";
    case ViolationKind::Diagonal: return "diagonal";
    case ViolationKind::Asymmetric: return "asymmetric";
    case ViolationKind::Coincident: return "coincident";
    case ViolationKind::Triangle: return "triangle";
  }
  return "unknown";
}

ValidationResult validate_metric(const std::vector<std::vector<double>>& table,
                                 const ValidationOptions& options,
                                 std::vector<std::string> labels) {
  const std::size_t n = table.size();
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("distance table is not square");
  }
  if (n > options.point_cap) {
    throw CapExceeded("point count " + std::to_string(n) + " exceeds cap " +
                      std::to_string(options.point_cap));
  }
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count does not match point count");
  }

  ValidationResult result;
  double max_entry = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = table[i][j];
      if (!std::isfinite(v)) {
        result.violations.push_back({ViolationKind::NonFinite, i, j, j, v});
        finite = false;
      } else {
        max_entry = std::max(max_entry, std::abs(v));
      }
    }
  }
  const double tol = options.rel_tolerance * max_entry;

  // Symmetrize and clamp within tolerance; record anything beyond it.
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double diag = table[i][i];
    if (std::isfinite(diag) && std::abs(diag) > tol) {
      result.violations.push_back({ViolationKind::Diagonal, i, i, i, diag});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = table[i][j];
      const double b = table[j][i];
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      if (std::abs(a - b) > tol) {
        result.violations.push_back({ViolationKind::Asymmetric, i, j, j, a - b});
      }
      double v = 0.5 * (a + b);
      if (v < -tol) {
        result.violations.push_back({ViolationKind::Negative, i, j, j, v});
      }
      v = std::max(v, 0.0);
      d[i * n + j] = d[j * n + i] = v;
    }
  }

  if (finite) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = d[i * n + j];
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const double defect = dij - d[i * n + k] - d[k * n + j];
          if (defect > tol) result.violations.push_back({ViolationKind::Triangle, i, j, k, defect});
        }
      }
    }
  }

  // Zero off-diagonal distances: either merged into a quotient or reported.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool merged = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] != 0.0 || !std::isfinite(table[i][j])) continue;
      if (!options.allow_pseudometric) {
        result.violations.push_back({ViolationKind::Coincident, i, j, j, 0.0});
        continue;
      }
      const std::size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
      merged = true;
    }
  }

  if (!result.violations.empty()) return result;

  if (!merged) {
    result.quotient.resize(n);
    std::iota(result.quotient.begin(), result.quotient.end(), std::size_t{0});
    result.metric = DistanceMatrix::from_trusted(n, std::move(d), std::move(labels));
    return result;
  }

  std::vector<std::size_t> reps;
  std::vector<std::size_t> class_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == i) {
      class_of[i] = reps.size();
      reps.push_back(i);
    }
  }
  result.quotient.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.quotient[i] = class_of[find(i)];
  const std::size_t m = reps.size();
  std::vector<double> q(m * m);
  std::vector<std::string> qlabels;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) q[a * m + b] = d[reps[a] * n + reps[b]];
    if (!labels.empty()) qlabels.push_back(labels[reps[a]]);
  }
  result.metric = DistanceMatrix::from_trusted(m, std::move(q), std::move(qlabels));
  return result;
}

MetricExponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "max") return MetricExponent::infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid metric exponent '" + text + "'");
  }
  if (used != text.size() || !(p >= 1.0)) {
    throw std::invalid_argument("metric exponent must be a real >= 1 or 'inf'");
  }
  return {p};
}

std::string to_string(MetricExponent exponent) {
  if (exponent.is_infinite()) return "inf";
  std::string s = std::to_string(exponent.p);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, MetricExponent exponent,
                       std::vector<std::string> labels)
    : dim_(dim), coords_(std::move(coords)), exponent_(exponent), labels_(std::move(labels)) {
  if (dim == 0) throw std::invalid_argument("point cloud dimension must be positive");
  if (coords_.size() % dim != 0) throw std::invalid_argument("ragged coordinate table");
  if (!(exponent.p >= 1.0)) throw std::invalid_argument("metric exponent must be >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw std::invalid_argument("label count does not match point count");
  }
}

double minkowski_distance(std::span<const double> a, std::span<const double> b,
                          MetricExponent exponent) {
  double acc = 0.0;
  if (exponent.is_infinite()) {
    for (std::size_t c = 0; c < a.size(); ++c) acc = std::max(acc, std::abs(a[c] - b[c]));
    return acc;
  }
  if (exponent.p == 1.0) {
    for (std::size_t c = 0; c < a.size(); ++c) acc += std::abs(a[c] - b[c]);
    return acc;
  }
  if (exponent.p == 2.0) {
    for (std::size_t c = 0; c < a.size(); ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
    return std::sqrt(acc);
  }
  for (std::size_t c = 0; c < a.size(); ++c) acc += std::pow(std::abs(a[c] - b[c]), exponent.p);
  return std::pow(acc, 1.0 / exponent.p);
}

DistanceMatrix lp_distance_matrix(const PointCloud& cloud, unsigned workers) {
  const std::size_t n = cloud.size();
  std::vector<double> d(n * n, 0.0);
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // Evaluate with the lower index first so d(i,j) and d(j,i) agree bitwise.
      const std::size_t a = std::min(i, j), b = std::max(i, j);
      d[i * n + j] = minkowski_distance(cloud.point(a), cloud.point(b), cloud.exponent());
    }
  });
  return DistanceMatrix::from_trusted(n, std::move(d), cloud.labels());
}

PointCloud kuratowski_embed(const DistanceMatrix& d, std::size_t base) {
  const std::size_t n = d.size();
  if (base >= n) throw std::out_of_range("kuratowski_embed: base index out of range");
  std::vector<double> coords(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < n; ++k) coords[x * n + k] = d(x, k) - d(base, k);
  }
  return PointCloud(n, std::move(coords), MetricExponent::infinity(), d.labels());
}

namespace {

template <typename Combine>
DistanceMatrix product(const DistanceMatrix& a, const DistanceMatrix& b, std::size_t cap,
                       Combine combine) {
  const std::size_t na = a.size(), nb = b.size();
  if (na != 0 && nb > cap / na) {
    throw CapExceeded("product size " + std::to_string(na) + "x" + std::to_string(nb) +
                      " exceeds point cap " + std::to_string(cap));
  }
  const std::size_t n = na * nb;
  std::vector<double> d(n * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      labels.push_back(a.label(i) + ":" + b.label(j));
      const std::size_t p = i * nb + j;
      for (std::size_t k = 0; k < na; ++k) {
        for (std::size_t l = 0; l < nb; ++l) d[p * n + k * nb + l] = combine(a(i, k), b(j, l));
      }
    }
  }
  return DistanceMatrix::from_trusted(n, std::move(d), std::move(labels));
}

}  // namespace

DistanceMatrix product_l1(const DistanceMatrix& a, const DistanceMatrix& b,
                          std::size_t point_cap) {
  return product(a, b, point_cap, [](double x, double y) { return x + y; });
}

DistanceMatrix product_linf(const DistanceMatrix& a, const DistanceMatrix& b,
                            std::size_t point_cap) {
  return product(a, b, point_cap, [](double x, double y) { return std::max(x, y); });
}

}  // namespace ballcurv
