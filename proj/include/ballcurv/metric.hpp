#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballcurv {

inline constexpr double kDefaultRelTolerance = 1e-9;
inline constexpr std::size_t kDefaultPointCap = 2048;

/// Thrown when a construction would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense symmetric distance table with zero diagonal.
///
/// Instances are produced either by validate_metric or by constructions that
/// are metrics by design (Minkowski clouds, products, generators). All
/// instances are immutable.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Wraps a row-major n*n table without running the O(n^3) triangle check.
  /// Shape, symmetry and the zero diagonal are still enforced.
  static DistanceMatrix from_trusted(std::size_t n, std::vector<double> entries,
                                     std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
  std::span<const double> entries() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Label of point i, or its decimal index when the matrix is unlabeled.
  std::string label(std::size_t i) const;
  double diameter() const { return diameter_; }

  /// Every entry multiplied by factor (> 0).
  DistanceMatrix scaled(double factor) const;
  /// Sub-space on the given point indices, in the given order.
  DistanceMatrix restricted(std::span<const std::size_t> points) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
};

enum class ViolationKind { NonFinite, Negative, Diagonal, Asymmetric, Coincident, Triangle };

const char* to_string(ViolationKind kind);

/// One failed invariant. For Triangle, d(i,j) > d(i,k) + d(k,j) + tol and
/// `defect` is d(i,j) - d(i,k) - d(k,j). Pair kinds leave k equal to j.
struct Violation {
  ViolationKind kind;
  std::size_t i, j, k;
  double defect;
};

struct ValidationOptions {
  double rel_tolerance = kDefaultRelTolerance;
  /// Merge zero-distance pairs instead of reporting them.
  bool allow_pseudometric = false;
  std::size_t point_cap = kDefaultPointCap;
};

struct ValidationResult {
  std::optional<DistanceMatrix> metric;
  std::vector<Violation> violations;
  /// quotient[i] = index in `metric` of the class of input point i. Identity
  /// unless duplicates were merged.
  std::vector<std::size_t> quotient;

  bool ok() const { return metric.has_value(); }
};

/// Checks a raw square table against every DistanceMatrix invariant.
/// Throws std::invalid_argument for a non-square table and CapExceeded for a
/// size over the cap;
/// every other defect is reported in `violations`.
ValidationResult validate_metric(const std::vector<std::vector<double>>& table,
                                 const ValidationOptions& options = {},
                                 std::vector<std::string> labels = {});

/// Minkowski exponent; infinity selects the max norm.
struct MetricExponent {
  double p = 2.0;

  static MetricExponent infinity() { return {std::numeric_limits<double>::infinity()}; }
  bool is_infinite() const { return p == std::numeric_limits<double>::infinity(); }
  friend bool operator==(MetricExponent, MetricExponent) = default;
};

/// Parses "1", "2", "inf", "max" or any real >= 1.
MetricExponent parse_exponent(const std::string& text);
std::string to_string(MetricExponent exponent);

/// Finite point set in R^dim with a Minkowski metric.
class PointCloud {
 public:
  PointCloud(std::size_t dim, std::vector<double> coords, MetricExponent exponent,
             std::vector<std::string> labels = {});

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  MetricExponent exponent() const { return exponent_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  MetricExponent exponent_;
  std::vector<std::string> labels_;
};

double minkowski_distance(std::span<const double> a, std::span<const double> b,
                          MetricExponent exponent);

DistanceMatrix lp_distance_matrix(const PointCloud& cloud, unsigned workers = 1);

/// Isometric embedding into l-infinity: row x holds d(x,.) - d(base,.).
PointCloud kuratowski_embed(const DistanceMatrix& d, std::size_t base);

/// l1 product on index pairs; point (i,j) has index i * b.size() + j.
DistanceMatrix product_l1(const DistanceMatrix& a, const DistanceMatrix& b,
                          std::size_t point_cap = kDefaultPointCap);
/// l-infinity product, same indexing as product_l1.
DistanceMatrix product_linf(const DistanceMatrix& a, const DistanceMatrix& b,
                            std::size_t point_cap = kDefaultPointCap);

}  // namespace ballcurv
