#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballcurv/metric.hpp"

namespace ballcurv {

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawTable {
  std::vector<std::string> header;  // empty when the file has no header row
  std::vector<std::vector<double>> rows;
};

/// Comma-separated numeric table. A first row containing any non-numeric
/// cell is taken as a header. Blank lines are skipped.
RawTable read_csv_table(std::istream& in);
RawTable read_csv_file(const std::string& path);

/// Square distance matrix, optional header of point labels.
RawTable read_matrix_csv(const std::string& path);

/// One point per row; the header, if present, names coordinates and is
/// ignored for labels.
PointCloud read_points_csv(const std::string& path, MetricExponent exponent);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_matrix_csv(std::ostream& out, const DistanceMatrix& d);

}  // namespace ballcurv
