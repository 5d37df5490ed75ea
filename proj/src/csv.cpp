#include "ballcurv/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ballcurv {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* begin = cell.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, cell.data() + cell.size(), out);
  if (ec == std::errc() && ptr == cell.data() + cell.size()) return true;
  // from_chars rejects "inf"/"nan" spellings some exporters use.
  if (cell == "nan" || cell == "NaN") {
    out = std::nan("");
    return true;
  }
  return false;
}

}  // namespace

RawTable read_csv_table(std::istream& in) {
  RawTable table;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    for (const auto& c : cells) {
      double v = 0.0;
      if (!parse_number(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (table.rows.empty() && table.header.empty()) {
        table.header = cells;
        width = cells.size();
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": non-numeric cell");
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                       " columns, found " + std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw InputError("no numeric rows");
  return table;
}

RawTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read_csv_table(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

RawTable read_matrix_csv(const std::string& path) {
  RawTable t = read_csv_file(path);
  if (t.rows.size() != t.rows.front().size()) {
    throw InputError(path + ": matrix is " + std::to_string(t.rows.size()) + "x" +
                     std::to_string(t.rows.front().size()) + ", not square");
  }
  if (!t.header.empty() && t.header.size() != t.rows.size()) {
    throw InputError(path + ": header has " + std::to_string(t.header.size()) +
                     " labels for " + std::to_string(t.rows.size()) + " points");
  }
  return t;
}

PointCloud read_points_csv(const std::string& path, MetricExponent exponent) {
  const RawTable t = read_csv_file(path);
  const std::size_t dim = t.rows.front().size();
  std::vector<double> coords;
  coords.reserve(t.rows.size() * dim);
  for (const auto& r : t.rows) coords.insert(coords.end(), r.begin(), r.end());
  try {
    return PointCloud(dim, std::move(coords), exponent);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (!d.labels().empty()) {
    for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << d.labels()[i];
    out << '\n';
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << format_double(d(i, j));
    out << '\n';
  }
}

}  // namespace ballcurv
