#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballcurv/curvature.hpp"
#include "ballcurv/generators.hpp"
#include "ballcurv/hyperbolicity.hpp"
#include "ballcurv/metric.hpp"
#include "ballcurv/nerve.hpp"

namespace ballcurv {

inline constexpr int kSchemaVersion = 1;

/// Invalid run configuration (unknown keys, bad values, missing input).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputKind { Matrix, Points, Generator };

struct RunConfig {
  InputKind input = InputKind::Generator;
  std::string input_path;  // matrix or point CSV
  MetricExponent exponent{2.0};
  GeneratorSpec generator = WeightedTreeSpec{};

  std::uint64_t seed = 0;
  std::size_t point_cap = kDefaultPointCap;
  bool allow_pseudometric = false;

  double rel_tolerance = kDefaultRelTolerance;
  double compare_tolerance = 1e-9;
  double degenerate_tolerance = kDegenerateRel;

  bool run_curvature = true;
  bool run_hyperbolicity = true;
  bool run_expansion = true;
  bool run_nerve = true;

  std::size_t triple_exhaustive_threshold = 60;
  std::size_t triple_sample_size = 2000;
  std::size_t quadruple_exhaustive_threshold = kQuadrupleExhaustiveThreshold;
  std::size_t quadruple_sample_size = 20000;
  std::size_t top_k = 10;

  std::size_t expansion_trials = 200;
  std::size_t expansion_k_max = 6;
  bool expansion_include_pairs = true;

  std::size_t dim_cap = kDefaultDimCap;
  std::size_t helly_k_max = 4;
  std::size_t simplex_cap = kDefaultSimplexCap;
  std::vector<double> nerve_radii;
  bool nerve_export = false;  // include simplices and witnesses in the report

  double histogram_bin_width = 0.01;

  std::string report_path;       // JSON report; empty = stdout
  std::string triples_csv_path;  // optional per-triple CSV
  std::string plot_dir;          // optional directory for plot CSVs

  /// Execution detail only: never changes a numeric result.
  unsigned workers = 1;
};

nlohmann::json generator_to_json(const GeneratorSpec& spec);
/// Throws ConfigError on unknown kinds, unknown keys or invalid values.
GeneratorSpec generator_from_json(const nlohmann::json& j);

/// Serializes everything except `workers`, which lives with the timings.
nlohmann::json config_to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

struct ValidationSummary {
  bool ok = false;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first kMaxReportedViolations
  std::size_t merged_points = 0;
};

inline constexpr std::size_t kMaxReportedViolations = 100;

struct NerveResult {
  double radius = 0.0;
  std::vector<std::size_t> simplex_counts;
  std::vector<std::size_t> betti;
  long euler_characteristic = 0;
  std::vector<HellyDefect> helly;
  std::string error;  // set when the nerve could not be built (cap exceeded)
  std::optional<NerveComplex> complex;  // kept when RunConfig::nerve_export is set
};

/// Vertices (centers and radii), simplices by dimension with their
/// witnesses, and the given Betti numbers.
nlohmann::json nerve_to_json(const NerveComplex& nerve, const std::vector<std::size_t>& betti);

struct SpaceReport {
  RunConfig config;
  std::size_t points = 0;
  std::vector<std::string> labels;
  ValidationSummary validation;
  std::optional<TripleScan> scan;
  std::optional<DeltaReport> delta;
  std::optional<ExpansionEstimate> expansion;
  std::vector<NerveResult> nerves;
  std::map<std::string, double> timings;
  /// 0 success, 2 metric validation failure.
  int status = 0;
};

/// Loads the configured input into a raw table. Throws InputError,
/// ConfigError or CapExceeded.
struct LoadedInput {
  std::vector<std::vector<double>> table;
  std::vector<std::string> labels;
};
LoadedInput load_input(const RunConfig& config);

/// validate -> scan_triples -> four_point_delta -> expansion estimate ->
/// nerve sweep. Nothing is written to disk here.
SpaceReport run(const RunConfig& config);

/// Same pipeline on an already validated matrix.
SpaceReport run_on_matrix(const RunConfig& config, const DistanceMatrix& d);

nlohmann::json report_to_json(const SpaceReport& report);

enum class PlotKind { RhoHistogram, RhoVsRhoBar, DeltaQuadrupleTopK };

PlotKind parse_plot_kind(const std::string& name);
const char* to_string(PlotKind kind);

/// CSV with a one-line header. Throws std::invalid_argument when the report
/// lacks the needed section.
std::string emit_plot_data(const SpaceReport& report, PlotKind which);

/// Per-triple CSV: indices, labels, radii, rho, witness, rho_bar, verdict,
/// tripod defect.
std::string triples_csv(const SpaceReport& report);

/// Writes the JSON report and any configured CSVs. Called once, after run()
/// has succeeded.
void write_outputs(const SpaceReport& report);

}  // namespace ballcurv
