// ballcurv command line front end.
//
// Exit status: 0 success, 2 metric validation failure, 1 input/config errors.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ballcurv/csv.hpp"
#include "ballcurv/report.hpp"

namespace bc = ballcurv;
using nlohmann::json;

namespace {

// Generator parameters as given on the command line. Only the fields that
// were set are copied over the defaults of the chosen kind.
struct GeneratorFlags {
  std::string kind;
  std::string json_text;
  std::size_t nodes = 0, leaves = 0, side = 0, dim = 0, count = 0;
  double spacing = 0, weight = 0, weight_min = 0, weight_max = 0, circumference = 0, box = 0;
  std::uint64_t seed = 0;
  bool dyadic = true;
  std::string p;

  CLI::Option* o_nodes{};
  CLI::Option* o_leaves{};
  CLI::Option* o_side{};
  CLI::Option* o_dim{};
  CLI::Option* o_count{};
  CLI::Option* o_spacing{};
  CLI::Option* o_weight{};
  CLI::Option* o_weight_min{};
  CLI::Option* o_weight_max{};
  CLI::Option* o_circumference{};
  CLI::Option* o_box{};
  CLI::Option* o_seed{};
  CLI::Option* o_dyadic{};
  CLI::Option* o_p{};

  void attach(CLI::App& app) {
    app.add_option("--generator", kind,
                   "weighted-tree | star | path | cycle | lp-grid | euclidean-sample | circle-geodesic");
    app.add_option("--generator-json", json_text, "generator spec as a JSON object");
    o_nodes = app.add_option("--nodes", nodes, "tree/path/cycle size");
    o_leaves = app.add_option("--leaves", leaves, "star leaves");
    o_side = app.add_option("--side", side, "lattice side length (points per axis)");
    o_dim = app.add_option("--dim", dim, "lattice or sample dimension");
    o_count = app.add_option("--count", count, "sample size");
    o_spacing = app.add_option("--spacing", spacing, "path/lattice spacing");
    o_weight = app.add_option("--weight", weight, "star edge weight");
    o_weight_min = app.add_option("--weight-min", weight_min, "tree edge weight lower bound");
    o_weight_max = app.add_option("--weight-max", weight_max, "tree edge weight upper bound");
    o_circumference = app.add_option("--circumference", circumference, "cycle/circle length");
    o_box = app.add_option("--box", box, "sampling box side");
    o_seed = app.add_option("--gen-seed", seed, "generator seed");
    o_dyadic = app.add_flag("--dyadic,!--no-dyadic", dyadic, "dyadic tree weights");
    o_p = app.add_option("--lattice-p", p, "lattice metric exponent (number or inf)");
  }

  bool given() const { return !kind.empty() || !json_text.empty(); }

  bc::GeneratorSpec build() const {
    if (!json_text.empty()) {
      if (!kind.empty()) throw bc::ConfigError("use either --generator or --generator-json");
      json j;
      try {
        j = json::parse(json_text);
      } catch (const json::exception& e) {
        throw bc::ConfigError(std::string("--generator-json: ") + e.what());
      }
      return bc::generator_from_json(j);
    }
    json j = bc::generator_to_json(bc::generator_from_json(json{{"kind", kind}}));
    auto put = [&](CLI::Option* o, const char* key, const json& value) {
      if (o->count() == 0) return;
      if (!j.contains(key)) throw bc::ConfigError(std::string("--") + o->get_name().substr(2) +
                                                  " does not apply to generator " + kind);
      j[key] = value;
    };
    put(o_nodes, "nodes", nodes);
    put(o_leaves, "leaves", leaves);
    put(o_side, "side", side);
    put(o_dim, "dim", dim);
    put(o_count, "count", count);
    put(o_spacing, "spacing", spacing);
    put(o_weight, "weight", weight);
    put(o_weight_min, "weight_min", weight_min);
    put(o_weight_max, "weight_max", weight_max);
    put(o_circumference, "circumference", circumference);
    put(o_box, "box", box);
    put(o_seed, "seed", seed);
    put(o_dyadic, "dyadic", dyadic);
    put(o_p, "p", p);
    return bc::generator_from_json(j);
  }
};

// RunConfig flags. Values come from --config first, then explicit flags.
struct RunFlags {
  std::string config_path;
  std::string matrix, points, p = "2";
  GeneratorFlags gen;
  bc::RunConfig c;  // flag targets; copied selectively in build()
  std::vector<std::function<void(bc::RunConfig&)>> setters;
  CLI::Option* o_p{};

  template <typename T>
  void opt(CLI::App& app, const std::string& name, T bc::RunConfig::*field, const std::string& help) {
    CLI::Option* o = app.add_option(name, c.*field, help);
    setters.push_back([this, o, field](bc::RunConfig& out) {
      if (o->count()) out.*field = c.*field;
    });
  }
  void flag(CLI::App& app, const std::string& name, bool bc::RunConfig::*field, const std::string& help) {
    CLI::Option* o = app.add_flag(name, c.*field, help);
    setters.push_back([this, o, field](bc::RunConfig& out) {
      if (o->count()) out.*field = c.*field;
    });
  }

  void attach(CLI::App& app, bool stage_flags) {
    app.add_option("--config", config_path, "JSON run configuration; flags override it");
    app.add_option("--matrix", matrix, "distance matrix CSV");
    app.add_option("--points", points, "point cloud CSV (one point per row)");
    o_p = app.add_option("--p", p, "metric exponent for --points (number >= 1 or inf)");
    gen.attach(app);
    opt(app, "--seed", &bc::RunConfig::seed, "sampling seed");
    opt(app, "--point-cap", &bc::RunConfig::point_cap, "maximum number of points");
    flag(app, "--allow-pseudometric", &bc::RunConfig::allow_pseudometric,
         "merge coincident points instead of rejecting");
    opt(app, "--rel-tolerance", &bc::RunConfig::rel_tolerance, "relative tolerance for metric checks");
    opt(app, "--compare-tolerance", &bc::RunConfig::compare_tolerance, "tolerance for rho <= rho_bar");
    opt(app, "--degenerate-tolerance", &bc::RunConfig::degenerate_tolerance,
        "relative threshold for degenerate Gromov radii");
    opt(app, "--triple-threshold", &bc::RunConfig::triple_exhaustive_threshold,
        "scan all triples up to this many points");
    opt(app, "--triple-samples", &bc::RunConfig::triple_sample_size, "sampled triples above the threshold");
    opt(app, "--quadruple-threshold", &bc::RunConfig::quadruple_exhaustive_threshold,
        "scan all quadruples up to this many points");
    opt(app, "--quadruple-samples", &bc::RunConfig::quadruple_sample_size,
        "sampled quadruples above the threshold");
    opt(app, "--top-k", &bc::RunConfig::top_k, "quadruples kept in the delta report");
    opt(app, "--expansion-trials", &bc::RunConfig::expansion_trials, "random ball systems tried");
    opt(app, "--expansion-k-max", &bc::RunConfig::expansion_k_max, "largest random ball system");
    flag(app, "--expansion-pairs,!--no-expansion-pairs", &bc::RunConfig::expansion_include_pairs,
         "include two-ball systems");
    opt(app, "--dim-cap", &bc::RunConfig::dim_cap, "top nerve dimension stored");
    opt(app, "--helly-k-max", &bc::RunConfig::helly_k_max, "largest Helly defect size searched");
    opt(app, "--simplex-cap", &bc::RunConfig::simplex_cap, "maximum total nerve simplices");
    opt(app, "--radii", &bc::RunConfig::nerve_radii, "nerve sweep radii")->delimiter(',');
    flag(app, "--export-complex", &bc::RunConfig::nerve_export, "include nerve simplices in the report");
    opt(app, "--histogram-bin-width", &bc::RunConfig::histogram_bin_width, "rho histogram bin width");
    opt(app, "-o,--output", &bc::RunConfig::report_path, "JSON report path (default stdout)");
    opt(app, "--triples-csv", &bc::RunConfig::triples_csv_path, "per-triple CSV path");
    opt(app, "--plot-dir", &bc::RunConfig::plot_dir, "directory for plot data CSVs");
    opt(app, "--workers", &bc::RunConfig::workers, "worker threads");
    if (stage_flags) {
      flag(app, "--curvature,!--no-curvature", &bc::RunConfig::run_curvature, "triple scan");
      flag(app, "--hyperbolicity,!--no-hyperbolicity", &bc::RunConfig::run_hyperbolicity, "four-point delta");
      flag(app, "--expansion,!--no-expansion", &bc::RunConfig::run_expansion, "expansion estimate");
      flag(app, "--nerve,!--no-nerve", &bc::RunConfig::run_nerve, "nerve sweep");
    }
  }

  // Returns the option so callers can chain modifiers.
  template <typename T>
  CLI::Option* opt(CLI::App& app, const std::string& name, std::vector<T> bc::RunConfig::*field,
                   const std::string& help) {
    CLI::Option* o = app.add_option(name, c.*field, help);
    setters.push_back([this, o, field](bc::RunConfig& out) {
      if (o->count()) out.*field = c.*field;
    });
    return o;
  }

  bc::RunConfig build() const {
    bc::RunConfig out;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw bc::InputError("cannot read config '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw bc::ConfigError("config '" + config_path + "': " + e.what());
      }
      out = bc::config_from_json(j);
    }
    const int sources = int(!matrix.empty()) + int(!points.empty()) + int(gen.given());
    if (sources > 1) throw bc::ConfigError("give only one of --matrix, --points, --generator");
    if (!matrix.empty()) {
      out.input = bc::InputKind::Matrix;
      out.input_path = matrix;
    } else if (!points.empty()) {
      out.input = bc::InputKind::Points;
      out.input_path = points;
    } else if (gen.given()) {
      out.input = bc::InputKind::Generator;
      out.generator = gen.build();
    } else if (config_path.empty()) {
      throw bc::ConfigError("no input: use --matrix, --points, --generator or --config");
    }
    if (o_p->count()) {
      try {
        out.exponent = bc::parse_exponent(p);
      } catch (const std::invalid_argument& e) {
        throw bc::ConfigError(e.what());
      }
    }
    for (const auto& set : setters) set(out);
    return out;
  }
};

int run_analysis(const RunFlags& flags, const std::string& stage) {
  bc::RunConfig config = flags.build();
  if (stage == "validate") {
    config.run_curvature = config.run_hyperbolicity = config.run_expansion = config.run_nerve = false;
  } else if (stage == "curvature") {
    config.run_hyperbolicity = config.run_nerve = false;
    config.run_curvature = config.run_expansion = true;
  } else if (stage == "hyperbolicity") {
    config.run_curvature = config.run_expansion = config.run_nerve = false;
    config.run_hyperbolicity = true;
  } else if (stage == "nerve") {
    config.run_curvature = config.run_expansion = config.run_hyperbolicity = false;
    config.run_nerve = true;
    if (config.nerve_radii.empty()) throw bc::ConfigError("nerve: --radii is required");
  }
  const bc::SpaceReport report = bc::run(config);
  bc::write_outputs(report);
  if (report.status == 2) {
    std::cerr << "ballcurv: input is not a metric (" << report.validation.violation_count
              << " violation(s))\n";
  }
  return report.status;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw bc::InputError("cannot write '" + path + "'");
}

std::string matrix_text(const bc::DistanceMatrix& d) {
  std::ostringstream s;
  bc::write_matrix_csv(s, d);
  return s.str();
}

int run_gen(const GeneratorFlags& gen, const std::string& batch, const std::string& output,
            std::size_t cap) {
  if (batch.empty()) {
    if (!gen.given()) throw bc::ConfigError("gen: --generator, --generator-json or --batch required");
    write_text(output, matrix_text(bc::generate(gen.build(), cap)));
    return 0;
  }
  if (gen.given()) throw bc::ConfigError("gen: --batch excludes --generator");
  if (output.empty()) throw bc::ConfigError("gen --batch: -o must name an output directory");
  std::ifstream in(batch);
  if (!in) throw bc::InputError("cannot read batch file '" + batch + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw bc::ConfigError("batch '" + batch + "': " + e.what());
  }
  if (!j.is_array()) throw bc::ConfigError("batch file must hold a JSON array of generator specs");
  // Build every space before writing any of them.
  std::vector<std::pair<std::string, std::string>> files;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const bc::GeneratorSpec spec = bc::generator_from_json(j[i]);
    const std::string name = std::to_string(i) + "-" + bc::generator_kind(spec) + ".csv";
    files.emplace_back((std::filesystem::path(output) / name).string(), matrix_text(bc::generate(spec, cap)));
  }
  std::filesystem::create_directories(output);
  for (const auto& [path, text] : files) write_text(path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ball-intersection curvature of finite metric spaces"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> stages = {
      {"validate", "check that the input is a metric"},
      {"curvature", "triple scan and expansion estimate"},
      {"hyperbolicity", "four-point delta"},
      {"nerve", "nerve homology and Helly defects for a radius sweep"},
      {"report", "full pipeline"}};
  std::vector<std::unique_ptr<RunFlags>> flags;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : stages) {
    CLI::App* sub = app.add_subcommand(name, help);
    flags.push_back(std::make_unique<RunFlags>());
    flags.back()->attach(*sub, name == "report");
    subs.push_back(sub);
  }

  CLI::App* gen_cmd = app.add_subcommand("gen", "write a generated space as a distance matrix CSV");
  GeneratorFlags gen;
  gen.attach(*gen_cmd);
  std::string batch, gen_output;
  std::size_t gen_cap = bc::kDefaultPointCap;
  gen_cmd->add_option("--batch", batch, "JSON array of generator specs");
  gen_cmd->add_option("-o,--output", gen_output, "output CSV (or directory with --batch)");
  gen_cmd->add_option("--point-cap", gen_cap, "maximum number of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (std::size_t s = 0; s < subs.size(); ++s) {
      if (subs[s]->parsed()) return run_analysis(*flags[s], stages[s].first);
    }
    return run_gen(gen, batch, gen_output, gen_cap);
  } catch (const bc::ConfigError& e) {
    std::cerr << "ballcurv: config error: " << e.what() << '\n';
  } catch (const bc::InputError& e) {
    std::cerr << "ballcurv: input error: " << e.what() << '\n';
  } catch (const bc::CapExceeded& e) {
    std::cerr << "ballcurv: size cap exceeded: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "ballcurv: error: " << e.what() << '\n';
  }
  return 1;
}
