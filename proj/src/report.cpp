#include "ballcurv/report.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ballcurv/csv.hpp"

namespace ballcurv {

using nlohmann::json;

namespace {

// Reads known keys from a JSON object and rejects the rest.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ConfigError(where_ + ": expected a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json exponent_to_json(MetricExponent e) {
  if (e.is_infinite()) return "inf";
  return e.p;
}

MetricExponent exponent_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_exponent(j.get<std::string>());
    if (j.is_number()) return parse_exponent(format_double(j.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("metric exponent must be a number or \"inf\"");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

json generator_to_json(const GeneratorSpec& spec) {
  json j;
  j["kind"] = generator_kind(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WeightedTreeSpec>) {
          j["nodes"] = s.nodes;
          j["seed"] = s.seed;
          j["weight_min"] = s.weight_min;
          j["weight_max"] = s.weight_max;
          j["dyadic"] = s.dyadic;
        } else if constexpr (std::is_same_v<T, StarSpec>) {
          j["leaves"] = s.leaves;
          j["weight"] = s.weight;
        } else if constexpr (std::is_same_v<T, PathSpec>) {
          j["nodes"] = s.nodes;
          j["spacing"] = s.spacing;
        } else if constexpr (std::is_same_v<T, CycleSpec>) {
          j["nodes"] = s.nodes;
          j["circumference"] = s.circumference;
        } else if constexpr (std::is_same_v<T, LpGridSpec>) {
          j["side"] = s.side;
          j["dim"] = s.dim;
          j["spacing"] = s.spacing;
          j["p"] = exponent_to_json(s.exponent);
        } else if constexpr (std::is_same_v<T, EuclideanSampleSpec>) {
          j["count"] = s.count;
          j["dim"] = s.dim;
          j["seed"] = s.seed;
          j["box"] = s.box;
        } else {
          j["count"] = s.count;
          j["circumference"] = s.circumference;
          j["seed"] = s.seed;
        }
      },
      spec);
  return j;
}

GeneratorSpec generator_from_json(const json& j) {
  ObjectReader r(j, "generator");
  std::string kind;
  r.get("kind", kind);
  GeneratorSpec spec;
  if (kind == "weighted-tree") {
    WeightedTreeSpec s;
    r.get("nodes", s.nodes);
    r.get("seed", s.seed);
    r.get("weight_min", s.weight_min);
    r.get("weight_max", s.weight_max);
    r.get("dyadic", s.dyadic);
    spec = s;
  } else if (kind == "star") {
    StarSpec s;
    r.get("leaves", s.leaves);
    r.get("weight", s.weight);
    spec = s;
  } else if (kind == "path") {
    PathSpec s;
    r.get("nodes", s.nodes);
    r.get("spacing", s.spacing);
    spec = s;
  } else if (kind == "cycle") {
    CycleSpec s;
    r.get("nodes", s.nodes);
    r.get("circumference", s.circumference);
    spec = s;
  } else if (kind == "lp-grid") {
    LpGridSpec s;
    r.get("side", s.side);
    r.get("dim", s.dim);
    r.get("spacing", s.spacing);
    if (const json* p = r.child("p")) s.exponent = exponent_from_json(*p);
    spec = s;
  } else if (kind == "euclidean-sample") {
    EuclideanSampleSpec s;
    r.get("count", s.count);
    r.get("dim", s.dim);
    r.get("seed", s.seed);
    r.get("box", s.box);
    spec = s;
  } else if (kind == "circle-geodesic") {
    CircleGeodesicSpec s;
    r.get("count", s.count);
    r.get("circumference", s.circumference);
    r.get("seed", s.seed);
    spec = s;
  } else {
    throw ConfigError("generator: unknown kind '" + kind + "'");
  }
  r.finish();
  return spec;
}

json config_to_json(const RunConfig& c) {
  json j;
  switch (c.input) {
    case InputKind::Matrix: j["input"] = {{"kind", "matrix"}, {"path", c.input_path}}; break;
    case InputKind::Points:
      j["input"] = {{"kind", "points"}, {"path", c.input_path}, {"p", exponent_to_json(c.exponent)}};
      break;
    case InputKind::Generator:
      j["input"] = {{"kind", "generator"}, {"spec", generator_to_json(c.generator)}};
      break;
  }
  j["seed"] = c.seed;
  j["point_cap"] = c.point_cap;
  j["allow_pseudometric"] = c.allow_pseudometric;
  j["tolerances"] = {{"rel", c.rel_tolerance},
                     {"compare", c.compare_tolerance},
                     {"degenerate", c.degenerate_tolerance}};
  j["stages"] = {{"curvature", c.run_curvature},
                 {"hyperbolicity", c.run_hyperbolicity},
                 {"expansion", c.run_expansion},
                 {"nerve", c.run_nerve}};
  j["triples"] = {{"exhaustive_threshold", c.triple_exhaustive_threshold},
                  {"sample_size", c.triple_sample_size}};
  j["quadruples"] = {{"exhaustive_threshold", c.quadruple_exhaustive_threshold},
                     {"sample_size", c.quadruple_sample_size},
                     {"top_k", c.top_k}};
  j["expansion"] = {{"trials", c.expansion_trials},
                    {"k_max", c.expansion_k_max},
                    {"include_pairs", c.expansion_include_pairs}};
  j["nerve"] = {{"dim_cap", c.dim_cap},
                {"helly_k_max", c.helly_k_max},
                {"simplex_cap", c.simplex_cap},
                {"radii", c.nerve_radii},
                {"export_complex", c.nerve_export}};
  j["histogram_bin_width"] = c.histogram_bin_width;
  j["outputs"] = {{"report", c.report_path},
                  {"triples_csv", c.triples_csv_path},
                  {"plot_dir", c.plot_dir}};
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  ObjectReader r(j, "config");
  if (const json* in = r.child("input")) {
    ObjectReader ir(*in, "config.input");
    std::string kind = "generator";
    ir.get("kind", kind);
    if (kind == "matrix") {
      c.input = InputKind::Matrix;
      ir.get("path", c.input_path);
    } else if (kind == "points") {
      c.input = InputKind::Points;
      ir.get("path", c.input_path);
      if (const json* p = ir.child("p")) c.exponent = exponent_from_json(*p);
    } else if (kind == "generator") {
      c.input = InputKind::Generator;
      if (const json* s = ir.child("spec")) c.generator = generator_from_json(*s);
    } else {
      throw ConfigError("config.input: unknown kind '" + kind + "'");
    }
    ir.finish();
  }
  r.get("seed", c.seed);
  r.get("point_cap", c.point_cap);
  r.get("allow_pseudometric", c.allow_pseudometric);
  r.get("workers", c.workers);
  r.get("histogram_bin_width", c.histogram_bin_width);
  if (const json* t = r.child("tolerances")) {
    ObjectReader tr(*t, "config.tolerances");
    tr.get("rel", c.rel_tolerance);
    tr.get("compare", c.compare_tolerance);
    tr.get("degenerate", c.degenerate_tolerance);
    tr.finish();
  }
  if (const json* s = r.child("stages")) {
    ObjectReader sr(*s, "config.stages");
    sr.get("curvature", c.run_curvature);
    sr.get("hyperbolicity", c.run_hyperbolicity);
    sr.get("expansion", c.run_expansion);
    sr.get("nerve", c.run_nerve);
    sr.finish();
  }
  if (const json* t = r.child("triples")) {
    ObjectReader tr(*t, "config.triples");
    tr.get("exhaustive_threshold", c.triple_exhaustive_threshold);
    tr.get("sample_size", c.triple_sample_size);
    tr.finish();
  }
  if (const json* q = r.child("quadruples")) {
    ObjectReader qr(*q, "config.quadruples");
    qr.get("exhaustive_threshold", c.quadruple_exhaustive_threshold);
    qr.get("sample_size", c.quadruple_sample_size);
    qr.get("top_k", c.top_k);
    qr.finish();
  }
  if (const json* e = r.child("expansion")) {
    ObjectReader er(*e, "config.expansion");
    er.get("trials", c.expansion_trials);
    er.get("k_max", c.expansion_k_max);
    er.get("include_pairs", c.expansion_include_pairs);
    er.finish();
  }
  if (const json* n = r.child("nerve")) {
    ObjectReader nr(*n, "config.nerve");
    nr.get("dim_cap", c.dim_cap);
    nr.get("helly_k_max", c.helly_k_max);
    nr.get("simplex_cap", c.simplex_cap);
    nr.get("radii", c.nerve_radii);
    nr.get("export_complex", c.nerve_export);
    nr.finish();
  }
  if (const json* o = r.child("outputs")) {
    ObjectReader orr(*o, "config.outputs");
    orr.get("report", c.report_path);
    orr.get("triples_csv", c.triples_csv_path);
    orr.get("plot_dir", c.plot_dir);
    orr.finish();
  }
  r.finish();
  return c;
}

namespace {

void check_config(const RunConfig& c) {
  if (c.input != InputKind::Generator && c.input_path.empty()) {
    throw ConfigError("no input file given");
  }
  if (c.dim_cap < 1) throw ConfigError("dim_cap must be at least 1");
  if (c.helly_k_max > c.dim_cap + 1) throw ConfigError("helly_k_max may not exceed dim_cap + 1");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (!(c.histogram_bin_width > 0.0)) throw ConfigError("histogram_bin_width must be positive");
  for (double r : c.nerve_radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("nerve radii must be positive");
  }
  for (double t : {c.rel_tolerance, c.compare_tolerance, c.degenerate_tolerance}) {
    if (!(t >= 0.0)) throw ConfigError("tolerances must be nonnegative");
  }
}

}  // namespace

LoadedInput load_input(const RunConfig& config) {
  LoadedInput in;
  switch (config.input) {
    case InputKind::Matrix: {
      RawTable t = read_matrix_csv(config.input_path);
      in.table = std::move(t.rows);
      in.labels = std::move(t.header);
      break;
    }
    case InputKind::Points: {
      const PointCloud cloud = read_points_csv(config.input_path, config.exponent);
      if (cloud.size() > config.point_cap) {
        throw CapExceeded("point count " + std::to_string(cloud.size()) + " exceeds cap " +
                          std::to_string(config.point_cap));
      }
      const DistanceMatrix d = lp_distance_matrix(cloud, config.workers);
      for (std::size_t i = 0; i < d.size(); ++i) {
        in.table.emplace_back(d.row(i).begin(), d.row(i).end());
      }
      break;
    }
    case InputKind::Generator: {
      DistanceMatrix d;
      try {
        d = generate(config.generator, config.point_cap);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("generator: ") + e.what());
      }
      for (std::size_t i = 0; i < d.size(); ++i) {
        in.table.emplace_back(d.row(i).begin(), d.row(i).end());
      }
      in.labels = d.labels();
      break;
    }
  }
  return in;
}

SpaceReport run(const RunConfig& config) {
  check_config(config);
  const auto start = std::chrono::steady_clock::now();
  LoadedInput in = load_input(config);
  const double load_seconds = seconds_since(start);

  const auto vstart = std::chrono::steady_clock::now();
  ValidationOptions vopt;
  vopt.rel_tolerance = config.rel_tolerance;
  vopt.allow_pseudometric = config.allow_pseudometric;
  vopt.point_cap = config.point_cap;
  ValidationResult v;
  try {
    v = validate_metric(in.table, vopt, in.labels);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const double validate_seconds = seconds_since(vstart);

  SpaceReport rep;
  if (v.ok()) {
    rep = run_on_matrix(config, *v.metric);
    rep.validation.merged_points = in.table.size() - v.metric->size();
  } else {
    rep.config = config;
    rep.points = in.table.size();
    rep.labels = in.labels;
    rep.status = 2;
    rep.timings["workers"] = config.workers;
  }
  rep.validation.ok = v.ok();
  rep.validation.violation_count = v.violations.size();
  const std::size_t shown = std::min(v.violations.size(), kMaxReportedViolations);
  rep.validation.violations.assign(v.violations.begin(), v.violations.begin() + static_cast<std::ptrdiff_t>(shown));
  rep.timings["load_seconds"] = load_seconds;
  rep.timings["validate_seconds"] = validate_seconds;
  rep.timings["total_seconds"] = seconds_since(start);
  return rep;
}

SpaceReport run_on_matrix(const RunConfig& config, const DistanceMatrix& d) {
  check_config(config);
  SpaceReport rep;
  rep.config = config;
  rep.points = d.size();
  rep.labels = d.labels();
  rep.validation.ok = true;
  rep.timings["workers"] = config.workers;

  CurvatureTolerances tol;
  tol.compare_rel = config.compare_tolerance;
  tol.degenerate_rel = config.degenerate_tolerance;

  if (config.run_curvature && d.size() >= 3) {
    const auto t0 = std::chrono::steady_clock::now();
    SamplingPlan plan;
    plan.exhaustive_threshold = config.triple_exhaustive_threshold;
    plan.sample_size = config.triple_sample_size;
    plan.seed = mix_seed(config.seed, 0);
    plan.workers = config.workers;
    rep.scan = scan_triples(d, plan, tol);
    rep.timings["curvature_seconds"] = seconds_since(t0);
  }
  if (config.run_hyperbolicity) {
    const auto t0 = std::chrono::steady_clock::now();
    SamplingPlan plan;
    plan.exhaustive_threshold = config.quadruple_exhaustive_threshold;
    plan.sample_size = config.quadruple_sample_size;
    plan.seed = mix_seed(config.seed, 1);
    plan.workers = config.workers;
    rep.delta = four_point_delta(d, plan, config.top_k);
    rep.timings["hyperbolicity_seconds"] = seconds_since(t0);
  }
  if (config.run_expansion && d.size() >= 2) {
    const auto t0 = std::chrono::steady_clock::now();
    ExpansionOptions opt;
    opt.trials = config.expansion_trials;
    opt.k_max = config.expansion_k_max;
    opt.seed = mix_seed(config.seed, 2);
    opt.include_pairs = config.expansion_include_pairs;
    opt.exhaustive_threshold = config.triple_exhaustive_threshold;
    opt.sample_size = config.triple_sample_size;
    opt.workers = config.workers;
    rep.expansion = expansion_constant_estimate(d, opt);
    rep.timings["expansion_seconds"] = seconds_since(t0);
  }
  if (config.run_nerve) {
    const auto t0 = std::chrono::steady_clock::now();
    NerveOptions opt;
    opt.dim_cap = config.dim_cap;
    opt.rel_tolerance = config.rel_tolerance;
    opt.simplex_cap = config.simplex_cap;
    for (double radius : config.nerve_radii) {
      NerveResult nr;
      nr.radius = radius;
      try {
        const NerveComplex nerve = build_nerve(d, std::vector<double>(d.size(), radius), opt);
        for (std::size_t q = 0; q <= nerve.dim_cap; ++q) nr.simplex_counts.push_back(nerve.count(q));
        nr.betti = betti_mod2(nerve, nerve.dim_cap - 1);
        nr.euler_characteristic = nerve.euler_characteristic();
        nr.helly = helly_defects(nerve, config.helly_k_max);
        if (config.nerve_export) nr.complex = nerve;
      } catch (const CapExceeded& e) {
        nr.error = e.what();
      }
      rep.nerves.push_back(std::move(nr));
    }
    rep.timings["nerve_seconds"] = seconds_since(t0);
  }
  return rep;
}

namespace {

json labels_of(const SpaceReport& rep, const auto& indices) {
  json out = json::array();
  for (auto i : indices) out.push_back(rep.labels.empty() ? std::to_string(i) : rep.labels[i]);
  return out;
}

}  // namespace

json report_to_json(const SpaceReport& rep) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_to_json(rep.config);
  j["status"] = rep.status;
  j["space"] = {{"points", rep.points}, {"labels", rep.labels}};

  json violations = json::array();
  for (const auto& v : rep.validation.violations) {
    violations.push_back({{"kind", to_string(v.kind)},
                          {"i", v.i},
                          {"j", v.j},
                          {"k", v.k},
                          {"defect", v.defect}});
  }
  j["validation"] = {{"ok", rep.validation.ok},
                     {"violation_count", rep.validation.violation_count},
                     {"violations", violations},
                     {"merged_points", rep.validation.merged_points}};

  if (rep.scan) {
    const ScanSummary& s = rep.scan->summary;
    std::string coverage = s.exhaustive ? "all " + std::to_string(s.total_triples) + " triples"
                                        : "sampled " + std::to_string(s.count) + " of " +
                                              std::to_string(s.total_triples) + " triples";
    j["curvature"] = {
        {"count", s.count},
        {"total_triples", s.total_triples},
        {"exhaustive", s.exhaustive},
        {"coverage", coverage},
        {"nonpositive", s.nonpositive},
        {"positive", s.positive},
        {"degenerate", s.degenerate},
        {"fraction_nonpositive", s.fraction_nonpositive},
        {"max_rho_minus_rho_bar", s.max_excess},
        {"mean_rho_minus_rho_bar", s.mean_excess},
        {"rho_min", s.rho_min},
        {"rho_max", s.rho_max},
        {"warnings", s.warnings},
        {"notes",
         {"verdict 'positive' only records rho > rho_bar; it is a tool label, the curvature "
          "condition itself is rho <= rho_bar",
          "witnesses are restricted to points of the input space"}}};
  }
  if (rep.delta) {
    const DeltaReport& dr = *rep.delta;
    json top = json::array();
    for (const auto& q : dr.top) {
      top.push_back({{"indices", q.indices}, {"labels", labels_of(rep, q.indices)}, {"defect", q.defect}});
    }
    j["hyperbolicity"] = {{"delta", dr.delta},
                          {"witness_quadruple", dr.witness_quadruple},
                          {"witness_labels", labels_of(rep, dr.witness_quadruple)},
                          {"quadruples_checked", dr.quadruples_checked},
                          {"exhaustive", dr.exhaustive},
                          {"top", top}};
  }
  if (rep.expansion) {
    const ExpansionEstimate& e = *rep.expansion;
    json system = json::array();
    for (const auto& b : e.worst_system.members) {
      system.push_back({{"center", b.center},
                        {"label", rep.labels.empty() ? std::to_string(b.center) : rep.labels[b.center]},
                        {"radius", b.radius}});
    }
    j["expansion"] = {{"lower_bound", e.lower_bound},
                      {"bound_kind", "lower"},
                      {"worst_system", system},
                      {"witness", e.witness},
                      {"systems_checked", e.systems_checked},
                      {"exhaustive_canonical", e.exhaustive_canonical}};
  }
  if (rep.config.run_nerve) {
    json nerves = json::array();
    for (const auto& nr : rep.nerves) {
      json n = {{"radius", nr.radius}, {"witness_in_sample", true}};
      if (!nr.error.empty()) {
        n["error"] = nr.error;
      } else {
        json helly = json::array();
        for (const auto& h : nr.helly) helly.push_back(h.vertices);
        n["simplex_counts"] = nr.simplex_counts;
        n["betti_mod2"] = nr.betti;
        n["euler_characteristic"] = nr.euler_characteristic;
        n["helly_defects"] = helly;
        if (nr.complex) n["complex"] = nerve_to_json(*nr.complex, nr.betti);
        n["helly_statement"] =
            nr.helly.empty()
                ? "no Helly defect found up to size " + std::to_string(rep.config.helly_k_max)
                : std::to_string(nr.helly.size()) + " Helly defect(s) up to size " +
                      std::to_string(rep.config.helly_k_max);
      }
      nerves.push_back(std::move(n));
    }
    j["nerve"] = nerves;
  }
  j["timings"] = rep.timings;
  return j;
}

json nerve_to_json(const NerveComplex& nerve, const std::vector<std::size_t>& betti) {
  json vertices = json::array();
  for (std::size_t v = 0; v < nerve.vertex_count(); ++v) {
    vertices.push_back({{"center", nerve.centers[v]}, {"radius", nerve.radii[v]}});
  }
  json simplices = json::array();
  for (std::size_t q = 0; q < nerve.simplices.size(); ++q) {
    json level = json::array();
    for (std::size_t s = 0; s < nerve.simplices[q].size(); ++s) {
      level.push_back({{"vertices", nerve.simplices[q][s]}, {"witness", nerve.witnesses[q][s]}});
    }
    simplices.push_back(std::move(level));
  }
  return {{"vertices", vertices},
          {"dim_cap", nerve.dim_cap},
          {"simplices", simplices},
          {"betti_mod2", betti}};
}

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "rho-histogram") return PlotKind::RhoHistogram;
  if (name == "rho-vs-rhobar") return PlotKind::RhoVsRhoBar;
  if (name == "delta-quadruple-topk") return PlotKind::DeltaQuadrupleTopK;
  throw std::invalid_argument("unknown plot kind '" + name + "'");
}

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::RhoHistogram: return "rho-histogram";
    case PlotKind::RhoVsRhoBar: return "rho-vs-rhobar";
    case PlotKind::DeltaQuadrupleTopK: return "delta-quadruple-topk";
  }
  return "unknown";
}

std::string emit_plot_data(const SpaceReport& report, PlotKind which) {
  std::ostringstream out;
  switch (which) {
    case PlotKind::RhoHistogram: {
      if (!report.scan) throw std::invalid_argument("report has no curvature section");
      const double w = report.config.histogram_bin_width;
      std::map<long, std::size_t> bins;
      for (const auto& t : report.scan->triples) {
        if (t.verdict == Verdict::Degenerate) continue;
        const double offset = std::max(0.0, t.rho - 1.0);
        ++bins[static_cast<long>(std::floor(offset / w))];
      }
      out << "bin_lower,bin_upper,count\n";
      for (const auto& [k, count] : bins) {
        out << format_double(1.0 + static_cast<double>(k) * w) << ','
            << format_double(1.0 + static_cast<double>(k + 1) * w) << ',' << count << '\n';
      }
      break;
    }
    case PlotKind::RhoVsRhoBar: {
      if (!report.scan) throw std::invalid_argument("report has no curvature section");
      out << "i,j,k,rho,rho_bar\n";
      for (const auto& t : report.scan->triples) {
        if (t.verdict == Verdict::Degenerate) continue;
        out << t.indices[0] << ',' << t.indices[1] << ',' << t.indices[2] << ','
            << format_double(t.rho) << ',' << format_double(t.rho_bar) << '\n';
      }
      break;
    }
    case PlotKind::DeltaQuadrupleTopK: {
      if (!report.delta) throw std::invalid_argument("report has no hyperbolicity section");
      out << "i,j,k,l,defect\n";
      for (const auto& q : report.delta->top) {
        out << q.indices[0] << ',' << q.indices[1] << ',' << q.indices[2] << ',' << q.indices[3]
            << ',' << format_double(q.defect) << '\n';
      }
      break;
    }
  }
  return out.str();
}

std::string triples_csv(const SpaceReport& report) {
  if (!report.scan) throw std::invalid_argument("report has no curvature section");
  auto label = [&](std::size_t i) {
    return report.labels.empty() ? std::to_string(i) : report.labels[i];
  };
  std::ostringstream out;
  out << "i,j,k,label_i,label_j,label_k,r1,r2,r3,rho,witness,witness_label,rho_bar,verdict,"
         "tripod_defect,tripod_witness\n";
  for (const auto& t : report.scan->triples) {
    const auto [i, j, k] = t.indices;
    out << i << ',' << j << ',' << k << ',' << label(i) << ',' << label(j) << ',' << label(k)
        << ',' << format_double(t.radii.r1) << ',' << format_double(t.radii.r2) << ','
        << format_double(t.radii.r3) << ',' << format_double(t.rho) << ',' << t.witness << ','
        << label(t.witness) << ',' << format_double(t.rho_bar) << ',' << to_string(t.verdict)
        << ',' << format_double(t.tripod_defect) << ',' << t.tripod_witness << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace

void write_outputs(const SpaceReport& report) {
  const RunConfig& c = report.config;
  const std::string body = report_to_json(report).dump(2) + "\n";
  // Render everything before touching the filesystem.
  std::vector<std::pair<std::string, std::string>> files;
  if (!c.triples_csv_path.empty() && report.scan) files.emplace_back(c.triples_csv_path, triples_csv(report));
  if (!c.plot_dir.empty()) {
    std::filesystem::create_directories(c.plot_dir);
    for (PlotKind kind : {PlotKind::RhoHistogram, PlotKind::RhoVsRhoBar, PlotKind::DeltaQuadrupleTopK}) {
      if ((kind == PlotKind::DeltaQuadrupleTopK && !report.delta) ||
          (kind != PlotKind::DeltaQuadrupleTopK && !report.scan)) {
        continue;
      }
      files.emplace_back((std::filesystem::path(c.plot_dir) / (std::string(to_string(kind)) + ".csv")).string(),
                         emit_plot_data(report, kind));
    }
  }
  for (const auto& [path, content] : files) write_file(path, content);
  if (c.report_path.empty()) {
    std::cout << body;
  } else {
    write_file(c.report_path, body);
  }
}

}  // namespace ballcurv
