#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ballcurv/comparison.hpp"
#include "ballcurv/csv.hpp"
#include "ballcurv/curvature.hpp"
#include "ballcurv/generators.hpp"
#include "ballcurv/hyperbolicity.hpp"
#include "ballcurv/metric.hpp"
#include "ballcurv/nerve.hpp"
#include "ballcurv/report.hpp"

namespace py = pybind11;
using namespace ballcurv;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<std::vector<double>> to_table(const Array& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto r = a.unchecked<2>();
  std::vector<std::vector<double>> t(static_cast<std::size_t>(r.shape(0)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) {
    t[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(r.shape(1)));
    for (py::ssize_t j = 0; j < r.shape(1); ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r(i, j);
  }
  return t;
}

// Validated metric; a failed validation becomes ValueError listing the
// first few violations.
DistanceMatrix make_metric(const Array& a, std::vector<std::string> labels, double rel_tolerance,
                           bool allow_pseudometric, std::size_t point_cap) {
  ValidationOptions opt;
  opt.rel_tolerance = rel_tolerance;
  opt.allow_pseudometric = allow_pseudometric;
  opt.point_cap = point_cap;
  ValidationResult v = validate_metric(to_table(a), opt, std::move(labels));
  if (v.ok()) return std::move(*v.metric);
  std::string msg = "not a metric: " + std::to_string(v.violations.size()) + " violation(s)";
  for (std::size_t n = 0; n < v.violations.size() && n < 5; ++n) {
    const Violation& x = v.violations[n];
    msg += "; " + std::string(to_string(x.kind)) + " at (" + std::to_string(x.i) + "," +
           std::to_string(x.j) + "," + std::to_string(x.k) + ")";
  }
  throw py::value_error(msg);
}

Array to_numpy(const DistanceMatrix& d) {
  const auto n = static_cast<py::ssize_t>(d.size());
  Array out({n, n});
  std::copy(d.entries().begin(), d.entries().end(), out.mutable_data());
  return out;
}

py::dict triple_dict(const TripleReport& t) {
  py::dict r;
  r["triple"] = t.indices;
  r["radii"] = t.radii.values();
  r["rho"] = t.rho;
  r["witness"] = t.witness;
  r["rho_bar"] = t.rho_bar;
  r["verdict"] = to_string(t.verdict);
  r["tripod_defect"] = t.tripod_defect;
  r["tripod_witness"] = t.tripod_witness;
  return r;
}

}  // namespace

PYBIND11_MODULE(_ballcurv, m) {
  m.doc() = "Ball-intersection curvature and hyperbolicity of finite metric spaces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<DistanceMatrix>(m, "DistanceMatrix")
      .def(py::init(&make_metric), py::arg("table"), py::arg("labels") = std::vector<std::string>{},
           py::arg("rel_tolerance") = kDefaultRelTolerance, py::arg("allow_pseudometric") = false,
           py::arg("point_cap") = kDefaultPointCap)
      .def_property_readonly("size", &DistanceMatrix::size)
      .def_property_readonly("diameter", &DistanceMatrix::diameter)
      .def_property_readonly("labels", &DistanceMatrix::labels)
      .def("__len__", &DistanceMatrix::size)
      .def("__getitem__",
           [](const DistanceMatrix& d, std::pair<std::size_t, std::size_t> ij) {
             if (ij.first >= d.size() || ij.second >= d.size()) throw py::index_error();
             return d(ij.first, ij.second);
           })
      .def("to_numpy", &to_numpy)
      .def("scaled", &DistanceMatrix::scaled, py::arg("factor"))
      .def("restricted",
           [](const DistanceMatrix& d, const std::vector<std::size_t>& points) {
             for (std::size_t p : points)
               if (p >= d.size()) throw py::index_error();
             return d.restricted(points);
           },
           py::arg("points"));

  m.def(
      "from_points",
      [](const Array& coords, double p) {
        if (coords.ndim() != 2) throw std::invalid_argument("expected an (n, dim) array");
        const auto dim = static_cast<std::size_t>(coords.shape(1));
        std::vector<double> flat(coords.data(), coords.data() + coords.size());
        return lp_distance_matrix(PointCloud(dim, std::move(flat), MetricExponent{p}));
      },
      py::arg("coords"), py::arg("p") = 2.0, "Minkowski distance matrix; p may be inf.");

  m.def(
      "_generate",
      [](const std::string& spec, std::size_t point_cap) {
        return generate(generator_from_json(nlohmann::json::parse(spec)), point_cap);
      },
      py::arg("spec"), py::arg("point_cap") = kDefaultPointCap);

  m.def(
      "gromov_products",
      [](const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
        return gromov_products(d, i, j, k).values();
      },
      py::arg("d"), py::arg("i"), py::arg("j"), py::arg("k"));

  m.def(
      "rho",
      [](const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
        const Witnessed w = rho_discrete(d, i, j, k);
        return py::make_tuple(w.value, w.witness);
      },
      py::arg("d"), py::arg("i"), py::arg("j"), py::arg("k"), "(value, smallest witness index)");

  m.def(
      "rho_bar",
      [](double d12, double d13, double d23) {
        const MinimaxResult r = rho_bar(build_comparison(d12, d13, d23), gromov_radii(d12, d13, d23));
        return py::make_tuple(r.rho_bar, py::make_tuple(r.center.x, r.center.y), r.active_set);
      },
      py::arg("d12"), py::arg("d13"), py::arg("d23"),
      "(value, minimax center, active vertices) on the comparison triangle.");

  m.def(
      "tripod_defect",
      [](const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
        const Witnessed w = tripod_defect(d, i, j, k);
        return py::make_tuple(w.value, w.witness);
      },
      py::arg("d"), py::arg("i"), py::arg("j"), py::arg("k"));

  m.def(
      "evaluate_triple",
      [](const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k) {
        return triple_dict(evaluate_triple(d, i, j, k));
      },
      py::arg("d"), py::arg("i"), py::arg("j"), py::arg("k"));

  m.def(
      "scan_triples",
      [](const DistanceMatrix& d, std::size_t exhaustive_threshold, std::size_t sample_size,
         std::uint64_t seed, unsigned workers) {
        SamplingPlan plan{exhaustive_threshold, sample_size, seed, workers};
        TripleScan scan;
        {
          py::gil_scoped_release release;
          scan = scan_triples(d, plan);
        }
        py::list triples;
        for (const TripleReport& t : scan.triples) triples.append(triple_dict(t));
        py::dict s;
        s["count"] = scan.summary.count;
        s["exhaustive"] = scan.summary.exhaustive;
        s["nonpositive"] = scan.summary.nonpositive;
        s["positive"] = scan.summary.positive;
        s["degenerate"] = scan.summary.degenerate;
        s["fraction_nonpositive"] = scan.summary.fraction_nonpositive;
        s["max_excess"] = scan.summary.max_excess;
        py::dict r;
        r["triples"] = triples;
        r["summary"] = s;
        return r;
      },
      py::arg("d"), py::arg("exhaustive_threshold") = 60, py::arg("sample_size") = 2000,
      py::arg("seed") = 0, py::arg("workers") = 1);

  m.def(
      "four_point_delta",
      [](const DistanceMatrix& d, std::size_t exhaustive_threshold, std::size_t sample_size,
         std::uint64_t seed, std::size_t top_k, unsigned workers) {
        SamplingPlan plan{exhaustive_threshold, sample_size, seed, workers};
        DeltaReport rep;
        {
          py::gil_scoped_release release;
          rep = four_point_delta(d, plan, top_k);
        }
        py::list top;
        for (const QuadrupleDefect& q : rep.top) top.append(py::make_tuple(q.indices, q.defect));
        py::dict r;
        r["delta"] = rep.delta;
        r["witness_quadruple"] = rep.witness_quadruple;
        r["quadruples_checked"] = rep.quadruples_checked;
        r["exhaustive"] = rep.exhaustive;
        r["top"] = top;
        return r;
      },
      py::arg("d"), py::arg("exhaustive_threshold") = kQuadrupleExhaustiveThreshold,
      py::arg("sample_size") = 20000, py::arg("seed") = 0, py::arg("top_k") = 10,
      py::arg("workers") = 1);

  m.def(
      "quad_inequality_defect_max",
      [](const DistanceMatrix& d, std::array<std::size_t, 4> q) { return quad_inequality_defect_max(d, q); },
      py::arg("d"), py::arg("quadruple"));

  m.def(
      "_nerve",
      [](const DistanceMatrix& d, const std::vector<double>& radii, std::vector<std::size_t> centers,
         std::size_t dim_cap, std::size_t helly_k_max, std::size_t simplex_cap) {
        NerveOptions opt;
        opt.dim_cap = dim_cap;
        opt.simplex_cap = simplex_cap;
        if (centers.empty()) {
          centers.resize(d.size());
          for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = i;
        }
        const NerveComplex nerve = build_nerve(d, centers, radii, opt);
        nlohmann::json j = nerve_to_json(nerve, betti_mod2(nerve, dim_cap - 1));
        nlohmann::json defects = nlohmann::json::array();
        for (const HellyDefect& h : helly_defects(nerve, helly_k_max)) defects.push_back(h.vertices);
        j["helly_defects"] = defects;
        j["euler_characteristic"] = nerve.euler_characteristic();
        return j.dump();
      },
      py::arg("d"), py::arg("radii"), py::arg("centers") = std::vector<std::size_t>{},
      py::arg("dim_cap") = kDefaultDimCap, py::arg("helly_k_max") = 3,
      py::arg("simplex_cap") = kDefaultSimplexCap);

  m.def(
      "_run",
      [](const std::string& config) {
        const RunConfig cfg = config_from_json(nlohmann::json::parse(config));
        SpaceReport rep;
        {
          py::gil_scoped_release release;
          rep = run(cfg);
        }
        return report_to_json(rep).dump();
      },
      py::arg("config"));

  m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
