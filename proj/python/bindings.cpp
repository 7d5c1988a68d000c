#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "pitchkde/bandwidth.hpp"
#include "pitchkde/grid_io.hpp"
#include "pitchkde/ingest.hpp"
#include "pitchkde/json_codec.hpp"
#include "pitchkde/pipeline.hpp"
#include "pitchkde/render.hpp"
#include "pitchkde/synthgen.hpp"
#include "pitchkde/transport.hpp"

namespace py = pybind11;
using namespace pitchkde;

namespace {

Vec2 to_vec2(std::pair<double, double> p) { return {p.first, p.second}; }

std::vector<Vec2> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (auto [x, y] : pts) out.push_back({x, y});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shared-bandwidth pitch KDEs compared with Wasserstein distances";

  py::register_exception<Error>(m, "PitchkdeError");

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double x_min, double x_max, double y_min, double y_max,
                       double cell_size) {
             GridSpec s{x_min, x_max, y_min, y_max, cell_size};
             s.validate();
             return s;
           }),
           py::arg("x_min"), py::arg("x_max"), py::arg("y_min"),
           py::arg("y_max"), py::arg("cell_size"))
      .def_readonly("x_min", &GridSpec::x_min)
      .def_readonly("x_max", &GridSpec::x_max)
      .def_readonly("y_min", &GridSpec::y_min)
      .def_readonly("y_max", &GridSpec::y_max)
      .def_readonly("cell_size", &GridSpec::cell_size)
      .def_property_readonly("rows", &GridSpec::rows)
      .def_property_readonly("cols", &GridSpec::cols);

  py::class_<DensityGrid>(m, "DensityGrid")
      .def_property_readonly("spec", &DensityGrid::spec)
      .def_property_readonly("rows", &DensityGrid::rows)
      .def_property_readonly("cols", &DensityGrid::cols)
      .def_property_readonly("values", &DensityGrid::values)
      .def("at", &DensityGrid::at, py::arg("row"), py::arg("col"))
      .def("integral", &DensityGrid::integral)
      .def("to_json", &grid_to_json);

  m.def("grid_from_json", &grid_from_json, py::arg("text"));
  m.def("default_render_grid", &default_render_grid);
  m.def("default_transport_grid", &default_transport_grid);

  py::class_<DensityModel>(m, "DensityModel")
      .def(py::init([](const std::vector<std::pair<double, double>>& pts,
                       double h, const std::string& label) {
             return DensityModel(SampleSet(to_points(pts), label),
                                 Bandwidth(h));
           }),
           py::arg("points"), py::arg("bandwidth"), py::arg("label") = "")
      .def_property_readonly(
          "bandwidth",
          [](const DensityModel& m_) { return m_.bandwidth().value(); })
      .def("density_at",
           [](const DensityModel& m_, double x, double y) {
             return m_.density_at({x, y});
           },
           py::arg("x"), py::arg("y"))
      .def("log_density_at",
           [](const DensityModel& m_, double x, double y) {
             return m_.log_density_at({x, y});
           },
           py::arg("x"), py::arg("y"))
      .def("evaluate_grid", &DensityModel::evaluate_grid, py::arg("spec"));

  m.def("kernel_value",
        [](std::pair<double, double> delta, double h) {
          return kernel_value(to_vec2(delta), Bandwidth(h));
        },
        py::arg("delta"), py::arg("h"));

  m.def("cv_score",
        [](const std::vector<std::pair<double, double>>& pts, double h,
           int folds, std::uint64_t seed, bool shuffle) {
          return cv_score(SampleSet(to_points(pts), ""), Bandwidth(h),
                          CvConfig{folds, seed, shuffle});
        },
        py::arg("points"), py::arg("h"), py::arg("folds") = 10,
        py::arg("seed") = 0, py::arg("shuffle") = true);

  m.def("select_bandwidth",
        [](const std::vector<std::pair<double, double>>& pts,
           const std::vector<double>& candidates, int folds,
           std::uint64_t seed, bool shuffle) {
          CandidateGrid grid;
          grid.values = candidates;
          return select_bandwidth(SampleSet(to_points(pts), ""), grid,
                                  CvConfig{folds, seed, shuffle})
              .value();
        },
        py::arg("points"), py::arg("candidates"), py::arg("folds") = 10,
        py::arg("seed") = 0, py::arg("shuffle") = true);

  m.def("default_candidate_grid",
        []() { return CandidateGrid::default_grid().values; });

  m.def("pool_geometric_mean", [](const std::vector<double>& hs) {
    std::vector<Bandwidth> bws;
    bws.reserve(hs.size());
    for (double h : hs) bws.emplace_back(h);
    return pool_geometric_mean(bws).value();
  });

  py::class_<DiscreteDistribution>(m, "DiscreteDistribution")
      .def(py::init([](const std::vector<std::pair<double, double>>& support,
                       const std::vector<double>& mass) {
             return DiscreteDistribution(to_points(support), mass);
           }),
           py::arg("support"), py::arg("mass"))
      .def_property_readonly("mass", &DiscreteDistribution::mass)
      .def_property_readonly("support", [](const DiscreteDistribution& d) {
        std::vector<std::pair<double, double>> out;
        out.reserve(d.size());
        for (const Vec2& p : d.support()) out.emplace_back(p.x, p.y);
        return out;
      });

  m.def("discretize", &discretize, py::arg("grid"),
        py::arg("mass_floor") = 1e-10);

  m.def("ground_cost",
        [](std::pair<double, double> a, std::pair<double, double> b, double p,
           double norm_order) {
          return ground_cost(to_vec2(a), to_vec2(b), CostSpec{p, norm_order});
        },
        py::arg("a"), py::arg("b"), py::arg("p") = 1.0,
        py::arg("norm_order") = 1.0);

  m.def("wasserstein_exact",
        [](const DiscreteDistribution& mu, const DiscreteDistribution& nu,
           double p, double norm_order) {
          const ExactResult r =
              wasserstein_exact(mu, nu, CostSpec{p, norm_order});
          std::vector<std::tuple<int, int, double>> plan;
          plan.reserve(r.plan.flows.size());
          for (const auto& f : r.plan.flows)
            plan.emplace_back(f.from, f.to, f.mass);
          return py::make_tuple(r.distance, plan);
        },
        py::arg("mu"), py::arg("nu"), py::arg("p") = 1.0,
        py::arg("norm_order") = 1.0);

  m.def("wasserstein_sinkhorn",
        [](const DiscreteDistribution& mu, const DiscreteDistribution& nu,
           double epsilon, double p, double norm_order, int max_iters,
           double tol) {
          const SinkhornResult r = wasserstein_sinkhorn(
              mu, nu, CostSpec{p, norm_order}, epsilon, max_iters, tol);
          py::dict out;
          out["distance"] = r.distance;
          out["converged"] = r.converged;
          out["iterations"] = r.iterations;
          out["marginal_error"] = r.marginal_error;
          return out;
        },
        py::arg("mu"), py::arg("nu"), py::arg("epsilon"), py::arg("p") = 1.0,
        py::arg("norm_order") = 1.0, py::arg("max_iters") = 5000,
        py::arg("tol") = 1e-9);

  m.def("generate_season_csv",
        [](const std::string& config_json) {
          const SeasonConfig cfg =
              season_config_from_json(nlohmann::json::parse(config_json));
          return events_to_csv(generate_season(cfg));
        },
        py::arg("config_json"));

  m.def("run_analysis",
        [](const std::string& config_json) {
          const AnalysisConfig cfg =
              analysis_config_from_json(nlohmann::json::parse(config_json));
          const RunArtifacts artifacts = run_analysis(cfg);
          py::dict out;
          out["report_json"] = artifacts.report_json;
          out["manifest_json"] = artifacts.manifest_json;
          out["pooled_bandwidth"] = artifacts.report.pooled_bandwidth;
          out["distance_count"] = artifacts.report.distance_count();
          out["warnings"] = artifacts.warnings;
          return out;
        },
        py::arg("config_json"));

  m.def("difference_grid", &difference_grid, py::arg("a"), py::arg("b"));

  m.def("render_heatmap",
        [](const DensityGrid& grid) {
          return py::bytes(
              render_heatmap(grid, ColorMap::default_sequential()));
        },
        py::arg("grid"));

  m.def("render_diff",
        [](const DensityGrid& diff) {
          return py::bytes(render_diff(diff, ColorMap::default_diverging()));
        },
        py::arg("diff"));
}
