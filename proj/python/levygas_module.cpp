#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levygas/checks.hpp"
#include "levygas/config.hpp"
#include "levygas/ensemble.hpp"
#include "levygas/heavy_tail.hpp"
#include "levygas/limit.hpp"
#include "levygas/medium.hpp"
#include "levygas/rng.hpp"
#include "levygas/stats.hpp"
#include "levygas/walker.hpp"

namespace py = pybind11;
using namespace levygas;

namespace {

std::vector<double> sample_gaps(const GapDistribution& dist, std::uint64_t seed,
                                std::uint64_t index, std::size_t n) {
  RngStream rng(seed, Purpose::scratch, index);
  std::vector<double> out(n);
  for (auto& v : out) v = sample_gap(dist, rng);
  return out;
}

std::vector<double> sample_stables(const StableCalibration& cal, std::uint64_t seed,
                                   std::uint64_t index, std::size_t n) {
  RngStream rng(seed, Purpose::scratch, index);
  std::vector<double> out(n);
  for (auto& v : out) v = sample_one_sided_stable(cal, rng);
  return out;
}

WalkPath sample_walk_py(const WalkSpec& spec, std::int64_t n, std::uint64_t seed,
                        std::uint64_t index) {
  RngStream rng(seed, Purpose::walk, index);
  return sample_walk(spec, n, rng);
}

std::vector<double> composite_limit_py(const CompositeLimitParams& params,
                                       const std::vector<double>& s_points,
                                       std::uint64_t seed, std::uint64_t index) {
  RngStream bm(seed, Purpose::brownian, index);
  RngStream zp(seed, Purpose::sub_plus, index);
  RngStream zm(seed, Purpose::sub_minus, index);
  return composite_limit_sample(params, s_points, bm, zp, zm);
}

KSProcessSample draw_ks_process(double v_xi, double mu_xi, const StableCalibration& cal,
                                const std::vector<double>& times, double dt, double dx,
                                std::uint64_t seed, std::uint64_t index) {
  RngStream bm(seed, Purpose::brownian, index);
  RngStream zp(seed, Purpose::sub_plus, index);
  RngStream zm(seed, Purpose::sub_minus, index);
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, t);
  BrownianPath bp = sample_brownian(v_xi, t_max, dt, bm);
  LocalTimeField ltf = local_time_field(bp, dx, times);
  SubordinatorField sub = sample_subordinator_field(cal, ltf, zp, zm);
  return ks_process(ltf, sub, mu_xi);
}

}  // namespace

PYBIND11_MODULE(levygas_py, m) {
  m.doc() = "Monte Carlo simulator for continuous-time random walks between "
            "heavy-tailed targets on the real line";

  py::class_<GapDistribution>(m, "GapDistribution")
      .def_static("pareto", &GapDistribution::pareto, py::arg("alpha"),
                  py::arg("x_min") = 1.0)
      .def_property_readonly("alpha", &GapDistribution::alpha)
      .def_property_readonly("x_min", &GapDistribution::x_min)
      .def_property_readonly("c0", &GapDistribution::c0)
      .def("quantile_from_tail", &GapDistribution::quantile_from_tail);

  py::class_<StableCalibration>(m, "StableCalibration")
      .def_readonly("alpha", &StableCalibration::alpha)
      .def_readonly("scale", &StableCalibration::scale)
      .def_readonly("c1", &StableCalibration::c1);

  py::class_<CalibrationResult>(m, "CalibrationResult")
      .def_readonly("cal", &CalibrationResult::cal)
      .def_readonly("ks_distance", &CalibrationResult::ks_distance)
      .def_readonly("n_block", &CalibrationResult::n_block)
      .def_readonly("n_samples", &CalibrationResult::n_samples);

  m.def("make_stable_calibration", &make_stable_calibration, py::arg("alpha"),
        py::arg("scale"), py::arg("c0"));
  m.def("stable_c1", &stable_c1, py::arg("alpha"), py::arg("c0"));
  m.def("calibrate_stable_scale", &calibrate_stable_scale, py::arg("dist"),
        py::arg("n_block"), py::arg("n_samples"), py::arg("master_seed"),
        py::arg("ks_ceiling") = 0.05);
  m.def("sample_gaps", &sample_gaps, py::arg("dist"), py::arg("seed"),
        py::arg("index"), py::arg("n"));
  m.def("sample_stables", &sample_stables, py::arg("cal"), py::arg("seed"),
        py::arg("index"), py::arg("n"));

  py::class_<Environment>(m, "Environment")
      .def(py::init<GapDistribution, std::uint64_t>(), py::arg("dist"), py::arg("seed"))
      .def_static("from_gaps", &Environment::from_gaps, py::arg("right"),
                  py::arg("left"))
      .def("target", &Environment::target)
      .def("gap", &Environment::gap);

  py::class_<WalkSpec>(m, "WalkSpec")
      .def_static("simple_symmetric", &WalkSpec::simple_symmetric)
      .def_static("from_pmf", &WalkSpec::from_pmf)
      .def_property_readonly("v_xi", &WalkSpec::v_xi)
      .def_property_readonly("mu_xi", &WalkSpec::mu_xi);

  py::class_<WalkPath>(m, "WalkPath")
      .def_readonly("steps", &WalkPath::steps)
      .def_property_readonly("n", &WalkPath::n);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("s", &Trajectory::s)
      .def_readonly("y", &Trajectory::y)
      .def_readonly("t", &Trajectory::t)
      .def_property_readonly("horizon", &Trajectory::horizon);

  py::class_<LocalTimeProfile>(m, "LocalTimeProfile")
      .def_readonly("site", &LocalTimeProfile::site)
      .def_readonly("bond", &LocalTimeProfile::bond)
      .def_readonly("bond_minus", &LocalTimeProfile::bond_minus)
      .def_readonly("bond_plus", &LocalTimeProfile::bond_plus)
      .def_readonly("range", &LocalTimeProfile::range)
      .def_readonly("self_intersection", &LocalTimeProfile::self_intersection);

  m.def("sample_walk", &sample_walk_py, py::arg("spec"), py::arg("n"), py::arg("seed"),
        py::arg("index") = 0);
  m.def("run_trajectory", &run_trajectory, py::arg("env"), py::arg("path"));
  m.def("position_at", &position_at, py::arg("trajectory"), py::arg("time"));
  m.def("local_time_profile", &local_time_profile, py::arg("path"));
  m.def("scenery_collision_time", &scenery_collision_time, py::arg("env"),
        py::arg("profile"));
  m.def("rwrs_sum", &rwrs_sum, py::arg("env"), py::arg("path"), py::arg("m"));

  py::class_<KSProcessSample>(m, "KSProcessSample")
      .def_readonly("times", &KSProcessSample::times)
      .def_readonly("delta", &KSProcessSample::delta);

  py::class_<CompositeLimitParams>(m, "CompositeLimitParams")
      .def(py::init([](double v_xi, double mu_xi, const StableCalibration& cal,
                       double dt_over_tmax, double dx) {
             return CompositeLimitParams{v_xi, mu_xi, cal, dt_over_tmax, dx, 0.0, 5};
           }),
           py::arg("v_xi"), py::arg("mu_xi"), py::arg("cal"),
           py::arg("dt_over_tmax") = 1e-5, py::arg("dx") = 0.01);

  m.def("draw_ks_process", &draw_ks_process, py::arg("v_xi"), py::arg("mu_xi"),
        py::arg("cal"), py::arg("times"), py::arg("dt"), py::arg("dx"),
        py::arg("seed"), py::arg("index") = 0);
  m.def("generalized_inverse", &generalized_inverse, py::arg("ks"), py::arg("s"));
  m.def("composite_limit_sample", &composite_limit_py, py::arg("params"),
        py::arg("s_points"), py::arg("seed"), py::arg("index") = 0);

  py::class_<KSTestResult>(m, "KSTestResult")
      .def_readonly("statistic", &KSTestResult::statistic)
      .def_readonly("n_a", &KSTestResult::n_a)
      .def_readonly("n_b", &KSTestResult::n_b)
      .def_readonly("p_value", &KSTestResult::p_value);

  py::class_<ExponentFit>(m, "ExponentFit")
      .def_readonly("slope", &ExponentFit::slope)
      .def_readonly("intercept", &ExponentFit::intercept)
      .def_readonly("stderr_slope", &ExponentFit::stderr_slope);

  m.def("ks_two_sample",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return ks_two_sample(a, b);
        });
  m.def("ks_critical_value", &ks_critical_value, py::arg("p"), py::arg("n_a"),
        py::arg("n_b"));
  m.def("quantile", &quantile, py::arg("values"), py::arg("level"));
  m.def("quantile_exponent_fit", &quantile_exponent_fit, py::arg("ensembles"),
        py::arg("level") = 0.5);

  m.def(
      "rescale_collision",
      [](const Trajectory& traj, double alpha, double q, const std::vector<double>& ts) {
        return rescale_collision(traj, alpha, q, ts).values;
      },
      py::arg("trajectory"), py::arg("alpha"), py::arg("q"), py::arg("ts"));
  m.def(
      "rescale_position",
      [](const Trajectory& traj, double alpha, double q, const std::vector<double>& ss) {
        return rescale_position(traj, alpha, q, ss).values;
      },
      py::arg("trajectory"), py::arg("alpha"), py::arg("q"), py::arg("ss"));
}
