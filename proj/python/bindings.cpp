#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dilastab/commands.hpp"
#include "dilastab/config.hpp"
#include "dilastab/ecf.hpp"
#include "dilastab/error.hpp"
#include "dilastab/processes.hpp"
#include "dilastab/timechange.hpp"
#include "dilastab/validation.hpp"

namespace py = pybind11;
using namespace dilastab;

namespace {

std::vector<TransformStep> parse_chain(const std::vector<std::string>& names) {
  std::vector<TransformStep> steps;
  for (const auto& n : names) {
    const auto step = parse_transform(n);
    if (!step) throw Error(ErrorCode::InvalidArgument, "unknown transform '" + n + "'");
    steps.push_back(*step);
  }
  return steps;
}

py::array_t<double> ensemble_values(const PathEnsemble& e) {
  py::array_t<double> out({e.size(), e.grid().size()});
  auto buf = out.mutable_unchecked<2>();
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (std::size_t i = 0; i < e.grid().size(); ++i) buf(n, i) = e.value(n, i);
  }
  return out;
}

std::vector<double> grid_vector(const TimeGrid& g) { return {g.points().begin(), g.points().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Additive dilatively stable processes";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<InadmissibleParamsError> inadmissible(m, "InadmissibleParamsError",
                                                             error.ptr());
  static py::exception<LowMagnitudeError> low_magnitude(m, "LowMagnitudeError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InadmissibleParamsError& e) {
      py::set_error(inadmissible, e.what());
    } catch (const LowMagnitudeError& e) {
      py::set_error(low_magnitude, e.what());
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<GaussianDriver>(m, "GaussianDriver")
      .def(py::init<double, double>(), py::arg("variance") = 1.0, py::arg("drift") = 0.0)
      .def_readwrite("variance", &GaussianDriver::variance)
      .def_readwrite("drift", &GaussianDriver::drift);
  py::class_<SymmetricStableDriver>(m, "SymmetricStableDriver")
      .def(py::init<double, double>(), py::arg("index") = 2.0, py::arg("scale") = 1.0)
      .def_readwrite("index", &SymmetricStableDriver::index)
      .def_readwrite("scale", &SymmetricStableDriver::scale);
  py::class_<GaussianJumps>(m, "GaussianJumps")
      .def(py::init<double, double>(), py::arg("mean") = 0.0, py::arg("variance") = 1.0);
  py::class_<TwoPointJumps>(m, "TwoPointJumps")
      .def(py::init<double>(), py::arg("size") = 1.0);
  py::class_<CompoundPoissonDriver>(m, "CompoundPoissonDriver")
      .def(py::init<double, JumpLaw>(), py::arg("rate") = 1.0,
           py::arg("jumps") = JumpLaw{GaussianJumps{}})
      .def_readwrite("rate", &CompoundPoissonDriver::rate);
  py::class_<GammaDriver>(m, "GammaDriver")
      .def(py::init<double, double>(), py::arg("shape") = 1.0, py::arg("rate") = 1.0)
      .def_readwrite("shape", &GammaDriver::shape)
      .def_readwrite("rate", &GammaDriver::rate);
  m.def("driver_from_json", [](const std::string& text) {
    return driver_from_json(nlohmann::json::parse(text));
  });

  py::class_<DilationParams>(m, "DilationParams")
      .def(py::init<double, double>(), py::arg("alpha") = 1.0, py::arg("delta") = 0.0)
      .def_readwrite("alpha", &DilationParams::alpha)
      .def_readwrite("delta", &DilationParams::delta)
      .def_property_readonly("hurst", &DilationParams::hurst)
      .def_property_readonly("ou_rate", &DilationParams::ou_rate);

  py::class_<Discretization>(m, "Discretization")
      .def(py::init<int, double>(), py::arg("refine") = 128, py::arg("tail_tol") = 1e-4)
      .def_readwrite("refine", &Discretization::refine)
      .def_readwrite("tail_tol", &Discretization::tail_tol);

  py::enum_<Admissibility>(m, "Admissibility")
      .value("ConditionA", Admissibility::ConditionA)
      .value("ConditionB", Admissibility::ConditionB)
      .value("Selfsimilar", Admissibility::Selfsimilar)
      .value("DegenerateEqual", Admissibility::DegenerateEqual)
      .value("Inadmissible", Admissibility::Inadmissible);
  py::class_<AdmissibilityVerdict>(m, "AdmissibilityVerdict")
      .def_readonly("status", &AdmissibilityVerdict::status)
      .def_readonly("gamma", &AdmissibilityVerdict::gamma)
      .def_readonly("required_gamma", &AdmissibilityVerdict::required_gamma)
      .def_readonly("reason", &AdmissibilityVerdict::reason)
      .def_property_readonly("admissible", &AdmissibilityVerdict::admissible);
  m.def("admissibility", &admissibility, py::arg("params"), py::arg("driver"));
  m.def(
      "cascade_partial_sums",
      [](const std::vector<double>& samples, int a, int b, double beta, int levels) {
        return cascade_partial_sums(samples, a, b, beta, levels);
      },
      py::arg("samples"), py::arg("a"),
        py::arg("b"), py::arg("beta"), py::arg("levels"));

  m.def("tau", &tau, py::arg("delta"), py::arg("t"));
  m.def("tau_inv", &tau_inv, py::arg("delta"), py::arg("s"));

  py::class_<SamplePath>(m, "SamplePath")
      .def(py::init([](std::vector<double> times, std::vector<double> values,
                       const std::string& role) {
             static const std::vector<std::pair<std::string, PathRole>> roles = {
                 {"L", PathRole::L}, {"Y", PathRole::Y}, {"X", PathRole::X},
                 {"V", PathRole::V}, {"Z", PathRole::Z}, {"D", PathRole::D}};
             for (const auto& [name, r] : roles) {
               if (name == role) return SamplePath(TimeGrid(std::move(times)), std::move(values), r);
             }
             throw Error(ErrorCode::InvalidArgument, "unknown path role '" + role + "'");
           }),
           py::arg("times"), py::arg("values"), py::arg("role"))
      .def_property_readonly("times", [](const SamplePath& p) { return grid_vector(p.grid()); })
      .def_property_readonly(
          "values", [](const SamplePath& p) { return std::vector<double>(p.values().begin(), p.values().end()); })
      .def_property_readonly("role", [](const SamplePath& p) { return std::string(to_string(p.role())); })
      .def("value_at", &SamplePath::value_at)
      .def("__len__", &SamplePath::size);

  m.def(
      "simulate_dilative",
      [](const LevyDriverSpec& driver, const DilationParams& params, std::vector<double> times,
         std::uint64_t seed, const Discretization& disc) {
        RandomStream rng(seed);
        return simulate_dilative(driver, params, TimeGrid::from_unsorted(std::move(times)), disc,
                                 rng);
      },
      py::arg("driver"), py::arg("params"), py::arg("times"), py::arg("seed") = 0,
      py::arg("disc") = Discretization{});
  m.def(
      "ou_from_integral",
      [](const LevyDriverSpec& driver, const DilationParams& params, std::vector<double> times,
         std::uint64_t seed, const Discretization& disc) {
        RandomStream rng(seed);
        return ou_from_integral(driver, params, TimeGrid::from_unsorted(std::move(times)), disc,
                                rng);
      },
      py::arg("driver"), py::arg("params"), py::arg("times"), py::arg("seed") = 0,
      py::arg("disc") = Discretization{});
  m.def("extract_background", &extract_background);
  m.def("lamperti_transform", &lamperti_transform);
  m.def("lamperti_inverse", &lamperti_inverse, py::arg("v"), py::arg("params"),
        py::arg("prepend_origin") = false);
  m.def("reparam_time_stable", &reparam_time_stable);
  m.def("reparam_time_stable_inverse", &reparam_time_stable_inverse);
  m.def("reparam_idt", &reparam_idt);
  m.def("reparam_idt_inverse", &reparam_idt_inverse);

  py::class_<PathEnsemble>(m, "PathEnsemble")
      .def_property_readonly("times", [](const PathEnsemble& e) { return grid_vector(e.grid()); })
      .def_property_readonly("values", &ensemble_values)
      .def_property_readonly("role", [](const PathEnsemble& e) { return std::string(to_string(e.role())); })
      .def_property_readonly("master_seed", &PathEnsemble::master_seed)
      .def("__len__", &PathEnsemble::size);
  m.def(
      "simulate_ensemble",
      [](const LevyDriverSpec& driver, const DilationParams& params, std::vector<double> times,
         std::size_t paths, std::uint64_t seed, const std::vector<std::string>& transforms,
         const Discretization& disc, unsigned threads) {
        const EnsembleConfig config{driver, params, std::move(times), disc, parse_chain(transforms)};
        py::gil_scoped_release release;
        return simulate_ensemble(config, paths, seed, threads);
      },
      py::arg("driver"), py::arg("params"), py::arg("times"), py::arg("paths"),
      py::arg("seed") = 0, py::arg("transforms") = std::vector<std::string>{},
      py::arg("disc") = Discretization{}, py::arg("threads") = 1);
  m.def(
      "transform_ensemble",
      [](const PathEnsemble& e, const std::vector<std::string>& transforms,
         const DilationParams& params) { return transform_ensemble(e, parse_chain(transforms), params); },
      py::arg("ensemble"), py::arg("transforms"), py::arg("params"));

  py::class_<EcfEstimate>(m, "EcfEstimate")
      .def_readonly("times", &EcfEstimate::times)
      .def_readonly("thetas", &EcfEstimate::thetas)
      .def_readonly("cf_mean", &EcfEstimate::cf_mean)
      .def_readonly("cf_se", &EcfEstimate::cf_se)
      .def_readonly("logcf", &EcfEstimate::logcf)
      .def_readonly("logcf_se", &EcfEstimate::logcf_se);
  m.def(
      "estimate_ecf",
      [](const PathEnsemble& e, const std::vector<double>& times, const std::vector<double>& thetas) {
        return estimate_ecf(e, times, thetas);
      },
      py::arg("ensemble"), py::arg("times"), py::arg("thetas"));
  m.def(
      "estimate_log_cf",
      [](const PathEnsemble& e, const std::vector<double>& times,
         const std::vector<double>& direction, int r_steps) {
        return estimate_log_cf(e, times, direction, r_steps);
      },
      py::arg("ensemble"), py::arg("times"),
        py::arg("direction"), py::arg("r_steps") = 16);
  m.def("oracle_log_cf", &oracle_log_cf, py::arg("driver"), py::arg("params"), py::arg("t"),
        py::arg("theta"));
  m.def(
      "oracle_log_cf_joint",
      [](const LevyDriverSpec& d, const DilationParams& p, const std::vector<double>& times,
         const std::vector<double>& thetas) { return oracle_log_cf_joint(d, p, times, thetas); },
      py::arg("driver"), py::arg("params"),
        py::arg("times"), py::arg("thetas"));

  py::class_<ScalingLaw>(m, "ScalingLaw")
      .def_static("dilative", &ScalingLaw::dilative, py::arg("alpha"), py::arg("delta"), py::arg("T"))
      .def_static("translative", &ScalingLaw::translative, py::arg("delta"), py::arg("T"))
      .def_static("time_stable", &ScalingLaw::time_stable, py::arg("delta"), py::arg("n"))
      .def_static("idt", &ScalingLaw::idt, py::arg("n"));
  py::class_<TestPoint>(m, "TestPoint")
      .def_static("single", &TestPoint::single, py::arg("t"), py::arg("theta"))
      .def_static("increments", &TestPoint::increments, py::arg("t1"), py::arg("t2"),
                  py::arg("theta_level"), py::arg("theta_increment"))
      .def_readonly("times", &TestPoint::times)
      .def_readonly("thetas", &TestPoint::thetas);
  m.def(
      "check_scaling",
      [](const PathEnsemble& e, const ScalingLaw& law, const std::vector<TestPoint>& points,
         int r_steps, double z_threshold) {
        const ScalingReport r = check_scaling(e, law, points, {r_steps, z_threshold});
        return report_to_json(r).dump();
      },
      py::arg("ensemble"), py::arg("law"), py::arg("points"), py::arg("r_steps") = 16,
      py::arg("z_threshold") = 3.0,
      "Scaling report as a JSON string.");
}
