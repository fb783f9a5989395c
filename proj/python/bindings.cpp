#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eitdicke/analysis.hpp"
#include "eitdicke/commands.hpp"
#include "eitdicke/config.hpp"
#include "eitdicke/errors.hpp"
#include "eitdicke/imaging.hpp"
#include "eitdicke/kinetics.hpp"
#include "eitdicke/lineshape.hpp"
#include "eitdicke/mc_oracle.hpp"

namespace py = pybind11;
using namespace eitdicke;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

void bind_kinetics(py::module_& m) {
  py::class_<Species>(m, "Species")
      .def(py::init<std::string, double>(), py::arg("name"), py::arg("mass_kg"))
      .def_readwrite("name", &Species::name)
      .def_readwrite("mass_kg", &Species::mass_kg)
      .def_static("rubidium87", &Species::rubidium87)
      .def_static("neon", &Species::neon);

  py::class_<MediumParams>(m, "MediumParams")
      .def(py::init<>())
      .def_static("rb_neon_cell", &MediumParams::rb_neon_cell)
      .def_readwrite("temperature_k", &MediumParams::temperature_k)
      .def_readwrite("buffer_pressure_pa", &MediumParams::buffer_pressure_pa)
      .def_readwrite("active", &MediumParams::active)
      .def_readwrite("buffer", &MediumParams::buffer)
      .def_readwrite("hard_sphere_radius_m", &MediumParams::hard_sphere_radius_m)
      .def_readwrite("optical_wavelength_m", &MediumParams::optical_wavelength_m)
      .def("validate", &MediumParams::validate);

  py::class_<KineticsReport>(m, "KineticsReport")
      .def_readonly("v_th", &KineticsReport::v_th)
      .def_readonly("v_rel", &KineticsReport::v_rel)
      .def_readonly("buffer_density", &KineticsReport::buffer_density)
      .def_readonly("collision_rate", &KineticsReport::collision_rate)
      .def_readonly("mean_free_path", &KineticsReport::mean_free_path)
      .def_readonly("doppler_width", &KineticsReport::doppler_width);

  m.def("thermal_velocity_1d", &thermal_velocity_1d, py::arg("temperature_k"), py::arg("mass_kg"));
  m.def("mean_relative_speed", &mean_relative_speed, py::arg("temperature_k"), py::arg("mass1_kg"),
        py::arg("mass2_kg"));
  m.def("collision_rate", &collision_rate, py::arg("medium"));
  m.def("mean_free_path", &mean_free_path, py::arg("medium"), "None for a ballistic medium");
  m.def("kinetics_report", &kinetics_report, py::arg("medium"));
  m.def("kinetics_report_with_rate", &kinetics_report_with_rate, py::arg("medium"), py::arg("collision_rate"));
}

void bind_lineshape(py::module_& m) {
  py::class_<EitParams>(m, "EitParams")
      .def(py::init<>())
      .def_static("rb_neon_cell", &EitParams::rb_neon_cell)
      .def_readwrite("gamma_opt", &EitParams::gamma_opt)
      .def_readwrite("gamma_12", &EitParams::gamma_12)
      .def_readwrite("rabi_pump", &EitParams::rabi_pump)
      .def_readwrite("light_shift", &EitParams::light_shift);

  py::class_<BeamGeometry>(m, "BeamGeometry")
      .def(py::init([](double angle, double wavelength) { return BeamGeometry{angle, wavelength}; }),
           py::arg("angle_rad"), py::arg("wavelength_m") = 795e-9)
      .def_readwrite("angle_rad", &BeamGeometry::angle_rad)
      .def_readwrite("wavelength_m", &BeamGeometry::wavelength_m)
      .def("delta_q", &BeamGeometry::delta_q);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init([](const py::array_t<double>& x, const py::array_t<double>& y) {
             Spectrum s;
             s.detuning = to_vector(x);
             s.values = to_vector(y);
             s.validate();
             return s;
           }),
           py::arg("detuning"), py::arg("values"))
      .def_property_readonly("detuning", [](const Spectrum& s) { return to_array(s.detuning); })
      .def_property_readonly("values", [](const Spectrum& s) { return to_array(s.values); })
      .def_property_readonly("kind", [](const Spectrum& s) { return to_string(s.kind); })
      .def_readonly("warnings", &Spectrum::warnings);

  m.def("residual_doppler_width", &residual_doppler_width, py::arg("geometry"), py::arg("v_th"));
  m.def("gaussian_fwhm", &gaussian_fwhm, py::arg("sigma"));
  m.def("narrowing_factor", &narrowing_factor, py::arg("geometry"), py::arg("kinetics"));
  m.def("excess_hwhm", &excess_hwhm, py::arg("geometry"), py::arg("kinetics"));
  m.def(
      "s2_lineshape",
      [](const py::array_t<double>& grid, const BeamGeometry& g, const EitParams& e, const KineticsReport& k) {
        const auto x = to_vector(grid);
        return s2_lineshape(x, g, e, k);
      },
      py::arg("detuning"), py::arg("geometry"), py::arg("eit"), py::arg("kinetics"));
  m.def("peak_amplitude_ratio", &peak_amplitude_ratio, py::arg("geometry"), py::arg("eit"), py::arg("kinetics"));
  m.def("theoretical_fwhm", &theoretical_fwhm, py::arg("geometry"), py::arg("eit"), py::arg("kinetics"));
}

void bind_mc(py::module_& m) {
  py::class_<McConfig>(m, "McConfig")
      .def(py::init<>())
      .def_readwrite("delta_q", &McConfig::delta_q)
      .def_readwrite("v_th", &McConfig::v_th)
      .def_readwrite("collision_rate", &McConfig::collision_rate)
      .def_readwrite("gamma_12", &McConfig::gamma_12)
      .def_readwrite("n_trajectories", &McConfig::n_trajectories)
      .def_readwrite("t_max", &McConfig::t_max)
      .def_readwrite("n_time_samples", &McConfig::n_time_samples)
      .def_readwrite("seed", &McConfig::seed)
      .def_readwrite("workers", &McConfig::workers)
      .def_readwrite("work_budget", &McConfig::work_budget);

  py::class_<CorrelationTrace>(m, "CorrelationTrace")
      .def_property_readonly("times", [](const CorrelationTrace& t) { return to_array(t.times); })
      .def_property_readonly("values", [](const CorrelationTrace& t) { return to_array(t.values); })
      .def_property_readonly("statistical_error",
                             [](const CorrelationTrace& t) { return to_array(t.statistical_error); });

  m.def("default_t_max", &default_t_max, py::arg("delta_q"), py::arg("v_th"), py::arg("collision_rate"),
        py::arg("gamma_12"));
  m.def("simulate_correlation", &simulate_correlation, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "ballistic_reference",
      [](double dq, double v_th, double g12, const py::array_t<double>& times) {
        const auto t = to_vector(times);
        return ballistic_reference(dq, v_th, g12, t);
      },
      py::arg("delta_q"), py::arg("v_th"), py::arg("gamma_12"), py::arg("times"));
  m.def(
      "spectrum_from_correlation",
      [](const CorrelationTrace& trace, const py::array_t<double>& grid) {
        const auto x = to_vector(grid);
        return spectrum_from_correlation(trace, x);
      },
      py::arg("trace"), py::arg("detuning"));
}

void bind_analysis(py::module_& m) {
  py::class_<LorentzianFit>(m, "LorentzianFit")
      .def_readonly("center", &LorentzianFit::center)
      .def_readonly("hwhm", &LorentzianFit::hwhm)
      .def_readonly("amplitude", &LorentzianFit::amplitude)
      .def_readonly("offset", &LorentzianFit::offset)
      .def_readonly("residual_norm", &LorentzianFit::residual_norm)
      .def_readonly("converged", &LorentzianFit::converged)
      .def_readonly("iterations", &LorentzianFit::iterations)
      .def_readonly("warnings", &LorentzianFit::warnings)
      .def_property_readonly("fwhm", &LorentzianFit::fwhm);

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("exponent", &PowerLawFit::exponent)
      .def_readonly("prefactor", &PowerLawFit::prefactor)
      .def_readonly("r_squared", &PowerLawFit::r_squared);

  m.def(
      "fit_lorentzian", [](const Spectrum& s) { return fit_lorentzian(s); }, py::arg("spectrum"));
  m.def("numeric_fwhm", &numeric_fwhm, py::arg("spectrum"));
  m.def(
      "power_law_exponent",
      [](const py::array_t<double>& x, const py::array_t<double>& y) {
        const auto xs = to_vector(x);
        const auto ys = to_vector(y);
        return power_law_exponent(xs, ys);
      },
      py::arg("x"), py::arg("y"));
}

void bind_imaging(py::module_& m) {
  py::class_<ImagingConfig>(m, "ImagingConfig")
      .def(py::init<>())
      .def_readwrite("waist_radius", &ImagingConfig::waist_radius)
      .def_readwrite("theta_max", &ImagingConfig::theta_max)
      .def_readwrite("background_transmission", &ImagingConfig::background_transmission)
      .def_readwrite("eit_contrast", &ImagingConfig::eit_contrast)
      .def_readwrite("n_radii", &ImagingConfig::n_radii);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_property_readonly("radii", [](const RadialProfile& p) { return to_array(p.radii); })
      .def_property_readonly("intensity", [](const RadialProfile& p) { return to_array(p.intensity); })
      .def_readonly("label", &RadialProfile::label);

  py::enum_<TransmissionMode>(m, "TransmissionMode")
      .value("off_resonance", TransmissionMode::off_resonance)
      .value("eit_resonance", TransmissionMode::eit_resonance);

  m.def("theta_profile", &theta_profile, py::arg("radius"), py::arg("config"));
  m.def("input_profile", &input_profile, py::arg("config"));
  m.def("transmitted_profile", &transmitted_profile, py::arg("input"), py::arg("config"), py::arg("eit"),
        py::arg("kinetics"), py::arg("wavelength_m"), py::arg("mode"));
  m.def("second_moment_width", &second_moment_width, py::arg("profile"));
  m.def(
      "relative_transparency_curve",
      [](const RadialProfile& eit_img, const RadialProfile& off_img, const ImagingConfig& cfg) {
        const auto curve = relative_transparency_curve(eit_img, off_img, cfg);
        std::vector<double> theta, ratio;
        for (const auto& s : curve) {
          theta.push_back(s.theta);
          ratio.push_back(s.ratio);
        }
        return py::make_tuple(to_array(theta), to_array(ratio));
      },
      py::arg("eit_image"), py::arg("off_image"), py::arg("config"));
  m.def("add_image_noise", &add_image_noise, py::arg("profile"), py::arg("rel_sigma"), py::arg("seed"),
        py::arg("azimuthal_average") = true);
}

void bind_config(py::module_& m) {
  py::class_<RunConfig>(m, "RunConfig")
      .def("kinetics", &RunConfig::kinetics)
      .def("medium_params", &RunConfig::medium_params)
      .def("eit_params", &RunConfig::eit_params)
      .def("imaging_config", &RunConfig::imaging_config)
      .def("mc_config", &RunConfig::mc_config, py::arg("theta_mrad"))
      .def("__eq__", [](const RunConfig& a, const RunConfig& b) { return a == b; });

  m.def(
      "parse_config",
      [](const std::string& text, const std::vector<std::string>& overrides) { return parse_config(text, overrides); },
      py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{});
  m.def("dump_config", &dump_config, py::arg("config"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dicke-narrowed EIT lineshape, kinetics, Monte-Carlo and imaging core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PeakShapeError>(m, "PeakShapeError", PyExc_RuntimeError);
  py::register_exception<DegenerateDataError>(m, "DegenerateDataError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  bind_kinetics(m);
  bind_lineshape(m);
  bind_mc(m);
  bind_analysis(m);
  bind_imaging(m);
  bind_config(m);
}
