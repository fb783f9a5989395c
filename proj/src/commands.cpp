#include "eitdicke/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eitdicke/analysis.hpp"
#include "eitdicke/errors.hpp"
#include "eitdicke/imaging.hpp"
#include "eitdicke/mc_oracle.hpp"
#include "eitdicke/units.hpp"

namespace eitdicke {

namespace {

constexpr double kLineshapeSpanWidths = 20.0;
constexpr double kSweepSpanWidths = 60.0;

void add_unique(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& w : more) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
}

std::string fmt(double v) { return format_number(v); }

double theory_hwhm_hz(const RunConfig& cfg, const KineticsReport& kin, double theta_mrad) {
  return units::rad_to_hz(theoretical_fwhm(cfg.geometry(theta_mrad), cfg.eit_params(), kin)) / 2.0;
}

double auto_half_span_hz(const RunConfig& cfg, double hwhm_hz, double widths) {
  if (cfg.sweep.grid_span_hz > 0.0) return cfg.sweep.grid_span_hz;
  if (!(hwhm_hz > 0.0)) {
    throw ConfigError("automatic detuning grid needs a nonzero line width; set sweep.grid_span_hz");
  }
  return widths * hwhm_hz;
}

// Detuning grid in rad/s centered on `center_hz`.
std::vector<double> grid_rad(double center_hz, double half_span_hz, std::size_t n) {
  auto g = linear_grid(center_hz - half_span_hz, center_hz + half_span_hz, n);
  for (auto& x : g) x = units::hz_to_rad(x);
  return g;
}

struct McWidth {
  double fwhm_hz = std::numeric_limits<double>::quiet_NaN();
  double stderr_hz = std::numeric_limits<double>::quiet_NaN();
};

McWidth mc_width(const McEnsemble& ens, std::span<const double> grid, std::vector<std::string>& warnings,
                 double theta_mrad) {
  McWidth out;
  std::vector<double> widths;
  for (const auto& b : ens.batches) {
    try {
      widths.push_back(units::rad_to_hz(numeric_fwhm(spectrum_from_correlation(b, grid))));
    } catch (const PeakShapeError&) {
    } catch (const DegenerateDataError&) {
    }
  }
  if (widths.size() < ens.batches.size()) {
    warnings.push_back("theta " + fmt(theta_mrad) + " mrad: " + std::to_string(ens.batches.size() - widths.size()) +
                       " MC batch spectra had no usable width");
  }
  if (widths.size() >= 2) {
    double mean = 0.0;
    for (double w : widths) mean += w;
    mean /= static_cast<double>(widths.size());
    double ss = 0.0;
    for (double w : widths) ss += (w - mean) * (w - mean);
    const double n = static_cast<double>(widths.size());
    out.stderr_hz = std::sqrt(ss / (n - 1.0) / n);
  } else {
    out.stderr_hz = std::numeric_limits<double>::infinity();
  }

  const auto spec = spectrum_from_correlation(ens.total, grid);
  add_unique(warnings, spec.warnings);
  try {
    out.fwhm_hz = units::rad_to_hz(numeric_fwhm(spec));
  } catch (const PeakShapeError& e) {
    warnings.push_back("theta " + fmt(theta_mrad) + " mrad: MC spectrum has no usable width: " + e.what());
  } catch (const DegenerateDataError& e) {
    warnings.push_back("theta " + fmt(theta_mrad) + " mrad: MC spectrum has no usable width: " + e.what());
  }
  return out;
}

std::vector<McWidth> simulate_widths(const RunConfig& cfg, const KineticsReport& kin,
                                     const std::vector<double>& thetas_mrad, std::vector<std::string>& warnings) {
  std::vector<McConfig> mcs;
  for (double t : thetas_mrad) mcs.push_back(cfg.mc_config(t));
  const auto ensembles = simulate_ensembles(mcs, cfg.mc.batches);
  std::vector<McWidth> out;
  for (std::size_t i = 0; i < thetas_mrad.size(); ++i) {
    // The MC model carries no light shift, so its grid is centered on zero.
    const double hwhm = theory_hwhm_hz(cfg, kin, thetas_mrad[i]);
    const auto grid = grid_rad(0.0, auto_half_span_hz(cfg, hwhm, kSweepSpanWidths), cfg.mc.grid_points);
    out.push_back(mc_width(ensembles[i], grid, warnings, thetas_mrad[i]));
  }
  return out;
}

}  // namespace

ImagingMode parse_imaging_mode(const std::string& text) {
  if (text == "divergent") return ImagingMode::divergent;
  if (text == "collimated") return ImagingMode::collimated;
  throw ConfigError("imaging mode must be 'divergent' or 'collimated', got '" + text + "'");
}

std::string to_string(ImagingMode mode) { return mode == ImagingMode::divergent ? "divergent" : "collimated"; }

std::vector<double> theta_range(const SweepSettings& sweep) {
  if (sweep.theta_steps == 1) return {sweep.theta_min_mrad};
  if (sweep.theta_max_mrad == sweep.theta_min_mrad) return std::vector<double>(sweep.theta_steps, sweep.theta_min_mrad);
  return linear_grid(sweep.theta_min_mrad, sweep.theta_max_mrad, sweep.theta_steps);
}

CommandResult cmd_kinetics(const RunConfig& cfg) {
  const auto kin = cfg.kinetics();
  CommandResult r;
  r.table.header = {"v_th_m_s", "v_rel_m_s", "density_m3", "collision_rate_hz", "mean_free_path_m",
                    "doppler_width_hz"};
  r.table.add_row({fmt(kin.v_th), fmt(kin.v_rel), fmt(kin.buffer_density), fmt(kin.collision_rate),
                   fmt(kin.mean_free_path), fmt(units::rad_to_hz(kin.doppler_width))});
  if (kin.collision_rate == 0.0) r.warnings.push_back("ballistic medium: no collisions, mean free path is infinite");
  return r;
}

CommandResult cmd_lineshape(const RunConfig& cfg, const std::vector<double>& thetas_mrad) {
  if (thetas_mrad.empty()) throw ConfigError("lineshape: empty angle list");
  const auto kin = cfg.kinetics();
  const auto eit = cfg.eit_params();
  double widest = 0.0;
  for (double t : thetas_mrad) widest = std::max(widest, theory_hwhm_hz(cfg, kin, t));
  const auto grid =
      grid_rad(cfg.eit.light_shift_hz, auto_half_span_hz(cfg, widest, kLineshapeSpanWidths), cfg.sweep.grid_points);

  CommandResult r;
  r.table.header = {"theta_mrad", "detuning_hz", "s2_value"};
  for (double t : thetas_mrad) {
    const auto spec = s2_lineshape(grid, cfg.geometry(t), eit, kin);
    add_unique(r.warnings, spec.warnings);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      r.table.add_row({fmt(t), fmt(units::rad_to_hz(spec.detuning[i])), fmt(spec.values[i])});
    }
  }
  return r;
}

CommandResult cmd_width_sweep(const RunConfig& cfg, const std::vector<double>& thetas_mrad, bool with_mc) {
  if (thetas_mrad.empty()) throw ConfigError("width-sweep: empty angle list");
  const auto kin = cfg.kinetics();
  const auto eit = cfg.eit_params();
  CommandResult r;
  r.table.header = {"theta_mrad", "fwhm_theory_hz", "fwhm_fit_hz", "fwhm_numeric_hz"};
  if (with_mc) {
    r.table.header.push_back("fwhm_mc_hz");
    r.table.header.push_back("mc_stderr_hz");
  }
  std::vector<McWidth> mc;
  if (with_mc) mc = simulate_widths(cfg, kin, thetas_mrad, r.warnings);

  for (std::size_t i = 0; i < thetas_mrad.size(); ++i) {
    const double t = thetas_mrad[i];
    const auto geom = cfg.geometry(t);
    const double hwhm = theory_hwhm_hz(cfg, kin, t);
    const auto grid =
        grid_rad(cfg.eit.light_shift_hz, auto_half_span_hz(cfg, hwhm, kSweepSpanWidths), cfg.sweep.grid_points);
    const auto spec = s2_lineshape(grid, geom, eit, kin);
    add_unique(r.warnings, spec.warnings);
    const auto fit = fit_lorentzian(spec);
    add_unique(r.warnings, fit.warnings);
    if (!fit.converged) r.warnings.push_back("theta " + fmt(t) + " mrad: Lorentzian fit did not converge");
    std::vector<std::string> row{fmt(t), fmt(2.0 * hwhm), fmt(units::rad_to_hz(fit.fwhm())),
                                 fmt(units::rad_to_hz(numeric_fwhm(spec)))};
    if (with_mc) {
      row.push_back(fmt(mc[i].fwhm_hz));
      row.push_back(fmt(mc[i].stderr_hz));
    }
    r.table.add_row(std::move(row));
  }
  return r;
}

CommandResult cmd_amplitude_sweep(const RunConfig& cfg, const std::vector<double>& thetas_mrad) {
  if (thetas_mrad.empty()) throw ConfigError("amplitude-sweep: empty angle list");
  const auto kin = cfg.kinetics();
  const auto eit = cfg.eit_params();
  CommandResult r;
  r.table.header = {"theta_mrad", "amplitude_ratio"};
  for (double t : thetas_mrad) {
    const auto geom = cfg.geometry(t);
    add_unique(r.warnings, validity_warnings(geom, eit, kin));
    r.table.add_row({fmt(t), fmt(peak_amplitude_ratio(geom, eit, kin))});
  }
  return r;
}

CommandResult cmd_mc_validate(const RunConfig& cfg, const std::vector<double>& thetas_mrad) {
  if (thetas_mrad.empty()) throw ConfigError("mc-validate: empty angle list");
  const auto kin = cfg.kinetics();
  const auto eit = cfg.eit_params();
  CommandResult r;
  r.table.header = {"theta_mrad", "fwhm_mc_hz", "mc_stderr_hz", "fwhm_theory_hz", "rel_err"};
  if (kin.collision_rate == 0.0) {
    r.warnings.push_back(
        "ballistic medium (collision rate 0): the Dicke-narrowed width does not apply; MC comparison skipped");
    return r;
  }
  for (double t : thetas_mrad) add_unique(r.warnings, validity_warnings(cfg.geometry(t), eit, kin));

  const auto mc = simulate_widths(cfg, kin, thetas_mrad, r.warnings);
  for (std::size_t i = 0; i < thetas_mrad.size(); ++i) {
    const double theory = 2.0 * theory_hwhm_hz(cfg, kin, thetas_mrad[i]);
    const double rel_err = std::abs(mc[i].fwhm_hz - theory) / theory;
    const double allowance = cfg.mc.tolerance + 3.0 * mc[i].stderr_hz / theory;
    if (!(rel_err <= allowance)) {
      r.exit_code = 2;
      r.warnings.push_back("theta " + fmt(thetas_mrad[i]) + " mrad: rel_err " + fmt(rel_err) + " exceeds allowance " +
                           fmt(allowance));
    }
    r.table.add_row({fmt(thetas_mrad[i]), fmt(mc[i].fwhm_hz), fmt(mc[i].stderr_hz), fmt(theory), fmt(rel_err)});
  }
  return r;
}

CommandResult cmd_imaging(const RunConfig& cfg, ImagingMode mode) {
  auto icfg = cfg.imaging_config();
  if (mode == ImagingMode::collimated) icfg.theta_max = 0.0;
  const auto kin = cfg.kinetics();
  const auto eit = cfg.eit_params();
  const double wavelength = cfg.medium.wavelength_nm * 1e-9;

  const auto input = input_profile(icfg);
  auto off = transmitted_profile(input, icfg, eit, kin, wavelength, TransmissionMode::off_resonance);
  auto on = transmitted_profile(input, icfg, eit, kin, wavelength, TransmissionMode::eit_resonance);
  if (cfg.imaging.noise > 0.0) {
    off = add_image_noise(off, cfg.imaging.noise, cfg.seed);
    on = add_image_noise(on, cfg.imaging.noise, cfg.seed + 1);
  }
  const auto curve = relative_transparency_curve(on, off, icfg);

  CommandResult r;
  r.table.header = {"radius_m", "input", "off_resonance", "eit", "theta_mrad", "recovered_ratio"};
  std::size_t next = 0;
  for (std::size_t i = 0; i < input.radii.size(); ++i) {
    std::string recovered;
    if (next < curve.size() && curve[next].radius == input.radii[i]) recovered = fmt(curve[next++].ratio);
    r.table.add_row({fmt(input.radii[i]), fmt(input.intensity[i]), fmt(off.intensity[i]), fmt(on.intensity[i]),
                     fmt(units::to_mrad(theta_profile(input.radii[i], icfg))), std::move(recovered)});
  }
  const double w_in = second_moment_width(input);
  const double w_off = second_moment_width(off);
  const double w_eit = second_moment_width(on);
  r.table.footer.push_back("summary,input_width_m=" + fmt(w_in) + ",off_width_m=" + fmt(w_off) +
                           ",eit_width_m=" + fmt(w_eit) + ",width_ratio=" + fmt(w_eit / w_off));
  if (icfg.theta_max > 0.0) {
    add_unique(r.warnings, validity_warnings(BeamGeometry{icfg.theta_max, wavelength}, eit, kin));
  }
  return r;
}

CommandResult cmd_fit(const CsvData& data, const std::string& value_column, std::optional<double> theta_mrad) {
  const auto detuning = data.numeric_column("detuning_hz");
  const auto values = data.numeric_column(value_column);
  const bool blocked = data.has_column("theta_mrad");
  if (theta_mrad && !blocked) throw ConfigError("fit: --theta given but the input has no theta_mrad column");
  const std::vector<double> thetas = blocked ? data.numeric_column("theta_mrad") : std::vector<double>{};

  // Blocks in order of first appearance.
  std::vector<double> keys;
  if (blocked) {
    for (double t : thetas) {
      if (std::find(keys.begin(), keys.end(), t) == keys.end()) keys.push_back(t);
    }
    if (theta_mrad) {
      const double want = *theta_mrad;
      const auto it = std::find_if(keys.begin(), keys.end(),
                                   [&](double t) { return std::abs(t - want) <= 1e-9 * std::max(1.0, std::abs(want)); });
      if (it == keys.end()) throw ConfigError("fit: no rows with theta_mrad = " + fmt(want));
      keys = {*it};
    }
  } else {
    keys.push_back(0.0);
  }

  CommandResult r;
  if (blocked) r.table.header.push_back("theta_mrad");
  for (const char* c : {"center_hz", "hwhm_hz", "fwhm_fit_hz", "amplitude", "offset", "residual_norm", "converged",
                        "iterations", "fwhm_numeric_hz"}) {
    r.table.header.emplace_back(c);
  }
  for (double key : keys) {
    Spectrum spec;
    for (std::size_t i = 0; i < detuning.size(); ++i) {
      if (blocked && thetas[i] != key) continue;
      spec.detuning.push_back(detuning[i]);
      spec.values.push_back(values[i]);
    }
    spec.validate();
    const auto fit = fit_lorentzian(spec);
    add_unique(r.warnings, fit.warnings);
    double numeric = std::numeric_limits<double>::quiet_NaN();
    try {
      numeric = numeric_fwhm(spec);
    } catch (const PeakShapeError& e) {
      r.warnings.push_back(std::string("numeric FWHM unavailable: ") + e.what());
    }
    std::vector<std::string> row;
    if (blocked) row.push_back(fmt(key));
    for (auto& cell : {fmt(fit.center), fmt(fit.hwhm), fmt(fit.fwhm()), fmt(fit.amplitude), fmt(fit.offset),
                       fmt(fit.residual_norm), std::string(fit.converged ? "1" : "0"), std::to_string(fit.iterations),
                       fmt(numeric)}) {
      row.push_back(cell);
    }
    r.table.add_row(std::move(row));
  }
  return r;
}

}  // namespace eitdicke
