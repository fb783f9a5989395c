#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eitdicke/config.hpp"
#include "eitdicke/csv.hpp"

namespace eitdicke {

/// Output of one experiment: the CSV table, non-fatal diagnostics, and the
/// process exit status it implies (0 ok, 2 validation gate failed).
struct CommandResult {
  CsvTable table;
  std::vector<std::string> warnings;
  int exit_code = 0;
};

enum class ImagingMode { divergent, collimated };

ImagingMode parse_imaging_mode(const std::string& text);
std::string to_string(ImagingMode mode);

/// theta_min .. theta_max in theta_steps evenly spaced values (mrad).
std::vector<double> theta_range(const SweepSettings& sweep);

CommandResult cmd_kinetics(const RunConfig& cfg);

/// Long-format S2 spectra, one block per angle on a shared detuning grid.
/// With sweep.grid_span_hz = 0 the half-span is 20 theoretical half widths of
/// the widest line.
CommandResult cmd_lineshape(const RunConfig& cfg, const std::vector<double>& thetas_mrad);

/// Theory, fitted and model-free FWHM per angle, each on its own grid (half-span
/// 60 theoretical half widths unless sweep.grid_span_hz is set). With `with_mc`
/// every angle is also simulated, all angles sharing one trajectory set.
CommandResult cmd_width_sweep(const RunConfig& cfg, const std::vector<double>& thetas_mrad, bool with_mc);

CommandResult cmd_amplitude_sweep(const RunConfig& cfg, const std::vector<double>& thetas_mrad);

/// Monte-Carlo FWHM against 2 (Gamma_12 + eta Gamma_D^res). A row fails when
/// rel_err > mc.tolerance + 3 stderr / theory; any failure sets exit code 2.
/// A ballistic medium produces a warning and no rows.
CommandResult cmd_mc_validate(const RunConfig& cfg, const std::vector<double>& thetas_mrad);

/// Radial input / off-resonance / EIT images plus the recovered transparency
/// curve. The footer carries the second-moment widths. imaging.noise > 0 adds
/// seeded pixel noise to both transmitted images.
CommandResult cmd_imaging(const RunConfig& cfg, ImagingMode mode);

/// Lorentzian fit of external data with columns detuning_hz and `value_column`.
/// Input with a theta_mrad column is fitted block by block; `theta_mrad`
/// restricts the fit to one block.
CommandResult cmd_fit(const CsvData& data, const std::string& value_column = "value",
                      std::optional<double> theta_mrad = std::nullopt);

}  // namespace eitdicke
