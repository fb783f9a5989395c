#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eitdicke/imaging.hpp"
#include "eitdicke/kinetics.hpp"
#include "eitdicke/lineshape.hpp"
#include "eitdicke/mc_oracle.hpp"

namespace eitdicke {

// Settings are stored in the units of the config file (Hz, mrad, Torr, ...)
// so that a dumped config reloads bit-for-bit. The *_params() accessors
// convert to the SI / rad-per-second structs used by the physics modules.

struct MediumSettings {
  double temperature_c = 52.0;
  double buffer_pressure_torr = 10.0;
  double hard_sphere_radius_nm = 0.35;
  double wavelength_nm = 795.0;
  std::string active_name = "Rb-87";
  double active_mass_u = 86.909;
  std::string buffer_name = "Ne";
  double buffer_mass_u = 20.18;
  std::optional<double> collision_rate_per_s;  // unset = hard-sphere model

  bool operator==(const MediumSettings&) const = default;
};

struct EitSettings {
  double gamma_opt_hz = 150e6;
  double gamma_12_hz = 1e3;
  double rabi_pump_hz = 100e3;
  double light_shift_hz = 0.0;

  bool operator==(const EitSettings&) const = default;
};

struct SweepSettings {
  std::vector<double> theta_list_mrad{0.0, 0.25, 0.5, 1.0};
  double theta_min_mrad = 0.0;
  double theta_max_mrad = 1.0;
  std::size_t theta_steps = 11;
  double grid_span_hz = 0.0;  // 0 = automatic, +-60 theoretical half widths
  std::size_t grid_points = 2001;

  bool operator==(const SweepSettings&) const = default;
};

struct McSettings {
  std::size_t n_trajectories = 100000;
  std::size_t n_time_samples = 2048;
  double t_max_s = 0.0;  // 0 = 10 / (Gamma_12 + eta Gamma_D^res)
  unsigned workers = 0;
  double work_budget = 4e9;
  std::size_t batches = 10;
  std::size_t grid_points = 1201;
  std::vector<double> validate_theta_mrad{0.2, 0.5, 1.0};
  double tolerance = 0.05;

  bool operator==(const McSettings&) const = default;
};

struct ImagingSettings {
  double waist_radius_um = 660.0;
  double theta_max_mrad = 1.9;
  double background_transmission = 0.5;
  double eit_contrast = 0.3;
  std::size_t n_radii = 512;
  double noise = 0.0;  // relative pixel noise; 0 = noiseless

  bool operator==(const ImagingSettings&) const = default;
};

struct RunConfig {
  MediumSettings medium;
  EitSettings eit;
  SweepSettings sweep;
  McSettings mc;
  ImagingSettings imaging;
  std::string output_dir;
  std::uint64_t seed = 1;

  MediumParams medium_params() const;
  KineticsReport kinetics() const;
  EitParams eit_params() const;
  BeamGeometry geometry(double theta_mrad) const;
  ImagingConfig imaging_config() const;
  /// MC configuration at one angle; t_max resolved to its default when unset.
  McConfig mc_config(double theta_mrad) const;

  /// Checks every nested invariant; throws ConfigError naming the key.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the flat `key=value` format ('#' comments, dot-namespaced keys),
/// then applies `overrides` (each "key=value"). Unknown keys and malformed
/// lines throw ConfigError with the key or line number.
RunConfig parse_config(std::string_view text, std::span<const std::string> overrides = {});

/// Reads `path` (if non-empty) and parses it; IoError when unreadable.
RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// Every key with its effective value, in a form parse_config() reloads exactly.
std::string dump_config(const RunConfig& cfg);

/// All recognized keys, in dump order.
std::vector<std::string> config_keys();

}  // namespace eitdicke
