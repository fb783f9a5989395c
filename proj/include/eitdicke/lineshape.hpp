#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eitdicke/kinetics.hpp"

namespace eitdicke {

/// Optical and ground-state rates of the Lambda system, all in rad/s.
struct EitParams {
  double gamma_opt = 0.0;    // optical decoherence
  double gamma_12 = 0.0;     // ground-state decoherence
  double rabi_pump = 0.0;    // pump Rabi frequency
  double light_shift = 0.0;  // empirical line-center offset

  /// Gamma/2pi = 150 MHz, Gamma_12/2pi = 1 kHz, Omega/2pi = 100 kHz, no shift.
  static EitParams rb_neon_cell();

  void validate() const;

  /// Omega^2 / Gamma <= Gamma_12: the weak power-broadening assumption.
  bool low_power_broadening() const { return rabi_pump * rabi_pump / gamma_opt <= gamma_12; }

  bool operator==(const EitParams&) const = default;
};

/// Degenerate pump/probe pair (|q1| = |q2| = 2 pi / lambda) crossing at a
/// small angle. |q1 - q2| = q theta.
struct BeamGeometry {
  double angle_rad = 0.0;
  double wavelength_m = 795e-9;

  void validate() const;

  double wavenumber() const;
  double delta_q() const { return wavenumber() * angle_rad; }
  /// lambda / theta; infinite at theta = 0.
  double eit_wavelength() const;
};

enum class SpectrumKind { absorption, transmission, correlation_derived };

std::string to_string(SpectrumKind kind);

struct Spectrum {
  std::vector<double> detuning;  // strictly increasing
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::absorption;
  std::vector<std::string> warnings;

  void validate() const;
  std::size_t size() const { return detuning.size(); }
};

/// Gamma_D^res = |q1 - q2| v_th, the 1/e (rms-velocity) two-photon Doppler width.
double residual_doppler_width(const BeamGeometry& geom, double v_th);

/// FWHM of a Gaussian whose rms width is `sigma`: 2 sqrt(2 ln 2) sigma.
double gaussian_fwhm(double sigma);

/// eta = Gamma_D^res / gamma. nullopt for a ballistic medium (no narrowing).
std::optional<double> narrowing_factor(const BeamGeometry& geom, const KineticsReport& kin);

/// eta written through the mean free path: 2 pi theta L / lambda.
double narrowing_factor_from_path(const BeamGeometry& geom, double mean_free_path_m);

/// (2 pi L / lambda) Gamma_D theta^2: the half width added to Gamma_12.
/// Throws std::domain_error for a ballistic medium.
double excess_hwhm(const BeamGeometry& geom, const KineticsReport& kin);

/// Two-photon absorption spectrum S2(Delta_R) of the degenerate Lambda
/// system at pump-probe angle theta (detunings in rad/s):
///
///   S2 = -|Omega|^2 / [Gamma + (pi L/lambda) Gamma_D theta^2]^2
///        * W / ((Delta_R - delta0)^2 + W^2),   W = Gamma_12 + (2 pi L/lambda) Gamma_D theta^2
///
/// This is the small-angle reduction of the general vector form
///   S2 = -|Omega|^2 / [Gamma + q1.(q1 - q2) v_th^2 / gamma]^2
///        * (Gamma_12 + eta Gamma_D^res) / (Delta_R^2 + (Gamma_12 + eta Gamma_D^res)^2).
/// Note the factor-2 asymmetry between the two angle terms, kept as derived.
Spectrum s2_lineshape(std::span<const double> detuning_grid, const BeamGeometry& geom, const EitParams& eit,
                      const KineticsReport& kin);

/// Line-center value of S2 at theta relative to theta = 0.
double peak_amplitude_ratio(const BeamGeometry& geom, const EitParams& eit, const KineticsReport& kin);

/// 2 (Gamma_12 + excess_hwhm), rad/s.
double theoretical_fwhm(const BeamGeometry& geom, const EitParams& eit, const KineticsReport& kin);

/// Non-fatal validity diagnostics: power broadening, eta > 0.2, non-Dicke regime.
std::vector<std::string> validity_warnings(const BeamGeometry& geom, const EitParams& eit,
                                           const KineticsReport& kin);

/// n evenly spaced points on [lo, hi]; n >= 2.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace eitdicke
