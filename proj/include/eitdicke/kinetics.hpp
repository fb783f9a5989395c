#pragma once

#include <optional>
#include <string>

namespace eitdicke {

struct Species {
  std::string name;
  double mass_kg = 0.0;

  static Species rubidium87();
  static Species neon();

  bool operator==(const Species&) const = default;
};

/// Vapor-cell conditions. All fields SI.
struct MediumParams {
  double temperature_k = 0.0;
  double buffer_pressure_pa = 0.0;
  Species active;
  Species buffer;
  double hard_sphere_radius_m = 0.0;
  double optical_wavelength_m = 0.0;

  /// 87Rb in 10 Torr Ne at 52 C, R = 0.35 nm, 795 nm.
  static MediumParams rb_neon_cell();

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const MediumParams&) const = default;
};

/// Kinetic quantities of a medium. A ballistic medium (zero buffer pressure
/// or a forced zero collision rate) has collision_rate == 0 and an infinite
/// mean free path; check ballistic() before using mean_free_path.
struct KineticsReport {
  double v_th = 0.0;            // m/s, 1-D rms velocity of the active species
  double v_rel = 0.0;           // m/s, mean relative speed active-buffer
  double buffer_density = 0.0;  // 1/m^3
  double collision_rate = 0.0;  // 1/s
  double mean_free_path = 0.0;  // m
  double doppler_width = 0.0;   // rad/s, q * v_th

  bool ballistic() const { return collision_rate <= 0.0; }
};

/// sqrt(kB T / m). Throws std::domain_error for m <= 0 or T < 0.
double thermal_velocity_1d(double temperature_k, double mass_kg);

/// Maxwell mean relative speed sqrt(8 kB T / (pi mu)) with reduced mass mu.
double mean_relative_speed(double temperature_k, double mass1_kg, double mass2_kg);

/// Ideal-gas number density of the buffer gas.
double buffer_density(const MediumParams& medium);

/// Hard-sphere kinetic collision rate n * pi R^2 * v_rel.
double collision_rate(const MediumParams& medium);

/// v_th / collision_rate, or nullopt for a ballistic (collisionless) medium.
std::optional<double> mean_free_path(const MediumParams& medium);

KineticsReport kinetics_report(const MediumParams& medium);

/// Same as kinetics_report() but with the collision rate imposed instead of
/// computed from the hard-sphere model. The mean free path follows from it.
KineticsReport kinetics_report_with_rate(const MediumParams& medium, double collision_rate_per_s);

/// True when lambda < L < lambda_EIT = lambda / theta (Dicke regime).
bool dicke_regime(const KineticsReport& kin, double optical_wavelength_m, double theta_rad);

}  // namespace eitdicke
