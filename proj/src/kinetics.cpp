#include "eitdicke/kinetics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eitdicke/units.hpp"

namespace eitdicke {

namespace {

void require_mass(double mass_kg) {
  if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
    throw std::domain_error("species mass must be positive");
  }
}

void require_temperature(double temperature_k) {
  if (!(temperature_k >= 0.0) || !std::isfinite(temperature_k)) {
    throw std::domain_error("temperature must be non-negative");
  }
}

}  // namespace

Species Species::rubidium87() { return {"Rb-87", units::kRb87MassU * units::kAtomicMassUnit}; }

Species Species::neon() { return {"Ne", units::kNeonMassU * units::kAtomicMassUnit}; }

MediumParams MediumParams::rb_neon_cell() {
  MediumParams m;
  m.temperature_k = units::celsius(52.0);
  m.buffer_pressure_pa = units::torr(10.0);
  m.active = Species::rubidium87();
  m.buffer = Species::neon();
  m.hard_sphere_radius_m = 0.35e-9;
  m.optical_wavelength_m = 795e-9;
  return m;
}

void MediumParams::validate() const {
  if (!(temperature_k > 0.0) || !std::isfinite(temperature_k)) {
    throw std::invalid_argument("temperature: must be > 0 K");
  }
  if (!(buffer_pressure_pa >= 0.0) || !std::isfinite(buffer_pressure_pa)) {
    throw std::invalid_argument("buffer_pressure: must be >= 0");
  }
  if (!(active.mass_kg > 0.0)) {
    throw std::invalid_argument("active.mass: must be > 0");
  }
  if (!(buffer.mass_kg > 0.0)) {
    throw std::invalid_argument("buffer.mass: must be > 0");
  }
  if (!(hard_sphere_radius_m > 0.0)) {
    throw std::invalid_argument("hard_sphere_radius: must be > 0");
  }
  if (!(optical_wavelength_m > 0.0)) {
    throw std::invalid_argument("optical_wavelength: must be > 0");
  }
}

double thermal_velocity_1d(double temperature_k, double mass_kg) {
  require_mass(mass_kg);
  require_temperature(temperature_k);
  return std::sqrt(units::kBoltzmann * temperature_k / mass_kg);
}

double mean_relative_speed(double temperature_k, double mass1_kg, double mass2_kg) {
  require_mass(mass1_kg);
  require_mass(mass2_kg);
  require_temperature(temperature_k);
  // mu = m1 m2 / (m1 + m2), written to stay finite as either mass grows.
  const double inv_mu = 1.0 / mass1_kg + 1.0 / mass2_kg;
  return std::sqrt(8.0 * units::kBoltzmann * temperature_k * inv_mu / units::kPi);
}

double buffer_density(const MediumParams& medium) {
  medium.validate();
  return medium.buffer_pressure_pa / (units::kBoltzmann * medium.temperature_k);
}

double collision_rate(const MediumParams& medium) {
  const double density = buffer_density(medium);
  const double cross_section = units::kPi * medium.hard_sphere_radius_m * medium.hard_sphere_radius_m;
  return density * cross_section *
         mean_relative_speed(medium.temperature_k, medium.active.mass_kg, medium.buffer.mass_kg);
}

std::optional<double> mean_free_path(const MediumParams& medium) {
  const double rate = collision_rate(medium);
  if (rate <= 0.0) return std::nullopt;
  return thermal_velocity_1d(medium.temperature_k, medium.active.mass_kg) / rate;
}

KineticsReport kinetics_report_with_rate(const MediumParams& medium, double collision_rate_per_s) {
  medium.validate();
  if (!(collision_rate_per_s >= 0.0) || !std::isfinite(collision_rate_per_s)) {
    throw std::invalid_argument("collision_rate: must be finite and >= 0");
  }
  KineticsReport r;
  r.v_th = thermal_velocity_1d(medium.temperature_k, medium.active.mass_kg);
  r.v_rel = mean_relative_speed(medium.temperature_k, medium.active.mass_kg, medium.buffer.mass_kg);
  r.buffer_density = buffer_density(medium);
  r.collision_rate = collision_rate_per_s;
  r.mean_free_path =
      collision_rate_per_s > 0.0 ? r.v_th / collision_rate_per_s : std::numeric_limits<double>::infinity();
  r.doppler_width = units::kTwoPi * r.v_th / medium.optical_wavelength_m;
  return r;
}

KineticsReport kinetics_report(const MediumParams& medium) {
  return kinetics_report_with_rate(medium, collision_rate(medium));
}

bool dicke_regime(const KineticsReport& kin, double optical_wavelength_m, double theta_rad) {
  if (kin.ballistic()) return false;
  const double eit_wavelength =
      theta_rad > 0.0 ? optical_wavelength_m / theta_rad : std::numeric_limits<double>::infinity();
  return optical_wavelength_m < kin.mean_free_path && kin.mean_free_path < eit_wavelength;
}

}  // namespace eitdicke
