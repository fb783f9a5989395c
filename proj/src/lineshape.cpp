#include "eitdicke/lineshape.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eitdicke/units.hpp"

namespace eitdicke {

namespace {

constexpr double kMaxSmallAngle = 0.01;
constexpr double kEtaWarnThreshold = 0.2;

void require_collisional(const KineticsReport& kin) {
  if (kin.ballistic() || !std::isfinite(kin.mean_free_path)) {
    throw std::domain_error("Dicke-narrowed lineshape needs a collisional medium (collision rate > 0)");
  }
}

// (pi L / lambda) Gamma_D theta^2
double half_angle_term(const BeamGeometry& geom, const KineticsReport& kin) {
  require_collisional(kin);
  return units::kPi * kin.mean_free_path / geom.wavelength_m * kin.doppler_width * geom.angle_rad *
         geom.angle_rad;
}

}  // namespace

EitParams EitParams::rb_neon_cell() {
  EitParams p;
  p.gamma_opt = units::hz_to_rad(150e6);
  p.gamma_12 = units::hz_to_rad(1e3);
  p.rabi_pump = units::hz_to_rad(100e3);
  p.light_shift = 0.0;
  return p;
}

void EitParams::validate() const {
  if (!(gamma_opt > 0.0) || !std::isfinite(gamma_opt)) throw std::invalid_argument("gamma_opt: must be > 0");
  if (!(gamma_12 >= 0.0) || !std::isfinite(gamma_12)) throw std::invalid_argument("gamma_12: must be >= 0");
  if (!(rabi_pump >= 0.0) || !std::isfinite(rabi_pump)) throw std::invalid_argument("rabi_pump: must be >= 0");
  if (!std::isfinite(light_shift)) throw std::invalid_argument("light_shift: must be finite");
}

void BeamGeometry::validate() const {
  if (!(angle_rad >= 0.0 && angle_rad <= kMaxSmallAngle)) {
    throw std::invalid_argument("angle: must lie in [0, 0.01] rad (small-angle regime)");
  }
  if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m)) {
    throw std::invalid_argument("wavelength: must be > 0");
  }
}

double BeamGeometry::wavenumber() const { return units::kTwoPi / wavelength_m; }

double BeamGeometry::eit_wavelength() const {
  return angle_rad > 0.0 ? wavelength_m / angle_rad : std::numeric_limits<double>::infinity();
}

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::absorption: return "absorption";
    case SpectrumKind::transmission: return "transmission";
    case SpectrumKind::correlation_derived: return "correlation-derived";
  }
  return "unknown";
}

void Spectrum::validate() const {
  if (detuning.size() != values.size()) throw std::invalid_argument("spectrum: detuning/values length mismatch");
  for (std::size_t i = 0; i < detuning.size(); ++i) {
    if (!std::isfinite(detuning[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument("spectrum: non-finite sample at index " + std::to_string(i));
    }
    if (i > 0 && !(detuning[i] > detuning[i - 1])) {
      throw std::invalid_argument("spectrum: detuning grid must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
}

double residual_doppler_width(const BeamGeometry& geom, double v_th) {
  geom.validate();
  return geom.delta_q() * v_th;
}

double gaussian_fwhm(double sigma) { return 2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma; }

std::optional<double> narrowing_factor(const BeamGeometry& geom, const KineticsReport& kin) {
  if (kin.ballistic()) return std::nullopt;
  return residual_doppler_width(geom, kin.v_th) / kin.collision_rate;
}

double narrowing_factor_from_path(const BeamGeometry& geom, double mean_free_path_m) {
  geom.validate();
  return units::kTwoPi * geom.angle_rad * mean_free_path_m / geom.wavelength_m;
}

double excess_hwhm(const BeamGeometry& geom, const KineticsReport& kin) {
  geom.validate();
  return 2.0 * half_angle_term(geom, kin);
}

Spectrum s2_lineshape(std::span<const double> detuning_grid, const BeamGeometry& geom, const EitParams& eit,
                      const KineticsReport& kin) {
  geom.validate();
  eit.validate();
  if (detuning_grid.empty()) throw std::invalid_argument("s2_lineshape: empty detuning grid");

  const double a = half_angle_term(geom, kin);
  const double prefactor = -(eit.rabi_pump * eit.rabi_pump) / ((eit.gamma_opt + a) * (eit.gamma_opt + a));
  const double width = eit.gamma_12 + 2.0 * a;

  Spectrum s;
  s.kind = SpectrumKind::absorption;
  s.detuning.assign(detuning_grid.begin(), detuning_grid.end());
  s.values.reserve(s.detuning.size());
  for (double d : s.detuning) {
    const double x = d - eit.light_shift;
    s.values.push_back(prefactor * width / (x * x + width * width));
  }
  s.validate();
  s.warnings = validity_warnings(geom, eit, kin);
  return s;
}

double peak_amplitude_ratio(const BeamGeometry& geom, const EitParams& eit, const KineticsReport& kin) {
  geom.validate();
  eit.validate();
  if (!(eit.gamma_12 > 0.0)) {
    throw std::domain_error("peak_amplitude_ratio: undefined for gamma_12 = 0");
  }
  const double a = half_angle_term(geom, kin);
  const double optical = eit.gamma_opt / (eit.gamma_opt + a);
  return optical * optical * eit.gamma_12 / (eit.gamma_12 + 2.0 * a);
}

double theoretical_fwhm(const BeamGeometry& geom, const EitParams& eit, const KineticsReport& kin) {
  eit.validate();
  return 2.0 * (eit.gamma_12 + excess_hwhm(geom, kin));
}

std::vector<std::string> validity_warnings(const BeamGeometry& geom, const EitParams& eit,
                                           const KineticsReport& kin) {
  std::vector<std::string> out;
  if (!eit.low_power_broadening()) {
    out.emplace_back("pump power broadening Omega^2/Gamma exceeds Gamma_12; weak-pump lineshape may not apply");
  }
  if (auto eta = narrowing_factor(geom, kin); !eta) {
    out.emplace_back("ballistic medium: no Dicke narrowing");
  } else {
    if (*eta > kEtaWarnThreshold) {
      out.emplace_back("narrowing factor eta = " + std::to_string(*eta) +
                       " > 0.2; Dicke-regime expansion degrades toward the ballistic regime");
    }
    if (geom.angle_rad > 0.0 && !dicke_regime(kin, geom.wavelength_m, geom.angle_rad)) {
      out.emplace_back("mean free path outside lambda < L < lambda_EIT");
    }
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linear_grid: need at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("linear_grid: need hi > lo");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

}  // namespace eitdicke
