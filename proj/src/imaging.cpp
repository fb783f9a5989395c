#include "eitdicke/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

#include "eitdicke/philox.hpp"
#include "eitdicke/units.hpp"

namespace eitdicke {

namespace {

constexpr double kGridExtentInWaists = 3.0;
constexpr double kDropLevel = 1e-6;

}  // namespace

void RadialProfile::validate() const {
  if (radii.size() != intensity.size()) throw std::invalid_argument("radial profile: length mismatch");
  if (radii.empty() || radii.front() != 0.0) throw std::invalid_argument("radial profile: grid must start at 0");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("radial profile: radii not increasing");
    if (!std::isfinite(intensity[i]) || intensity[i] < 0.0) {
      throw std::invalid_argument("radial profile: intensity must be finite and >= 0");
    }
  }
}

void ImagingConfig::validate() const {
  if (!(waist_radius > 0.0)) throw std::invalid_argument("waist_radius: must be > 0");
  if (!(theta_max >= 0.0)) throw std::invalid_argument("theta_max: must be >= 0");
  if (!(background_transmission > 0.0 && background_transmission <= 1.0)) {
    throw std::invalid_argument("background_transmission: must lie in (0, 1]");
  }
  if (!(eit_contrast >= 0.0 && eit_contrast <= 1.0 - background_transmission)) {
    throw std::invalid_argument("eit_contrast: must lie in [0, 1 - background_transmission]");
  }
  if (n_radii < 2) throw std::invalid_argument("n_radii: must be >= 2");
}

double theta_profile(double radius, const ImagingConfig& cfg) {
  if (!(radius >= 0.0)) throw std::domain_error("theta_profile: radius must be >= 0");
  return cfg.theta_max * radius / cfg.waist_radius;
}

RadialProfile input_profile(const ImagingConfig& cfg) {
  cfg.validate();
  RadialProfile p;
  p.label = "input";
  p.radii = linear_grid(0.0, kGridExtentInWaists * cfg.waist_radius, cfg.n_radii);
  p.intensity.reserve(p.radii.size());
  for (double r : p.radii) {
    const double x = r / cfg.waist_radius;
    p.intensity.push_back(std::exp(-2.0 * x * x));
  }
  return p;
}

RadialProfile transmitted_profile(const RadialProfile& input, const ImagingConfig& cfg, const EitParams& eit,
                                  const KineticsReport& kin, double wavelength_m, TransmissionMode mode) {
  input.validate();
  cfg.validate();
  RadialProfile out;
  out.radii = input.radii;
  out.intensity.resize(input.intensity.size());
  if (mode == TransmissionMode::off_resonance) {
    out.label = "off_resonance";
    for (std::size_t i = 0; i < out.intensity.size(); ++i) {
      out.intensity[i] = cfg.background_transmission * input.intensity[i];
    }
    return out;
  }
  out.label = "eit";
  for (std::size_t i = 0; i < out.intensity.size(); ++i) {
    const BeamGeometry geom{theta_profile(input.radii[i], cfg), wavelength_m};
    const double transmission =
        cfg.background_transmission + cfg.eit_contrast * peak_amplitude_ratio(geom, eit, kin);
    out.intensity[i] = input.intensity[i] * transmission;
  }
  return out;
}

double second_moment_width(const RadialProfile& profile) {
  profile.validate();
  double m0 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 1; i < profile.radii.size(); ++i) {
    const double r0 = profile.radii[i - 1];
    const double r1 = profile.radii[i];
    const double f0 = profile.intensity[i - 1] * r0;
    const double f1 = profile.intensity[i] * r1;
    const double h = r1 - r0;
    m0 += 0.5 * h * (f0 + f1);
    m2 += 0.5 * h * (f0 * r0 * r0 + f1 * r1 * r1);
  }
  if (!(m0 > 0.0)) throw std::domain_error("second_moment_width: profile carries no power");
  return std::sqrt(m2 / m0);
}

std::vector<TransparencySample> relative_transparency_curve(const RadialProfile& eit_image,
                                                            const RadialProfile& off_image,
                                                            const ImagingConfig& cfg) {
  eit_image.validate();
  off_image.validate();
  cfg.validate();
  if (eit_image.radii != off_image.radii) throw std::invalid_argument("relative_transparency_curve: grids differ");
  if (!(cfg.eit_contrast > 0.0)) throw std::domain_error("relative_transparency_curve: zero EIT contrast");

  const double peak = *std::max_element(off_image.intensity.begin(), off_image.intensity.end());
  std::vector<TransparencySample> curve;
  for (std::size_t i = 0; i < off_image.radii.size(); ++i) {
    const double off = off_image.intensity[i];
    if (!(off > kDropLevel * peak)) continue;
    const double relative = eit_image.intensity[i] / off;
    curve.push_back({off_image.radii[i], theta_profile(off_image.radii[i], cfg),
                     cfg.background_transmission * (relative - 1.0) / cfg.eit_contrast});
  }
  return curve;
}

RadialProfile add_image_noise(const RadialProfile& profile, double rel_sigma, std::uint64_t seed,
                              bool azimuthal_average) {
  profile.validate();
  if (!(rel_sigma >= 0.0)) throw std::invalid_argument("add_image_noise: rel_sigma must be >= 0");
  auto rng = Xoshiro256pp::for_stream(seed, 0);
  boost::random::normal_distribution<double> unit(0.0, 1.0);
  RadialProfile out = profile;
  for (std::size_t k = 0; k < out.intensity.size(); ++k) {
    double sigma = rel_sigma;
    if (azimuthal_average) {
      const double pixels = std::max(1.0, std::round(units::kTwoPi * static_cast<double>(k)));
      sigma /= std::sqrt(pixels);
    }
    out.intensity[k] = std::max(0.0, out.intensity[k] * (1.0 + sigma * unit(rng)));
  }
  return out;
}

}  // namespace eitdicke
