#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eitdicke/lineshape.hpp"

namespace eitdicke {

struct RadialProfile {
  std::vector<double> radii;      // m, strictly increasing from 0
  std::vector<double> intensity;  // >= 0
  std::string label;

  void validate() const;
};

/// Thin-cell imaging model: each ray at radius r meets the pump at angle
/// theta(r) = theta_max r / w0 and is transmitted with
/// T_bg + C0 * peak_amplitude_ratio(theta(r)) on the EIT resonance.
struct ImagingConfig {
  double waist_radius = 660e-6;         // m
  double theta_max = 1.9e-3;            // rad at r = waist_radius; 0 = collimated
  double background_transmission = 0.5;  // off-resonance T_bg
  double eit_contrast = 0.3;            // C0, added transparency at theta = 0
  std::size_t n_radii = 512;

  void validate() const;
  bool operator==(const ImagingConfig&) const = default;
};

enum class TransmissionMode { off_resonance, eit_resonance };

struct TransparencySample {
  double radius = 0.0;  // m
  double theta = 0.0;   // rad
  double ratio = 0.0;
};

double theta_profile(double radius, const ImagingConfig& cfg);

/// Gaussian beam exp(-2 r^2 / w0^2) on n_radii points over [0, 3 w0].
RadialProfile input_profile(const ImagingConfig& cfg);

RadialProfile transmitted_profile(const RadialProfile& input, const ImagingConfig& cfg, const EitParams& eit,
                                  const KineticsReport& kin, double wavelength_m, TransmissionMode mode);

/// sqrt( int I r^3 dr / int I r dr ), trapezoidal. Throws std::domain_error on zero power.
double second_moment_width(const RadialProfile& profile);

/// Inverts the forward model sample by sample: ratio = T_bg (eit/off - 1) / C0.
/// Samples where the off-resonance image is below 1e-6 of its peak are dropped.
std::vector<TransparencySample> relative_transparency_curve(const RadialProfile& eit_image,
                                                            const RadialProfile& off_image,
                                                            const ImagingConfig& cfg);

/// Multiplicative Gaussian pixel noise of relative size `rel_sigma`, averaged
/// over the azimuthal ring each radial sample represents. With pixel pitch
/// equal to the radial grid step, the ring at index k holds
/// max(1, round(2 pi k)) pixels, so its averaged noise is rel_sigma / sqrt(pixels).
/// Pass azimuthal_average = false to apply rel_sigma to every sample directly.
/// Negative results are clamped to 0.
RadialProfile add_image_noise(const RadialProfile& profile, double rel_sigma, std::uint64_t seed,
                              bool azimuthal_average = true);

}  // namespace eitdicke
