#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eitdicke/lineshape.hpp"

namespace eitdicke {

/// Result of fitting A w^2 / ((x - x0)^2 + w^2) + B. Units follow the
/// spectrum's detuning axis.
struct LorentzianFit {
  double center = 0.0;
  double hwhm = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_norm = 0.0;  // sqrt of the sum of squared residuals
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;

  double fwhm() const { return 2.0 * hwhm; }
  double operator()(double x) const;
};

struct FitOptions {
  int max_iterations = 100;
  double step_tolerance = 1e-9;
  double initial_damping = 1e-3;
};

/// Damped least-squares (Levenberg-Marquardt) Lorentzian fit with analytic
/// derivatives, seeded from the data. Needs >= 8 samples; throws
/// DegenerateDataError when all values are equal. Non-convergence is reported
/// through `converged`, with the best parameters found.
LorentzianFit fit_lorentzian(const Spectrum& spec, const FitOptions& options = {});

/// Model-free full width at half maximum. The baseline is the mean of the
/// outer 10% of samples on each side; half-level crossings are linearly
/// interpolated. Throws PeakShapeError when the peak reaches the grid edge or
/// the above-half-level region is not a single contiguous run.
double numeric_fwhm(const Spectrum& spec);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of ln y on ln x. All inputs must be > 0, n >= 3.
PowerLawFit power_law_exponent(std::span<const double> xs, std::span<const double> ys);

}  // namespace eitdicke
