#include "eitdicke/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "eitdicke/errors.hpp"

namespace eitdicke {

namespace {

constexpr std::size_t kMinFitSamples = 8;

using Params = Eigen::Vector4d;  // center, hwhm, amplitude, offset

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double model(const Params& p, double x) {
  const double dx = x - p[0];
  const double w2 = p[1] * p[1];
  return p[2] * w2 / (dx * dx + w2) + p[3];
}

double sum_squares(const Params& p, const Spectrum& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = s.values[i] - model(p, s.detuning[i]);
    acc += r * r;
  }
  return acc;
}

// Index of the sample farthest from `baseline`; lowest index on ties.
std::size_t extremum_index(const std::vector<double>& values, double baseline) {
  std::size_t best = 0;
  double best_dev = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dev = std::abs(values[i] - baseline);
    if (dev > best_dev) {
      best_dev = dev;
      best = i;
    }
  }
  return best;
}

void reject_flat(const Spectrum& s) {
  const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  if (*lo == *hi) throw DegenerateDataError("spectrum is flat: nothing to fit");
}

}  // namespace

double LorentzianFit::operator()(double x) const {
  return model(Params(center, hwhm, amplitude, offset), x);
}

double numeric_fwhm(const Spectrum& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  if (n < 5) throw PeakShapeError("numeric_fwhm: too few samples");
  reject_flat(spec);

  const std::size_t edge = std::max<std::size_t>(1, n / 10);
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i = 0; i < edge; ++i) {
    left += spec.values[i];
    right += spec.values[n - 1 - i];
  }
  const double baseline = 0.5 * (left + right) / static_cast<double>(edge);

  const std::size_t peak = extremum_index(spec.values, baseline);
  if (peak == 0 || peak == n - 1) throw PeakShapeError("numeric_fwhm: peak touches the grid boundary");

  // Work with the excursion above baseline, sign-normalized so the peak is positive.
  const double sign = spec.values[peak] >= baseline ? 1.0 : -1.0;
  const double height = sign * (spec.values[peak] - baseline);
  auto excursion = [&](std::size_t i) { return sign * (spec.values[i] - baseline) - 0.5 * height; };

  std::size_t lo = peak;
  while (lo > 0 && excursion(lo - 1) >= 0.0) --lo;
  std::size_t hi = peak;
  while (hi + 1 < n && excursion(hi + 1) >= 0.0) ++hi;
  if (lo == 0 || hi == n - 1) throw PeakShapeError("numeric_fwhm: half level not reached inside the grid");

  for (std::size_t i = 0; i < n; ++i) {
    if ((i < lo || i > hi) && excursion(i) >= 0.0) {
      throw PeakShapeError("numeric_fwhm: multiple peaks above half maximum");
    }
  }

  auto crossing = [&](std::size_t outside, std::size_t inside) {
    const double a = excursion(outside);
    const double b = excursion(inside);
    const double frac = a / (a - b);
    return spec.detuning[outside] + frac * (spec.detuning[inside] - spec.detuning[outside]);
  };
  return crossing(hi + 1, hi) - crossing(lo - 1, lo);
}

LorentzianFit fit_lorentzian(const Spectrum& spec, const FitOptions& options) {
  spec.validate();
  const std::size_t n = spec.size();
  if (n < kMinFitSamples) {
    throw std::invalid_argument("fit_lorentzian: need at least 8 samples, got " + std::to_string(n));
  }
  reject_flat(spec);

  // Seed: baseline from the outer 20%, extremum for center and amplitude,
  // width from the model-free estimate.
  const std::size_t edge = std::max<std::size_t>(1, n / 10);
  std::vector<double> outer(spec.values.begin(), spec.values.begin() + static_cast<std::ptrdiff_t>(edge));
  outer.insert(outer.end(), spec.values.end() - static_cast<std::ptrdiff_t>(edge), spec.values.end());
  const double baseline = median(outer);
  const std::size_t peak = extremum_index(spec.values, baseline);
  const double span = spec.detuning.back() - spec.detuning.front();

  double width = span / 10.0;
  try {
    width = 0.5 * numeric_fwhm(spec);
  } catch (const PeakShapeError&) {
  }

  Params p(spec.detuning[peak], width, spec.values[peak] - baseline, baseline);
  double cost = sum_squares(p, spec);
  double damping = options.initial_damping;

  LorentzianFit fit;
  Eigen::Matrix<double, Eigen::Dynamic, 4> jac(n, 4);
  Eigen::VectorXd resid(n);

  for (int it = 1; it <= options.max_iterations; ++it) {
    fit.iterations = it;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = spec.detuning[i] - p[0];
      const double w2 = p[1] * p[1];
      const double den = dx * dx + w2;
      const double shape = w2 / den;
      const auto row = static_cast<Eigen::Index>(i);
      jac(row, 0) = p[2] * w2 * 2.0 * dx / (den * den);
      jac(row, 1) = p[2] * 2.0 * p[1] * dx * dx / (den * den);
      jac(row, 2) = shape;
      jac(row, 3) = 1.0;
      resid[row] = spec.values[i] - (p[2] * shape + p[3]);
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * resid;

    Eigen::Matrix4d lhs = jtj;
    lhs.diagonal() += damping * jtj.diagonal();
    const Eigen::Vector4d step = lhs.ldlt().solve(jtr);
    const Params trial = p + step;
    const double trial_cost = sum_squares(trial, spec);

    // Relative step, with scales that stay meaningful when a parameter is 0.
    const double scale_x = std::max(std::abs(p[1]), std::abs(p[0]));
    const double scale_y = std::max(std::abs(p[2]), std::abs(p[3]));
    const double rel = std::max({std::abs(step[0]) / scale_x, std::abs(step[1]) / std::abs(p[1]),
                                 std::abs(step[2]) / scale_y, std::abs(step[3]) / scale_y});

    if (std::isfinite(trial_cost) && trial_cost <= cost) {
      p = trial;
      cost = trial_cost;
      damping = std::max(damping / 10.0, 1e-15);
    } else {
      damping *= 10.0;
    }
    if (!(rel >= options.step_tolerance) || cost == 0.0) {
      fit.converged = true;
      break;
    }
  }

  fit.center = p[0];
  fit.hwhm = std::abs(p[1]);
  fit.amplitude = p[2];
  fit.offset = p[3];
  fit.residual_norm = std::sqrt(cost);
  if (fit.converged && !(fit.hwhm > 0.0)) fit.converged = false;
  if (span < 3.0 * fit.fwhm()) {
    fit.warnings.emplace_back("detuning grid spans less than 3x the fitted FWHM");
  }
  return fit;
}

PowerLawFit power_law_exponent(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("power_law_exponent: length mismatch");
  if (xs.size() < 3) throw std::invalid_argument("power_law_exponent: need at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0;
  double sy = 0.0;
  std::vector<double> lx(xs.size());
  std::vector<double> ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw std::domain_error("power_law_exponent: inputs must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("power_law_exponent: all x equal");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace eitdicke
