#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eitdicke/lineshape.hpp"

namespace eitdicke {

/// Monte-Carlo model of the two-photon phase exp(i dq (z(t) - z(0))) for atoms
/// undergoing strong (fully rethermalizing) velocity-changing collisions.
struct McConfig {
  double delta_q = 0.0;          // rad/m, |q1 - q2|
  double v_th = 0.0;             // m/s
  double collision_rate = 0.0;   // 1/s, 0 = free flight
  double gamma_12 = 0.0;         // rad/s, deterministic envelope
  std::size_t n_trajectories = 100000;
  double t_max = 0.0;            // s; use default_t_max() when unsure
  std::size_t n_time_samples = 2048;
  std::uint64_t seed = 1;

  // Execution settings; they never change the result.
  unsigned workers = 0;          // 0 = hardware concurrency
  double work_budget = 4e9;      // cap on n_trajectories * n_time_samples

  void validate() const;
};

struct CorrelationTrace {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
  std::vector<double> statistical_error;

  std::size_t size() const { return times.size(); }
};

/// Ensemble result plus contiguous sub-ensembles (batches) for error bars on
/// derived quantities. `total` is bit-identical to simulate_correlation().
struct McEnsemble {
  CorrelationTrace total;
  std::vector<CorrelationTrace> batches;
};

/// Envelope decay rate used for default horizons: Gamma_12 plus the motional
/// rate (dq v_th)^2 / gamma, or dq v_th for free flight.
double correlation_decay_rate(double delta_q, double v_th, double collision_rate, double gamma_12);

/// 10 / correlation_decay_rate(). Throws if nothing decays.
double default_t_max(double delta_q, double v_th, double collision_rate, double gamma_12);

CorrelationTrace simulate_correlation(const McConfig& cfg);

/// As simulate_correlation(), also returning up to `n_batches` sub-ensemble traces.
McEnsemble simulate_ensemble(const McConfig& cfg, std::size_t n_batches);

/// Runs several configurations over one shared set of trajectories. The
/// configs must agree on v_th, collision_rate, seed and n_trajectories; they
/// may differ in delta_q, gamma_12, t_max and n_time_samples. Result i is
/// bit-identical to simulate_ensemble(cfgs[i], n_batches), at the cost of a
/// single pass over the longest horizon.
std::vector<McEnsemble> simulate_ensembles(std::span<const McConfig> cfgs, std::size_t n_batches);

/// Closed-form gamma = 0 trace exp(-(dq v_th t)^2 / 2 - Gamma_12 t).
CorrelationTrace ballistic_reference(double delta_q, double v_th, double gamma_12, std::span<const double> times);

/// Re int_0^T trace(t) exp(i Delta t) dt by the trapezoidal rule, where T is
/// the first sample with |trace| < 1e-4 or the end of the trace. Adds a
/// warning when the trace is cut off above 1e-2.
Spectrum spectrum_from_correlation(const CorrelationTrace& trace, std::span<const double> detuning_grid);

}  // namespace eitdicke
