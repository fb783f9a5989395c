#include "eitdicke/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "eitdicke/errors.hpp"
#include "eitdicke/philox.hpp"

namespace eitdicke {

namespace {

// Trajectories are reduced in fixed index blocks so the summation order, and
// hence every bit of the result, is independent of the worker count.
constexpr std::size_t kMaxBlocks = 256;
constexpr double kTruncationLevel = 1e-4;
constexpr double kTruncationWarnLevel = 1e-2;

// Per-block partial sums, one re/im pair of vectors per configuration.
struct BlockSums {
  std::vector<std::vector<double>> re;
  std::vector<std::vector<double>> im;
};

// One sample time of one configuration, in the merged time order.
struct SampleEvent {
  double time;
  std::uint32_t probe;
  std::uint32_t index;
};

std::vector<double> time_grid(const McConfig& cfg) {
  std::vector<double> t(cfg.n_time_samples);
  const double step = cfg.t_max / static_cast<double>(cfg.n_time_samples - 1);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = step * static_cast<double>(k);
  t.back() = cfg.t_max;
  return t;
}

std::size_t block_begin(std::size_t block, std::size_t n_blocks, std::size_t n_items) {
  return block * n_items / n_blocks;
}

void run_trajectory(const McConfig& shared, std::span<const double> delta_q, std::uint64_t index,
                    std::span<const SampleEvent> events, BlockSums& acc) {
  auto rng = Xoshiro256pp::for_stream(shared.seed, index);
  boost::random::normal_distribution<double> velocity(0.0, shared.v_th);
  const bool collisional = shared.collision_rate > 0.0;
  boost::random::exponential_distribution<double> gap(collisional ? shared.collision_rate : 1.0);

  // Position z is only advanced at collisions, so the state after handling
  // all collisions up to a sample time does not depend on which other
  // sample times were visited.
  double t = 0.0;
  double z = 0.0;
  double v = velocity(rng);
  double next = collisional ? gap(rng) : std::numeric_limits<double>::infinity();

  for (const auto& e : events) {
    while (next <= e.time) {
      z += v * (next - t);
      t = next;
      v = velocity(rng);
      next = t + gap(rng);
    }
    const double phase = delta_q[e.probe] * (z + v * (e.time - t));
    acc.re[e.probe][e.index] += std::cos(phase);
    acc.im[e.probe][e.index] += std::sin(phase);
  }
}

std::vector<BlockSums> simulate_blocks(const McConfig& shared, std::span<const double> delta_q,
                                       std::span<const std::vector<double>> grids) {
  std::vector<SampleEvent> events;
  for (std::size_t p = 0; p < grids.size(); ++p) {
    for (std::size_t k = 0; k < grids[p].size(); ++k) {
      events.push_back({grids[p][k], static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k)});
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const SampleEvent& a, const SampleEvent& b) { return a.time < b.time; });

  const std::size_t n_blocks = std::min(shared.n_trajectories, kMaxBlocks);
  std::vector<BlockSums> blocks(n_blocks);

  std::atomic<std::size_t> next_block{0};
  auto worker = [&] {
    for (std::size_t b = next_block++; b < n_blocks; b = next_block++) {
      BlockSums acc;
      for (const auto& g : grids) {
        acc.re.emplace_back(g.size(), 0.0);
        acc.im.emplace_back(g.size(), 0.0);
      }
      const std::size_t lo = block_begin(b, n_blocks, shared.n_trajectories);
      const std::size_t hi = block_begin(b + 1, n_blocks, shared.n_trajectories);
      for (std::size_t i = lo; i < hi; ++i) run_trajectory(shared, delta_q, i, events, acc);
      blocks[b] = std::move(acc);
    }
  };

  unsigned n_workers = shared.workers != 0 ? shared.workers : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, n_blocks));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  return blocks;
}

CorrelationTrace reduce(const McConfig& cfg, std::span<const double> times, std::span<const BlockSums> blocks,
                        std::size_t probe, std::size_t n_trajectories) {
  const std::size_t n = times.size();
  std::vector<double> re(n, 0.0);
  std::vector<double> im(n, 0.0);
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < n; ++k) {
      re[k] += b.re[probe][k];
      im[k] += b.im[probe][k];
    }
  }

  CorrelationTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.values.resize(n);
  trace.statistical_error.resize(n);
  const double count = static_cast<double>(n_trajectories);
  for (std::size_t k = 0; k < n; ++k) {
    const double envelope = std::exp(-cfg.gamma_12 * times[k]);
    const double mr = re[k] / count;
    const double mi = im[k] / count;
    // Every sample has unit modulus, so the sample variance of the complex
    // mean is (1 - |m|^2) * N / (N - 1).
    const double spread = std::max(0.0, 1.0 - (mr * mr + mi * mi));
    const double stderr_k = n_trajectories > 1 ? std::sqrt(spread / (count - 1.0)) : 0.0;
    trace.values[k] = {mr * envelope, mi * envelope};
    trace.statistical_error[k] = stderr_k * envelope;
  }
  trace.values[0] = {1.0, 0.0};
  return trace;
}

}  // namespace

void McConfig::validate() const {
  if (n_trajectories < 1) throw std::invalid_argument("n_trajectories: must be >= 1");
  if (n_time_samples < 2) throw std::invalid_argument("n_time_samples: must be >= 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max: must be > 0");
  if (!(delta_q >= 0.0) || !std::isfinite(delta_q)) throw std::invalid_argument("delta_q: must be >= 0");
  if (!(v_th >= 0.0) || !std::isfinite(v_th)) throw std::invalid_argument("v_th: must be >= 0");
  if (!(collision_rate >= 0.0) || !std::isfinite(collision_rate)) {
    throw std::invalid_argument("collision_rate: must be >= 0");
  }
  if (!(gamma_12 >= 0.0) || !std::isfinite(gamma_12)) throw std::invalid_argument("gamma_12: must be >= 0");
  const double work = static_cast<double>(n_trajectories) * static_cast<double>(n_time_samples);
  if (work > work_budget) {
    throw ResourceLimitError("Monte-Carlo work " + std::to_string(work) + " trajectory-samples exceeds budget " +
                             std::to_string(work_budget));
  }
}

double correlation_decay_rate(double delta_q, double v_th, double collision_rate, double gamma_12) {
  const double doppler = delta_q * v_th;
  const double motional = collision_rate > 0.0 ? doppler * doppler / collision_rate : doppler;
  return gamma_12 + motional;
}

double default_t_max(double delta_q, double v_th, double collision_rate, double gamma_12) {
  const double rate = correlation_decay_rate(delta_q, v_th, collision_rate, gamma_12);
  if (!(rate > 0.0)) throw std::domain_error("default_t_max: correlation does not decay");
  return 10.0 / rate;
}

CorrelationTrace simulate_correlation(const McConfig& cfg) { return simulate_ensemble(cfg, 0).total; }

McEnsemble simulate_ensemble(const McConfig& cfg, std::size_t n_batches) {
  return std::move(simulate_ensembles(std::span(&cfg, 1), n_batches).front());
}

std::vector<McEnsemble> simulate_ensembles(std::span<const McConfig> cfgs, std::size_t n_batches) {
  if (cfgs.empty()) return {};
  const McConfig& shared = cfgs.front();
  std::vector<double> delta_q;
  std::vector<std::vector<double>> grids;
  double total_work = 0.0;
  for (const auto& cfg : cfgs) {
    cfg.validate();
    if (cfg.v_th != shared.v_th || cfg.collision_rate != shared.collision_rate || cfg.seed != shared.seed ||
        cfg.n_trajectories != shared.n_trajectories) {
      throw std::invalid_argument("simulate_ensembles: configs must share v_th, collision_rate, seed, n_trajectories");
    }
    total_work += static_cast<double>(cfg.n_trajectories) * static_cast<double>(cfg.n_time_samples);
    delta_q.push_back(cfg.delta_q);
    grids.push_back(time_grid(cfg));
  }
  if (total_work > shared.work_budget) {
    throw ResourceLimitError("Monte-Carlo work " + std::to_string(total_work) +
                             " trajectory-samples exceeds budget " + std::to_string(shared.work_budget));
  }

  const auto blocks = simulate_blocks(shared, delta_q, grids);
  const std::size_t n_blocks = blocks.size();
  const std::size_t n_batch = std::min(n_batches, n_blocks);

  std::vector<McEnsemble> out(cfgs.size());
  for (std::size_t p = 0; p < cfgs.size(); ++p) {
    out[p].total = reduce(cfgs[p], grids[p], blocks, p, shared.n_trajectories);
    for (std::size_t j = 0; j < n_batch; ++j) {
      const std::size_t lo = block_begin(j, n_batch, n_blocks);
      const std::size_t hi = block_begin(j + 1, n_batch, n_blocks);
      const std::size_t first = block_begin(lo, n_blocks, shared.n_trajectories);
      const std::size_t last = block_begin(hi, n_blocks, shared.n_trajectories);
      out[p].batches.push_back(reduce(cfgs[p], grids[p], std::span(blocks).subspan(lo, hi - lo), p, last - first));
    }
  }
  return out;
}

CorrelationTrace ballistic_reference(double delta_q, double v_th, double gamma_12, std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("ballistic_reference: empty time grid");
  CorrelationTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.values.reserve(times.size());
  const double sigma = delta_q * v_th;
  for (double t : times) {
    trace.values.emplace_back(std::exp(-0.5 * sigma * sigma * t * t - gamma_12 * t), 0.0);
  }
  trace.statistical_error.assign(times.size(), 0.0);
  return trace;
}

Spectrum spectrum_from_correlation(const CorrelationTrace& trace, std::span<const double> detuning_grid) {
  const std::size_t n = trace.size();
  if (n < 2 || trace.values.size() != n) throw std::invalid_argument("spectrum_from_correlation: bad trace");
  if (detuning_grid.empty()) throw std::invalid_argument("spectrum_from_correlation: empty detuning grid");

  std::size_t used = n;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(trace.values[k]) < kTruncationLevel) {
      used = k + 1;
      break;
    }
  }

  Spectrum s;
  s.kind = SpectrumKind::correlation_derived;
  s.detuning.assign(detuning_grid.begin(), detuning_grid.end());
  s.values.resize(s.detuning.size());
  for (std::size_t j = 0; j < s.detuning.size(); ++j) {
    const double d = s.detuning[j];
    double integral = 0.0;
    double previous = trace.values[0].real();
    for (std::size_t k = 1; k < used; ++k) {
      const double t = trace.times[k];
      const auto& c = trace.values[k];
      const double current = c.real() * std::cos(d * t) - c.imag() * std::sin(d * t);
      integral += 0.5 * (previous + current) * (t - trace.times[k - 1]);
      previous = current;
    }
    s.values[j] = integral;
  }
  if (used == n && std::abs(trace.values.back()) > kTruncationWarnLevel) {
    s.warnings.emplace_back("correlation still at " + std::to_string(std::abs(trace.values.back())) +
                            " at t_max; spectrum has truncation bias");
  }
  s.validate();
  return s;
}

}  // namespace eitdicke
