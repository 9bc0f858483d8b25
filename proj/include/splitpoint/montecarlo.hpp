#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "splitpoint/sample.hpp"
#include "splitpoint/theory.hpp"

namespace splitpoint {

struct SimulationConfig {
  ModelPtr model;
  std::size_t n = 1000;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  double a = 0.1;
  double b = 0.9;
  double level = 0.95;
  /// True split point; falls back to the model's declared one.
  std::optional<double> p0;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SimulationReport {
  std::string model;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double a = 0.0;
  double b = 0.0;
  double level = 0.0;
  double p0 = 0.0;

  /// Moments over Crossing reps only.
  double mean_pn = 0.0;
  double mean_scaled = 0.0;  ///< mean of sqrt(n) (p_n - p0)
  double var_scaled = 0.0;   ///< unbiased variance of sqrt(n) (p_n - p0)
  /// Fraction of all reps whose interval covers p0; reps without an
  /// interval count as misses.
  double coverage = 0.0;
  std::size_t crossing_count = 0;
  std::size_t boundary_count = 0;
  std::size_t ci_failure_count = 0;
};

/// n draws from the model on the substream of replication `rep`.
std::vector<double> draw_sample(const DistributionModel& model, std::size_t n,
                                std::uint64_t seed, std::uint64_t rep);

/**
 * Evaluates fn(rep) for rep = 0..reps-1 on a pool of threads and returns the
 * results in rep order. fn must be a pure function of its rep index for the
 * output to be independent of the thread count.
 */
template <class Fn>
auto parallel_reps(std::size_t reps, unsigned threads, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(reps);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(reps, 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) out[r] = fn(r);
  };
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

/// Throws InvalidArgument for reps == 0 or n < 3, MissingTruth when no p0.
SimulationReport run_simulation(const SimulationConfig& cfg);

/// Fraction of reps whose level-`cfg.level` interval covers p0.
double coverage_experiment(const SimulationConfig& cfg);

/// max |g[k+1] - g[k]| over lo_frac * n <= k <= hi_frac * n.
double ecf_max_jump(const EcfCurve& curve, double lo_frac = 0.2, double hi_frac = 0.8);

}  // namespace splitpoint
