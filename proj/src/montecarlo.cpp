#include "splitpoint/montecarlo.hpp"

#include <cmath>

#include "splitpoint/error.hpp"
#include "splitpoint/inference.hpp"

namespace splitpoint {

std::vector<double> draw_sample(const DistributionModel& model, std::size_t n,
                                std::uint64_t seed, std::uint64_t rep) {
  StreamRng rng(seed, rep);
  std::vector<double> out(n);
  for (auto& v : out) v = model.sample(rng);
  return out;
}

namespace {

struct RepOutcome {
  SplitStatus status = SplitStatus::Crossing;
  double p_n = 0.0;
  bool has_ci = false;
  bool covered = false;
};

}  // namespace

SimulationReport run_simulation(const SimulationConfig& cfg) {
  if (!cfg.model) throw Error(ErrorCode::InvalidArgument, "simulation needs a model");
  if (cfg.reps == 0) throw Error(ErrorCode::InvalidArgument, "reps must be at least 1");
  if (cfg.n < 3) throw Error(ErrorCode::InvalidArgument, "n must be at least 3");
  if (!(cfg.a > 0.0 && cfg.a < cfg.b && cfg.b < 1.0)) {
    throw Error(ErrorCode::InvalidRange, "need 0 < a < b < 1");
  }
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "level must lie in (0, 1)");
  }
  const std::optional<double> truth = cfg.p0 ? cfg.p0 : cfg.model->declared_split_point();
  if (!truth) {
    throw Error(ErrorCode::MissingTruth, "model " + cfg.model->name() +
                                             " declares no split point and none was given");
  }
  const double p0 = *truth;
  const DistributionModel& model = *cfg.model;

  const auto outcomes = parallel_reps(cfg.reps, cfg.threads, [&](std::size_t rep) {
    const SortedSample sample(draw_sample(model, cfg.n, cfg.seed, rep));
    RepOutcome o;
    const SplitPointEstimate est = split_point(sample, cfg.a, cfg.b);
    o.status = est.status;
    o.p_n = est.p_n;
    if (est.status == SplitStatus::Crossing) {
      try {
        const SplitInference inf = infer(sample, est, cfg.level);
        o.has_ci = true;
        o.covered = inf.ci_lo <= p0 && p0 <= inf.ci_hi;
      } catch (const Error&) {
        o.has_ci = false;
      }
    }
    return o;
  });

  SimulationReport rep;
  rep.model = model.name();
  rep.n = cfg.n;
  rep.reps = cfg.reps;
  rep.seed = cfg.seed;
  rep.a = cfg.a;
  rep.b = cfg.b;
  rep.level = cfg.level;
  rep.p0 = p0;

  const double root_n = std::sqrt(static_cast<double>(cfg.n));
  double sum_pn = 0.0;
  double sum_scaled = 0.0;
  std::size_t covered = 0;
  for (const auto& o : outcomes) {
    if (o.status != SplitStatus::Crossing) {
      ++rep.boundary_count;
      ++rep.ci_failure_count;
      continue;
    }
    ++rep.crossing_count;
    sum_pn += o.p_n;
    sum_scaled += root_n * (o.p_n - p0);
    if (!o.has_ci) ++rep.ci_failure_count;
    if (o.covered) ++covered;
  }
  rep.coverage = static_cast<double>(covered) / static_cast<double>(cfg.reps);

  if (rep.crossing_count > 0) {
    const double c = static_cast<double>(rep.crossing_count);
    rep.mean_pn = sum_pn / c;
    rep.mean_scaled = sum_scaled / c;
    if (rep.crossing_count > 1) {
      double ss = 0.0;
      for (const auto& o : outcomes) {
        if (o.status != SplitStatus::Crossing) continue;
        const double d = root_n * (o.p_n - p0) - rep.mean_scaled;
        ss += d * d;
      }
      rep.var_scaled = ss / (c - 1.0);
    }
  }
  return rep;
}

double coverage_experiment(const SimulationConfig& cfg) { return run_simulation(cfg).coverage; }

double ecf_max_jump(const EcfCurve& curve, double lo_frac, double hi_frac) {
  const double n = static_cast<double>(curve.size());
  double best = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    const double kd = static_cast<double>(k);
    if (kd < lo_frac * n || kd > hi_frac * n) continue;
    best = std::max(best, std::abs(curve.at(k + 1) - curve.at(k)));
  }
  return best;
}

}  // namespace splitpoint
