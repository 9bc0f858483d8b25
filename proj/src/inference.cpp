#include "splitpoint/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "splitpoint/error.hpp"
#include "splitpoint/normal.hpp"

namespace splitpoint {

std::string_view to_string(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::Tested: return "tested";
    case TestOutcome::RejectedByBoundary: return "rejected_by_boundary";
  }
  return "unknown";
}

namespace {

// Linear interpolation between order statistics at (n-1) * prob.
double interpolated_quantile(const SortedSample& s, double prob) {
  const double h = static_cast<double>(s.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  const double x_lo = s.order_stat(lo + 1);
  if (lo + 1 >= s.size()) return x_lo;
  return x_lo + frac * (s.order_stat(lo + 2) - x_lo);
}

double sample_sd(const SortedSample& s) {
  const double mu = s.mean();
  double ss = 0.0;
  for (double v : s.values()) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(s.size() - 1));
}

}  // namespace

double kde_bandwidth(const SortedSample& sample) {
  if (sample.size() < 3) {
    throw Error(ErrorCode::SampleTooSmall, "density estimate needs at least 3 values");
  }
  const double iqr = interpolated_quantile(sample, 0.75) - interpolated_quantile(sample, 0.25);
  const double spread = std::min(sample_sd(sample), iqr / 1.34);
  const double h = 0.9 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
  if (!(h > 0.0)) {
    throw Error(ErrorCode::DegenerateBandwidth, "bandwidth is zero (sd or IQR vanishes)");
  }
  return h;
}

double kde_density(const SortedSample& sample, double x) {
  return kde_density(sample, x, kde_bandwidth(sample));
}

double kde_density(const SortedSample& sample, double x, double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw Error(ErrorCode::DegenerateBandwidth, "bandwidth must be positive");
  }
  double acc = 0.0;
  for (double v : sample.values()) acc += normal_pdf((x - v) / bandwidth);
  return acc / (static_cast<double>(sample.size()) * bandwidth);
}

InfluenceTerms estimate_terms(const SortedSample& sample, const SplitPointEstimate& est) {
  if (est.status != SplitStatus::Crossing || est.k == 0) {
    throw Error(ErrorCode::NoCrossing, std::string("split point status is ") +
                                           std::string(to_string(est.status)));
  }
  const std::size_t n = sample.size();
  const std::size_t m = est.k + 1;
  if (m >= n) {
    throw Error(ErrorCode::DegenerateSample,
                "no observations above quantile rank " + std::to_string(m));
  }
  const double md = static_cast<double>(m);
  const double upper = static_cast<double>(n - m);

  InfluenceTerms t;
  t.p_hat = est.p_n;
  t.m = m;
  t.q_hat = sample.order_stat(m);
  t.ql_hat = sample.head_sum(m) / md;
  t.qu_hat = sample.tail_sum(m) / upper;
  t.bl_hat = sample.head_sumsq(m) / md;
  t.bu_hat = sample.tail_sumsq(m) / upper;
  t.bandwidth = kde_bandwidth(sample);
  t.f_hat = kde_density(sample, t.q_hat, t.bandwidth);
  return t;
}

double influence_value(const InfluenceTerms& t, double w) {
  const double d = w - t.q_hat;
  if (w < t.q_hat) return d / t.p_hat + 2.0 / t.f_hat;
  return d / (1.0 - t.p_hat);
}

double estimate_g_prime(const InfluenceTerms& t) {
  const double p = t.p_hat;
  return (t.q_hat - t.ql_hat) / p - (t.q_hat - t.qu_hat) / (1.0 - p) - 2.0 / t.f_hat;
}

double estimate_var_theta(const SortedSample& sample, const InfluenceTerms& terms) {
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  for (double w : sample.values()) mean += influence_value(terms, w);
  mean /= n;
  double ss = 0.0;
  for (double w : sample.values()) {
    const double d = influence_value(terms, w) - mean;
    ss += d * d;
  }
  const double var = ss / n;
  if (!(var > 0.0) || !std::isfinite(var)) {
    throw Error(ErrorCode::DegenerateSample, "influence values have zero variance");
  }
  return var;
}

SplitInference infer(const SortedSample& sample, const SplitPointEstimate& est, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "level must lie in (0, 1)");
  }
  SplitInference out;
  out.estimate = est;
  out.level = level;
  out.terms = estimate_terms(sample, est);
  out.g_prime_hat = estimate_g_prime(out.terms);
  if (!(out.g_prime_hat < 0.0)) {
    throw Error(ErrorCode::UnstableDerivative,
                "estimated slope of the cross-over function is not negative");
  }
  out.var_theta_hat = estimate_var_theta(sample, out.terms);
  const double n = static_cast<double>(sample.size());
  out.se = std::sqrt(out.var_theta_hat / (n * out.g_prime_hat * out.g_prime_hat));
  out.z_crit = normal_quantile(0.5 * (1.0 + level));
  out.ci_lo = est.p_n - out.z_crit * out.se;
  out.ci_hi = est.p_n + out.z_crit * out.se;
  return out;
}

SplitInference confidence_interval(const SortedSample& sample, double a, double b,
                                   double level) {
  return infer(sample, split_point(sample, a, b), level);
}

ClusterTestResult no_cluster_test(const SortedSample& sample, double a, double b,
                                  double null_split, double alpha) {
  if (!(null_split > a && null_split < b)) {
    throw Error(ErrorCode::InvalidArgument, "null split must lie strictly inside (a, b)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  ClusterTestResult res;
  res.null_split = null_split;
  res.alpha = alpha;
  res.estimate = split_point(sample, a, b);

  if (res.estimate.status != SplitStatus::Crossing) {
    res.outcome = TestOutcome::RejectedByBoundary;
    const double inf = std::numeric_limits<double>::infinity();
    res.z = res.estimate.status == SplitStatus::AllPositive ? inf : -inf;
    res.p_value = 0.0;
    res.reject = true;
    return res;
  }

  res.inference = infer(sample, res.estimate, 1.0 - alpha);
  res.z = (res.estimate.p_n - null_split) / res.inference->se;
  res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(res.z)));
  res.reject = res.p_value < alpha;
  return res;
}

}  // namespace splitpoint
