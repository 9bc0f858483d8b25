#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "splitpoint/sample.hpp"

namespace splitpoint {

/// Gaussian-kernel bandwidth 0.9 * min(sd, IQR / 1.34) * n^(-1/5), with the
/// IQR from linearly interpolated sample quantiles. Throws SampleTooSmall for
/// n < 3 and DegenerateBandwidth when the result is zero.
double kde_bandwidth(const SortedSample& sample);

/// Gaussian kernel density estimate at x with the default bandwidth.
double kde_density(const SortedSample& sample, double x);
double kde_density(const SortedSample& sample, double x, double bandwidth);

/// Plug-in estimates of the ingredients of the split-point CLT.
struct InfluenceTerms {
  double p_hat = 0.0;    ///< p_n
  std::size_t m = 0;     ///< rank of the quantile plug-in, k + 1
  double q_hat = 0.0;    ///< W_(m)
  double f_hat = 0.0;    ///< density estimate at q_hat
  double bandwidth = 0.0;
  double ql_hat = 0.0;   ///< mean of W_(1..m)
  double qu_hat = 0.0;   ///< mean of W_(m+1..n)
  double bl_hat = 0.0;   ///< mean of squares of W_(1..m)
  double bu_hat = 0.0;   ///< mean of squares of W_(m+1..n)
};

/**
 * Plug-in terms for a Crossing estimate: p = p_n, quantile W_(k+1), trimmed
 * first and second moments over ranks 1..k+1 and k+2..n, and a KDE at the
 * quantile. Throws NoCrossing for boundary estimates and DegenerateSample if
 * the upper group is empty.
 */
InfluenceTerms estimate_terms(const SortedSample& sample, const SplitPointEstimate& est);

/// Plug-in influence value theta(w) at p = p_hat.
double influence_value(const InfluenceTerms& terms, double w);

/// (1/p)(q - ql) - (1/(1-p))(q - qu) - 2/f with the plug-in terms.
double estimate_g_prime(const InfluenceTerms& terms);

/// Population variance (denominator n) of the influence values over the
/// sample. Throws DegenerateSample when it is not strictly positive.
double estimate_var_theta(const SortedSample& sample, const InfluenceTerms& terms);

struct SplitInference {
  SplitPointEstimate estimate;
  InfluenceTerms terms;
  double g_prime_hat = 0.0;
  double var_theta_hat = 0.0;
  double se = 0.0;
  double level = 0.0;
  double z_crit = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Wald interval around an existing Crossing estimate.
SplitInference infer(const SortedSample& sample, const SplitPointEstimate& est, double level);

/// Split point on [a, b] and its Wald interval. Throws NoCrossing for
/// boundary estimates, UnstableDerivative when the slope estimate is >= 0.
SplitInference confidence_interval(const SortedSample& sample, double a, double b,
                                   double level);

enum class TestOutcome { Tested, RejectedByBoundary };

std::string_view to_string(TestOutcome outcome);

struct ClusterTestResult {
  TestOutcome outcome = TestOutcome::Tested;
  SplitPointEstimate estimate;
  /// Present when outcome is Tested.
  std::optional<SplitInference> inference;
  double null_split = 0.5;
  double alpha = 0.05;
  /// +/-inf for boundary outcomes.
  double z = 0.0;
  double p_value = 1.0;
  bool reject = false;
};

/**
 * Wald test of H0: p0 = null_split (0.5 for symmetric unimodal laws). A split
 * point outside [a, b] contradicts the null and is rejected outright.
 */
ClusterTestResult no_cluster_test(const SortedSample& sample, double a, double b,
                                  double null_split = 0.5, double alpha = 0.05);

}  // namespace splitpoint
