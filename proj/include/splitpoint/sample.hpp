#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace splitpoint {

/**
 * Ascending copy of a univariate sample together with prefix sums of the
 * values and of their squares. Every trimmed mean used by the split-point
 * machinery is an O(1) lookup into these arrays.
 *
 * Order statistics are addressed 1-based (`order_stat(1)` is the minimum) to
 * keep index arithmetic aligned with the usual W_(j) notation.
 */
class SortedSample {
 public:
  /// Throws SampleTooSmall for fewer than two values, NonFiniteInput for NaN/inf.
  explicit SortedSample(std::span<const double> data);

  std::size_t size() const noexcept { return values_.size(); }

  const std::vector<double>& values() const noexcept { return values_; }
  /// prefix_sum()[k] is the sum of the k smallest values; length n + 1.
  const std::vector<double>& prefix_sum() const noexcept { return prefix_sum_; }
  const std::vector<double>& prefix_sumsq() const noexcept { return prefix_sumsq_; }

  /// W_(j), 1 <= j <= n. Unchecked.
  double order_stat(std::size_t j) const noexcept { return values_[j - 1]; }

  /// Sum of W_(1..k).
  double head_sum(std::size_t k) const noexcept { return prefix_sum_[k]; }
  /// Sum of W_(k+1..n).
  double tail_sum(std::size_t k) const noexcept {
    return prefix_sum_[size()] - prefix_sum_[k];
  }
  double head_sumsq(std::size_t k) const noexcept { return prefix_sumsq_[k]; }
  double tail_sumsq(std::size_t k) const noexcept {
    return prefix_sumsq_[size()] - prefix_sumsq_[k];
  }

  double mean() const noexcept {
    return prefix_sum_[size()] / static_cast<double>(size());
  }

 private:
  std::vector<double> values_;
  std::vector<double> prefix_sum_;
  std::vector<double> prefix_sumsq_;
};

inline SortedSample build_sample(std::span<const double> data) {
  return SortedSample(data);
}

/// The empirical cross-over function evaluated at every split index.
struct EcfCurve {
  /// g[k - 1] holds the value at split index k = 1..n.
  std::vector<double> g;

  std::size_t size() const noexcept { return g.size(); }
  /// Value at split index k (1-based). Unchecked.
  double at(std::size_t k) const noexcept { return g[k - 1]; }
};

/**
 * Empirical cross-over function at split index k.
 *
 * For 1 <= k <= n-1 this is the mean of the k smallest values minus W_(k),
 * plus the mean of the remaining n-k values minus W_(k+1). At k = n it is the
 * overall mean minus the maximum. Throws IndexOutOfRange outside [1, n].
 */
double ecf_at(const SortedSample& sample, std::size_t k);

/// All n ECF values in a single pass over the prefix sums.
EcfCurve ecf_curve(const SortedSample& sample);

enum class SplitStatus { Crossing, AllNegative, AllPositive };

std::string_view to_string(SplitStatus status);

struct SplitPointEstimate {
  double p_n = 0.0;
  /// Split index; 0 unless status is Crossing.
  std::size_t k = 0;
  SplitStatus status = SplitStatus::Crossing;
  double a = 0.0;
  double b = 0.0;
  std::size_t n = 0;
};

/**
 * Empirical split point restricted to the probability range [a, b].
 *
 * The ECF is a step function whose value on [(k-1)/n, k/n) is the index-k
 * value, so the sign-change test between consecutive steps reads
 * ecf_at(k) * ecf_at(k+1) <= 0.
 *
 *  - every index k with n*a < k < n*b + 1 has a negative ECF: p_n = 0
 *  - every such index has a positive ECF: p_n = 1
 *  - otherwise p_n = k/n for the largest k with n*a < k < n*b whose
 *    consecutive product is <= 0
 *
 * Throws InvalidRange unless 0 < a < b < 1, EmptyRange when no index is
 * admissible.
 */
SplitPointEstimate split_point(const SortedSample& sample, double a, double b);

/// Same, reusing an already computed curve.
SplitPointEstimate split_point(const EcfCurve& curve, double a, double b);

struct HartiganSplit {
  std::size_t k_star = 0;
  double p_star = 0.0;
};

/**
 * Two-means split on the sorted data: maximizes the between-group criterion
 * (k/n) * mean(head)^2 + ((n-k)/n) * mean(tail)^2 over k = 1..n-1, with the
 * data centered at its mean. Smallest k wins ties.
 */
HartiganSplit hartigan_split_oracle(const SortedSample& sample);

}  // namespace splitpoint
