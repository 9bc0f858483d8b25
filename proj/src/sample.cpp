#include "splitpoint/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splitpoint/error.hpp"

namespace splitpoint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::DensityUnderflow: return "DensityUnderflow";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::DegenerateBandwidth: return "DegenerateBandwidth";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::UnstableDerivative: return "UnstableDerivative";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingTruth: return "MissingTruth";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ColumnNotFound: return "ColumnNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(SplitStatus status) {
  switch (status) {
    case SplitStatus::Crossing: return "crossing";
    case SplitStatus::AllNegative: return "all_negative";
    case SplitStatus::AllPositive: return "all_positive";
  }
  return "unknown";
}

SortedSample::SortedSample(std::span<const double> data) {
  if (data.size() < 2) {
    throw Error(ErrorCode::SampleTooSmall,
                "need at least 2 values, got " + std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::NonFiniteInput,
                  "value at position " + std::to_string(i) + " is not finite");
    }
  }
  values_.assign(data.begin(), data.end());
  std::sort(values_.begin(), values_.end());

  const std::size_t n = values_.size();
  prefix_sum_.assign(n + 1, 0.0);
  prefix_sumsq_.assign(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    prefix_sum_[j + 1] = prefix_sum_[j] + values_[j];
    prefix_sumsq_[j + 1] = prefix_sumsq_[j] + values_[j] * values_[j];
  }
}

namespace {

double ecf_unchecked(const SortedSample& s, std::size_t k) {
  const std::size_t n = s.size();
  if (k == n) {
    return s.head_sum(n) / static_cast<double>(n) - s.order_stat(n);
  }
  const double head = s.head_sum(k) / static_cast<double>(k) - s.order_stat(k);
  const double tail = s.tail_sum(k) / static_cast<double>(n - k) - s.order_stat(k + 1);
  return head + tail;
}

}  // namespace

double ecf_at(const SortedSample& sample, std::size_t k) {
  if (k < 1 || k > sample.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "split index " + std::to_string(k) + " outside [1, " +
                    std::to_string(sample.size()) + "]");
  }
  return ecf_unchecked(sample, k);
}

EcfCurve ecf_curve(const SortedSample& sample) {
  EcfCurve curve;
  curve.g.resize(sample.size());
  for (std::size_t k = 1; k <= sample.size(); ++k) {
    curve.g[k - 1] = ecf_unchecked(sample, k);
  }
  return curve;
}

SplitPointEstimate split_point(const SortedSample& sample, double a, double b) {
  return split_point(ecf_curve(sample), a, b);
}

SplitPointEstimate split_point(const EcfCurve& curve, double a, double b) {
  if (!(a > 0.0 && a < b && b < 1.0)) {
    throw Error(ErrorCode::InvalidRange,
                "need 0 < a < b < 1, got a=" + std::to_string(a) +
                    " b=" + std::to_string(b));
  }
  const std::size_t n = curve.size();
  const double nd = static_cast<double>(n);
  const double na = nd * a;
  const double nb = nd * b;

  // Strict inequalities exactly as in the definition; the loops test the
  // real-valued bounds directly instead of rounding them.
  std::size_t k_lo = static_cast<std::size_t>(std::floor(na)) + 1;
  while (static_cast<double>(k_lo) <= na) ++k_lo;

  SplitPointEstimate est;
  est.a = a;
  est.b = b;
  est.n = n;

  bool any = false;
  bool all_neg = true;
  bool all_pos = true;
  for (std::size_t k = k_lo; k <= n && static_cast<double>(k) < nb + 1.0; ++k) {
    any = true;
    const double g = curve.at(k);
    all_neg = all_neg && g < 0.0;
    all_pos = all_pos && g > 0.0;
  }
  if (!any) {
    throw Error(ErrorCode::EmptyRange, "no split index in (n*a, n*b + 1)");
  }
  if (all_neg) {
    est.status = SplitStatus::AllNegative;
    est.p_n = 0.0;
    return est;
  }
  if (all_pos) {
    est.status = SplitStatus::AllPositive;
    est.p_n = 1.0;
    return est;
  }

  std::size_t best = 0;
  for (std::size_t k = k_lo; k < n && static_cast<double>(k) < nb; ++k) {
    if (curve.at(k) * curve.at(k + 1) <= 0.0) best = k;
  }
  if (best == 0) {
    throw Error(ErrorCode::EmptyRange, "no admissible crossing index in (n*a, n*b)");
  }
  est.status = SplitStatus::Crossing;
  est.k = best;
  est.p_n = static_cast<double>(best) / nd;
  return est;
}

HartiganSplit hartigan_split_oracle(const SortedSample& sample) {
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const double mu = sample.mean();

  HartiganSplit out;
  double best = -1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double head = sample.head_sum(k) / kd - mu;
    const double tail = sample.tail_sum(k) / (nd - kd) - mu;
    const double crit = (kd / nd) * head * head + ((nd - kd) / nd) * tail * tail;
    if (crit > best) {
      best = crit;
      out.k_star = k;
    }
  }
  out.p_star = static_cast<double>(out.k_star) / nd;
  return out;
}

}  // namespace splitpoint
