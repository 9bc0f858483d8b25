#pragma once

// Brute-force references used only by the tests. Nothing here touches the
// prefix-sum or closed-form paths of the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

/// ECF at split index k (1-based) on sorted data, re-summing from scratch.
inline double naive_ecf(const std::vector<double>& sorted, std::size_t k) {
  const std::size_t n = sorted.size();
  if (k == n) {
    double s = 0.0;
    for (double v : sorted) s += v;
    return s / static_cast<double>(n) - sorted[n - 1];
  }
  double head = 0.0;
  for (std::size_t j = 0; j < k; ++j) head += sorted[j];
  double tail = 0.0;
  for (std::size_t j = k; j < n; ++j) tail += sorted[j];
  return head / static_cast<double>(k) - sorted[k - 1] + tail / static_cast<double>(n - k) -
         sorted[k];
}

/// Two-means split by direct within-group sum of squares; smallest k on ties.
inline std::size_t brute_force_two_means(std::vector<double> data) {
  std::sort(data.begin(), data.end());
  const std::size_t n = data.size();
  std::size_t best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    auto wss = [&](std::size_t lo, std::size_t hi) {
      double m = 0.0;
      for (std::size_t j = lo; j < hi; ++j) m += data[j];
      m /= static_cast<double>(hi - lo);
      double s = 0.0;
      for (std::size_t j = lo; j < hi; ++j) s += (data[j] - m) * (data[j] - m);
      return s;
    };
    const double w = wss(0, k) + wss(k, n);
    if (best_k == 0 || w < best - 1e-12 * std::max(1.0, std::abs(best))) {
      best = w;
      best_k = k;
    }
  }
  return best_k;
}

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / static_cast<double>(panels);
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i) {
    acc += f(lo + h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

/// Cross-over function from a density and a quantile, integrating x f(x)
/// directly on [lo, Q(p)] and [Q(p), hi].
inline double grid_crossover(const std::function<double(double)>& density,
                             const std::function<double(double)>& quantile, double p, double lo,
                             double hi) {
  const double q = quantile(p);
  auto xf = [&](double x) { return x * density(x); };
  const double below = simpson(xf, lo, q, 4000);
  const double above = simpson(xf, q, hi, 4000);
  return below / p + above / (1.0 - p) - 2.0 * q;
}

/// Dense scan for the first sign change of g on [a, b]; returns the midpoint
/// of the bracketing grid cell.
inline double grid_scan_root(const std::function<double(double)>& g, double a, double b,
                             double step) {
  double prev_p = a;
  double prev = g(a);
  const auto steps = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double p = a + step * static_cast<double>(i);
    const double cur = g(p);
    if (prev > 0.0 && cur <= 0.0) return 0.5 * (prev_p + p);
    prev_p = p;
    prev = cur;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace oracle
