#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "splitpoint/rng.hpp"

namespace splitpoint {

/**
 * Population model for theory calculations and simulation.
 *
 * Implementations provide the quantile, density and CDF plus partial moments
 * E[W 1{W < x}] and E[W^2 1{W < x}], which give the trimmed means Q_l, Q_u
 * and the influence-function variance in closed form.
 */
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  /// Canonical spec string, e.g. "normal(0,1)" or "mixture(0.7,0,1,4,1)".
  virtual std::string name() const = 0;

  virtual double quantile(double p) const = 0;
  virtual double density(double x) const = 0;
  virtual double cdf(double x) const = 0;

  virtual double mean() const = 0;
  /// E[W^2].
  virtual double second_moment() const = 0;

  /// E[W 1{W < x}].
  virtual double partial_mean_below(double x) const = 0;
  /// E[W^2 1{W < x}].
  virtual double partial_second_moment_below(double x) const = 0;

  /// Support endpoints; infinite for unbounded models.
  virtual std::pair<double, double> support() const = 0;

  /// Split point known by symmetry, if any.
  virtual std::optional<double> declared_split_point() const { return std::nullopt; }

  /// Law of alpha * W + beta (alpha > 0).
  virtual std::unique_ptr<DistributionModel> affine(double alpha, double beta) const = 0;

  /// Inverse-CDF draw by default.
  virtual double sample(StreamRng& rng) const { return quantile(rng.uniform01()); }

  /// E[W 1{W < Q(p)}].
  double partial_mean(double p) const { return partial_mean_below(quantile(p)); }

  double variance() const { return second_moment() - mean() * mean(); }
};

using ModelPtr = std::shared_ptr<const DistributionModel>;

class NormalModel final : public DistributionModel {
 public:
  NormalModel(double mu = 0.0, double sigma = 1.0);

  std::string name() const override;
  double quantile(double p) const override;
  double density(double x) const override;
  double cdf(double x) const override;
  double mean() const override { return mu_; }
  double second_moment() const override { return mu_ * mu_ + sigma_ * sigma_; }
  double partial_mean_below(double x) const override;
  double partial_second_moment_below(double x) const override;
  std::pair<double, double> support() const override;
  std::optional<double> declared_split_point() const override { return 0.5; }
  std::unique_ptr<DistributionModel> affine(double alpha, double beta) const override;

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

/// weight * N(mu1, sigma1^2) + (1 - weight) * N(mu2, sigma2^2).
class NormalMixture final : public DistributionModel {
 public:
  NormalMixture(double weight, double mu1, double sigma1, double mu2, double sigma2);

  std::string name() const override;
  /// Bisection on the CDF, bracketed by the component quantiles.
  double quantile(double p) const override;
  double density(double x) const override;
  double cdf(double x) const override;
  double mean() const override;
  double second_moment() const override;
  double partial_mean_below(double x) const override;
  double partial_second_moment_below(double x) const override;
  std::pair<double, double> support() const override;
  /// 0.5 when the two components mirror each other.
  std::optional<double> declared_split_point() const override;
  std::unique_ptr<DistributionModel> affine(double alpha, double beta) const override;
  /// Component choice from one uniform, then the normal inverse CDF.
  double sample(StreamRng& rng) const override;

  /// Same mixture rescaled to mean 0, variance 1.
  NormalMixture standardized() const;

 private:
  double w_;
  NormalModel c1_;
  NormalModel c2_;
};

class UniformModel final : public DistributionModel {
 public:
  UniformModel(double lo, double hi);

  std::string name() const override;
  double quantile(double p) const override;
  double density(double x) const override;
  double cdf(double x) const override;
  double mean() const override { return 0.5 * (lo_ + hi_); }
  double second_moment() const override;
  double partial_mean_below(double x) const override;
  double partial_second_moment_below(double x) const override;
  std::pair<double, double> support() const override { return {lo_, hi_}; }
  std::optional<double> declared_split_point() const override { return 0.5; }
  std::unique_ptr<DistributionModel> affine(double alpha, double beta) const override;

 private:
  double lo_;
  double hi_;
};

/// Uniform on [-sqrt(3), sqrt(3)]: mean 0, variance 1.
UniformModel standard_uniform();

/**
 * Parses "normal", "normal(mu,sigma)", "uniform", "uniform(lo,hi)" and
 * "mixture(w,mu1,sigma1,mu2,sigma2)". Bare "uniform" is the unit-variance
 * uniform. Throws UnknownModel.
 */
ModelPtr parse_model(const std::string& spec);

struct CrossoverEvaluation {
  double p = 0.0;
  double q = 0.0;        ///< Q(p)
  double q_lower = 0.0;  ///< mean below Q(p)
  double q_upper = 0.0;  ///< mean at or above Q(p)
  double g = 0.0;        ///< cross-over function
  double g_prime = 0.0;  ///< its derivative in p
  double b = 0.0;        ///< split function
};

/// Throws InvalidArgument unless 0 < p < 1, DensityUnderflow if f(Q(p)) is 0.
CrossoverEvaluation eval_crossover(const DistributionModel& model, double p);

/// Cross-over function alone (no density needed).
double crossover(const DistributionModel& model, double p);

/// Split function p Q_l^2 + (1-p) Q_u^2 - mu^2.
double split_function(const DistributionModel& model, double p);

/**
 * Zero of the cross-over function inside [a, b] by bisection, stopped once the
 * bracket is narrower than 1e-10; returns the midpoint of the final bracket.
 * Finds a zero, not a certified-unique one. Throws NoBracket unless
 * G(a) > 0 > G(b).
 */
double theoretical_split_point(const DistributionModel& model, double a, double b);

/// Var(theta_p) from the model's closed-form partial moments.
double theta_variance(const DistributionModel& model, double p);

/// Var(theta_p) by adaptive quadrature against the density, split at Q(p).
double theta_variance_numeric(const DistributionModel& model, double p);

/// Var(theta_p0) / G'(p0)^2, the limiting variance of sqrt(n) (p_n - p0).
double asymptotic_variance(const DistributionModel& model, double p0);

/// Adaptive Gauss-Kronrod (15 point) integral; limits may be infinite.
double integrate(const std::function<double(double)>& f, double lo, double hi);

}  // namespace splitpoint
