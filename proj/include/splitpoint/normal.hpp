#pragma once

namespace splitpoint {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double z);
double normal_cdf(double z);
/// Upper tail 1 - Phi(z) without cancellation for large z.
double normal_sf(double z);

/**
 * Inverse of the standard normal CDF.
 *
 * Acklam's rational approximation (relative error ~1.15e-9) followed by one
 * Halley step against erfc, which brings the result to near machine
 * precision over (0, 1). Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
 */
double normal_quantile(double p);

}  // namespace splitpoint
