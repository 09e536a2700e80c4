#pragma once

// Self-contained double-precision special functions used by the theory
// pipeline. erf/erfc follow Cody's rational Chebyshev approximations
// (Math. Comp. 1969, netlib specfun), accurate to ~1e-16 relative;
// erf_inv refines a polynomial initial estimate with Newton steps on the
// erfc residual, so the round trip erf(erf_inv(p)) = p holds to <1e-14.

#include <utility>

namespace igb::math {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt2 = 1.41421356237309504880;
inline constexpr double inv_sqrt_2pi = 0.39894228040143267794; // 1/sqrt(2*pi)

double erf(double x);
double erfc(double x);

// Inverse of erf on (-1, 1). Throws std::domain_error for |p| >= 1.
double erf_inv(double p);

// Gaussian density / distribution function. variance must be > 0
// (std::domain_error otherwise).
double normal_pdf(double x, double mean, double variance);
double normal_cdf(double x, double mean, double variance);

struct RectifiedMoments {
    double first;  // E[max(0,X)]
    double second; // E[max(0,X)^2]
    double variance() const { return second - first * first; }
};

// Moments of max(0, X) with X ~ Normal(mean, variance), in closed form:
//   E[g]   = m*Phi(m/s) + s*phi(m/s)
//   E[g^2] = (m^2+s^2)*Phi(m/s) + m*s*phi(m/s)
RectifiedMoments rectified_gaussian_moments(double mean, double variance);

} // namespace igb::math
