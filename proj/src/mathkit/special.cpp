#include "igb/mathkit/special.hpp"

#include <cmath>
#include <stdexcept>

namespace igb::math {

namespace {

// Cody's CALERF rational approximations (netlib specfun), IEEE double.
constexpr double cody_a[5] = {3.1611237438705656, 113.864154151050156,
                              377.485237685302021, 3209.37758913846947,
                              0.185777706184603153};
constexpr double cody_b[4] = {23.6012909523441209, 244.024637934444173,
                              1282.61652607737228, 2844.23683343917062};
constexpr double cody_c[9] = {0.564188496988670089, 8.88314979438837594,
                              66.1191906371416295,  298.635138197400131,
                              881.95222124176909,   1712.04761263407058,
                              2051.07837782607147,  1230.33935479799725,
                              2.15311535474403846e-8};
constexpr double cody_d[8] = {15.7449261107098347, 117.693950891312499,
                              537.181101862009858, 1621.38957456669019,
                              3290.79923573345963, 4362.61909014324716,
                              3439.36767414372164, 1230.33935480374942};
constexpr double cody_p[6] = {0.305326634961232344, 0.360344899949804439,
                              0.125781726111229246, 0.0160837851487422766,
                              6.58749161529837803e-4, 0.0163153871373020978};
constexpr double cody_q[5] = {2.56852019228982242, 1.87295284992346047,
                              0.527905102951428412, 0.0605183413124413191,
                              0.00233520497626869185};

constexpr double sqrpi = 0.56418958354775628695; // 1/sqrt(pi)
constexpr double thresh = 0.46875;
constexpr double xbig = 26.543;
constexpr double xsmall = 1.11e-16;

// erfc(x) for x >= thresh via the two upper-range approximations.
double erfc_upper(double x) {
    double y = x;
    if (y <= 4.0) {
        double xnum = cody_c[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + cody_c[i]) * y;
            xden = (xden + cody_d[i]) * y;
        }
        double result = (xnum + cody_c[7]) / (xden + cody_d[7]);
        double ysq = std::floor(y * 16.0) / 16.0;
        double del = (y - ysq) * (y + ysq);
        return std::exp(-ysq * ysq) * std::exp(-del) * result;
    }
    if (y >= xbig) return 0.0;
    double ysq = 1.0 / (y * y);
    double xnum = cody_p[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
        xnum = (xnum + cody_p[i]) * ysq;
        xden = (xden + cody_q[i]) * ysq;
    }
    double result = ysq * (xnum + cody_p[4]) / (xden + cody_q[4]);
    result = (sqrpi - result) / y;
    double ysq16 = std::floor(y * 16.0) / 16.0;
    double del = (y - ysq16) * (y + ysq16);
    return std::exp(-ysq16 * ysq16) * std::exp(-del) * result;
}

} // namespace

double erf(double x) {
    double y = std::fabs(x);
    if (y <= thresh) {
        double ysq = (y > xsmall) ? y * y : 0.0;
        double xnum = cody_a[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + cody_a[i]) * ysq;
            xden = (xden + cody_b[i]) * ysq;
        }
        return x * (xnum + cody_a[3]) / (xden + cody_b[3]);
    }
    double result = 1.0 - erfc_upper(y);
    return (x < 0.0) ? -result : result;
}

double erfc(double x) {
    double y = std::fabs(x);
    if (y <= thresh) return 1.0 - erf(x);
    double result = erfc_upper(y);
    return (x < 0.0) ? 2.0 - result : result;
}

double erf_inv(double p) {
    if (!(std::fabs(p) < 1.0))
        throw std::domain_error("erf_inv: argument must lie in (-1, 1)");
    if (p == 0.0) return 0.0;

    // Initial estimate: the single-precision polynomial pair of
    // M. Giles, "Approximating the erfinv function" (2010), ~1e-6 accurate.
    double w = -std::log((1.0 - p) * (1.0 + p));
    double x;
    if (w < 5.0) {
        w -= 2.5;
        x = 2.81022636e-08;
        x = 3.43273939e-07 + x * w;
        x = -3.5233877e-06 + x * w;
        x = -4.39150654e-06 + x * w;
        x = 0.00021858087 + x * w;
        x = -0.00125372503 + x * w;
        x = -0.00417768164 + x * w;
        x = 0.246640727 + x * w;
        x = 1.50140941 + x * w;
    } else {
        w = std::sqrt(w) - 3.0;
        x = -0.000200214257;
        x = 0.000100950558 + x * w;
        x = 0.00134934322 + x * w;
        x = -0.00367342844 + x * w;
        x = 0.00573950773 + x * w;
        x = -0.0076224613 + x * w;
        x = 0.00943887047 + x * w;
        x = 1.00167406 + x * w;
        x = 2.83297682 + x * w;
    }
    x *= p;

    // Newton refinement. Near |p| -> 1 the residual erf(x) - p cancels
    // catastrophically, so it is evaluated through erfc instead:
    // erf(x) - p = (1 - p) - erfc(x) for p > 0.
    const double two_over_sqrtpi = 1.12837916709551257390;
    for (int it = 0; it < 3; ++it) {
        double residual;
        if (p > 0.0)
            residual = (1.0 - p) - erfc(x);
        else
            residual = erfc(-x) - (1.0 + p);
        double deriv = two_over_sqrtpi * std::exp(-x * x);
        x += residual / deriv;
    }
    return x;
}

double normal_pdf(double x, double mean, double variance) {
    if (!(variance > 0.0))
        throw std::domain_error("normal_pdf: variance must be positive");
    double z = (x - mean) / std::sqrt(variance);
    return inv_sqrt_2pi / std::sqrt(variance) * std::exp(-0.5 * z * z);
}

double normal_cdf(double x, double mean, double variance) {
    if (!(variance > 0.0))
        throw std::domain_error("normal_cdf: variance must be positive");
    double z = (x - mean) / std::sqrt(variance);
    return 0.5 * erfc(-z / sqrt2);
}

RectifiedMoments rectified_gaussian_moments(double mean, double variance) {
    if (!(variance > 0.0))
        throw std::domain_error(
            "rectified_gaussian_moments: variance must be positive");
    double s = std::sqrt(variance);
    double u = mean / s;
    double phi = inv_sqrt_2pi * std::exp(-0.5 * u * u);
    double Phi = 0.5 * erfc(-u / sqrt2);
    RectifiedMoments m;
    m.first = mean * Phi + s * phi;
    m.second = (mean * mean + variance) * Phi + mean * s * phi;
    if (m.second < 0.0) m.second = 0.0;
    return m;
}

} // namespace igb::math
