#pragma once

// Deterministic 1-D quadrature for the Gaussian-weighted integrals of the
// theory pipeline. The default scheme is fixed-node Gauss-Legendre on a
// truncated interval; an adaptive trapezoid scheme is available as a
// cross-check. All integrands here are smooth, so 201 nodes at 8 standard
// deviations resolve them far below the 1e-10 normalization target.

#include <cstddef>
#include <functional>
#include <vector>

namespace igb::math {

enum class QuadScheme { gauss, adaptive_trapezoid };

struct QuadratureSpec {
    int node_count = 201;          // >= 16
    double truncation_radius = 8.0; // integration limits, in standard deviations
    QuadScheme scheme = QuadScheme::gauss;

    void validate() const; // throws std::invalid_argument on bad fields
};

// Gauss-Legendre nodes/weights on [-1, 1], computed once per node count by
// Newton iteration on the Legendre recurrence and cached.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

// Integral of f over [a, b] under the chosen scheme. Throws
// igb::math::NumericalError (see errors.hpp) if f evaluates non-finite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integral of f(x) * Normal(x; mean, variance) dx over the truncated range
// mean +/- truncation_radius * sqrt(variance).
double gauss_expect(const std::function<double(double)>& f, double mean,
                    double variance, const QuadratureSpec& spec = {});

} // namespace igb::math
