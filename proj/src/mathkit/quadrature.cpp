#include "igb/mathkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "igb/errors.hpp"
#include "igb/mathkit/special.hpp"

namespace igb::math {

void QuadratureSpec::validate() const {
    if (node_count < 16)
        throw std::invalid_argument("QuadratureSpec: node_count must be >= 16");
    if (!(truncation_radius >= 6.0))
        throw std::invalid_argument(
            "QuadratureSpec: truncation_radius must be >= 6");
}

const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Roots of P_n by Newton iteration from the Chebyshev-based estimate.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream oss;
        oss << "integrate: integrand not finite at x = " << x;
        throw NumericalError(oss.str());
    }
    return v;
}

double trapezoid(const std::function<double(double)>& f, double a, double b,
                 int n) {
    double h = (b - a) / n;
    double sum = 0.5 * (eval_checked(f, a) + eval_checked(f, b));
    for (int i = 1; i < n; ++i) sum += eval_checked(f, a + i * h);
    return sum * h;
}

double adaptive_trapezoid(const std::function<double(double)>& f, double a,
                          double b, int n0) {
    double prev = trapezoid(f, a, b, n0);
    for (int n = n0 * 2; n <= (1 << 22); n *= 2) {
        double cur = trapezoid(f, a, b, n);
        if (std::fabs(cur - prev) <=
            1e-12 * std::max(1.0, std::fabs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    spec.validate();
    if (a == b) return 0.0;
    if (spec.scheme == QuadScheme::adaptive_trapezoid)
        return adaptive_trapezoid(f, a, b, spec.node_count);
    const auto& rule = gauss_legendre(spec.node_count);
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < spec.node_count; ++i)
        sum += rule.weights[i] * eval_checked(f, mid + half * rule.nodes[i]);
    return sum * half;
}

double gauss_expect(const std::function<double(double)>& f, double mean,
                    double variance, const QuadratureSpec& spec) {
    if (!(variance > 0.0))
        throw std::domain_error("gauss_expect: variance must be positive");
    double s = std::sqrt(variance);
    double a = mean - spec.truncation_radius * s;
    double b = mean + spec.truncation_radius * s;
    auto g = [&](double x) { return f(x) * normal_pdf(x, mean, variance); };
    return integrate(g, a, b, spec);
}

} // namespace igb::math
