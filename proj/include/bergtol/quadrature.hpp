#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "bergtol/common.hpp"

namespace bergtol {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
// Rules are cached per order; the cache is guarded so concurrent callers are
// safe and results never depend on call order.
inline const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw argument_error("gauss_legendre: order must be positive");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

// Integral over [a, b].
inline double gauss_on(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < order; ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// Tensor rule for integrals against the normalized area measure
// dA = (1/pi) r dr dtheta on a centered disc. The radial variable is
// t = r^2, which turns even monomials |w|^{2n} into plain polynomials:
//
//   int_D F dA = (1/(2 pi)) int_0^{2 pi} int_0^{R^2} F(sqrt(t) e^{i th}) dt dth
//
// Gauss-Legendre of order q in t, uniform (trapezoidal) angles; the latter is
// exact for trigonometric degree < angular_count and spectrally accurate for
// smooth periodic integrands.
struct QuadratureSpec {
    int radial_order = 32;
    int angular_count = 64;
    double tolerance = 1e-10;
    bool adaptive = true;   // double both directions until two levels agree
    int max_doublings = 7;

    // Rule sized for exactness: an integrand of trigonometric degree at most
    // trig_degree and radial degree (in t) at most t_degree.
    static QuadratureSpec exact_for(int trig_degree, int t_degree) {
        QuadratureSpec q;
        q.angular_count = 2 * trig_degree + 1;
        q.radial_order = t_degree / 2 + 1;
        q.adaptive = false;
        return q;
    }
};

struct QuadratureResult {
    Complex value;
    double est_error = 0.0;  // |last - previous| under doubling, 0 if fixed
    int radial_order = 0;
    int angular_count = 0;
};

namespace detail {

inline Complex disc_pass(const std::function<Complex(Complex)>& f, double radius,
                         int radial_order, int angular_count) {
    const auto& rule = gauss_legendre(radial_order);
    const double t_max = radius * radius;
    Complex acc = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        double t = 0.5 * t_max * (rule.nodes[i] + 1.0);
        double wt = 0.5 * t_max * rule.weights[i];
        double r = std::sqrt(t);
        Complex ring = 0.0;
        const double step = kTwoPi / angular_count;
        // incremental rotation; one trig pair per ring
        const Complex rot = std::polar(1.0, step);
        Complex w = Complex(r, 0.0);
        for (int k = 0; k < angular_count; ++k) {
            ring += f(w);
            w *= rot;
        }
        acc += wt * ring / static_cast<double>(angular_count);
    }
    return acc;
}

}  // namespace detail

// Integrates f against dA over the disc of the given radius (default: the
// whole unit disc). In adaptive mode both directions are doubled until two
// successive levels agree within tolerance/2, which makes the accuracy
// empirical rather than assumed; est_error reports the last disagreement.
inline QuadratureResult disc_quadrature(const std::function<Complex(Complex)>& f,
                                        const QuadratureSpec& spec, double radius = 1.0) {
    if (!(radius > 0.0 && radius <= 1.0))
        throw argument_error("disc quadrature: radius must lie in (0, 1]");
    int q = std::max(2, spec.radial_order);
    int a = std::max(4, spec.angular_count);
    Complex value = detail::disc_pass(f, radius, q, a);
    if (!spec.adaptive) return {value, 0.0, q, a};
    double err = std::numeric_limits<double>::infinity();
    for (int level = 0; level < spec.max_doublings; ++level) {
        int q2 = q * 2, a2 = a * 2;
        Complex next = detail::disc_pass(f, radius, q2, a2);
        err = std::abs(next - value);
        value = next;
        q = q2;
        a = a2;
        if (err <= 0.5 * spec.tolerance) break;
    }
    return {value, err, q, a};
}

}  // namespace bergtol
