#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "bergtol/common.hpp"
#include "bergtol/grid.hpp"
#include "bergtol/quadrature.hpp"
#include "bergtol/rational.hpp"
#include "bergtol/symbols.hpp"

namespace bergtol {

// Normalized reproducing kernel k_z(w) = (1 - |z|^2) / (1 - w conj(z))^2,
// unit norm in the Bergman space for every |z| < 1.
inline Complex kernel(Complex z, Complex w) {
    double az = std::abs(z);
    if (az >= 1.0) throw domain_error("kernel: |z| must be < 1");
    if (std::abs(w) > 1.0 + 1e-12) throw domain_error("kernel: |w| must be <= 1");
    Complex denom = 1.0 - w * std::conj(z);
    if (std::abs(denom) == 0.0) throw domain_error("kernel: pole at w*conj(z) = 1");
    return (1.0 - az * az) / (denom * denom);
}

inline double kernel_abs2(Complex z, Complex w) {
    Complex k = kernel(z, w);
    return std::norm(k);
}

struct BerezinValue {
    Complex value;
    double est_error = 0.0;
};

namespace detail {

// Initial quadrature sizes for the kernel-weighted disc integral. The kernel
// expansion in w has angular modes decaying like |z|^m, so the proxy degree
// scales with log(tol)/log|z|; the angular count starts at
// 2 * (symbol trig degree + 4 * proxy) and order doubling takes it from there.
inline void berezin_orders(Complex z, double tol, int trig_degree, int& radial, int& angular) {
    double base = std::max(std::abs(z), 0.25);
    double decay = -std::log(base);
    int proxy = static_cast<int>(std::ceil(std::log(1.0 / std::max(tol, 1e-15)) / (4.0 * decay)));
    proxy = std::max(proxy, 2);
    angular = std::clamp(2 * (trig_degree + 4 * proxy), 16, 8192);
    radial = std::clamp(8 + 2 * proxy, 16, 512);
}

}  // namespace detail

// Quadrature route for B(g)(z) = int |k_z|^2 g dA. Works for any pointwise
// evaluator; order selection is automatic and validated by doubling.
inline BerezinValue berezin_quad(const std::function<Complex(Complex)>& g, Complex z,
                                 const QuadratureSpec& spec, int trig_degree_hint = 8) {
    double az = std::abs(z);
    if (az >= 1.0) throw domain_error("berezin: |z| must be < 1");
    if (az > 0.999)
        throw numeric_error("berezin quadrature refuses |z| > 0.999; use a series route");
    QuadratureSpec q = spec;
    if (q.adaptive) {
        int radial = q.radial_order, angular = q.angular_count;
        detail::berezin_orders(z, q.tolerance, trig_degree_hint, radial, angular);
        q.radial_order = std::max(q.radial_order, radial);
        q.angular_count = std::max(q.angular_count, angular);
    }
    auto f = [&](Complex w) { return kernel_abs2(z, w) * g(w); };
    QuadratureResult res = disc_quadrature(f, q);
    return {res.value, res.est_error};
}

inline BerezinValue berezin_quad(const Symbol& s, Complex z, const QuadratureSpec& spec) {
    int hint = 8;
    if (const auto* h = std::get_if<HarmonicPolynomial>(&s)) hint = h->max_degree();
    if (std::holds_alternative<RadialSymbol>(s)) hint = 0;
    return berezin_quad(symbol_evaluator(s), z, spec, hint);
}

// Series route for monomial symbols w^a conj(w)^b, derived by expanding the
// kernel under the integral. For a >= b and t = |z|^2:
//
//   B(w^a conj(w)^b)(z)
//     = (1-t)^2 z^{a-b} sum_{m>=0} (m+1)(m+a-b+1) t^m / (m+a+1)
//
// and the a < b case is the complex conjugate with a, b swapped. Terms are
// dominated by (m+1) t^m, so truncating after M terms leaves at most
// t^M (M+1 - M t); this is the independent oracle for the quadrature route.
inline BerezinValue berezin_monomial_series(int a, int b, Complex z, double tol = 1e-12) {
    if (a < 0 || b < 0) throw argument_error("berezin monomial: exponents must be >= 0");
    double az = std::abs(z);
    if (az >= 1.0) throw domain_error("berezin: |z| must be < 1");
    if (a < b) {
        BerezinValue v = berezin_monomial_series(b, a, z, tol);
        return {std::conj(v.value), v.est_error};
    }
    const int d = a - b;
    const double t = az * az;
    double sum = 0.0;
    double tm = 1.0;
    long long m = 0;
    double tail = 1.0;
    while (true) {
        sum += (m + 1.0) * (m + d + 1.0) / (m + a + 1.0) * tm;
        ++m;
        tm *= t;
        tail = tm * (m + 1.0 - m * t);
        if (tail <= tol || m > 20000000) break;
    }
    double pref = (1.0 - t) * (1.0 - t);
    Complex zd = 1.0;
    for (int k = 0; k < d; ++k) zd *= z;
    // the (1-t)^2 prefactor is already folded into the tail bound
    return {pref * sum * zd, tail};
}

// Moments mu_n = 2 int_0^1 g(r) r^{2n+1} dr of a radial symbol, exact
// rationals when the coefficients are. |mu_n| <= sup|g| / (n+1).
struct RadialMoments {
    std::vector<double> mu;
    std::optional<std::vector<Rational>> exact;
    double sup_abs = 0.0;
};

inline RadialMoments radial_moments(const RadialSymbol& g, int n_max) {
    if (n_max < 0) throw argument_error("radial moments: n_max must be >= 0");
    RadialMoments out;
    out.sup_abs = g.value_bound();
    out.mu.reserve(n_max + 1);
    if (g.is_polynomial()) {
        const auto& c = g.coeffs();
        if (g.exact_coeffs()) {
            out.exact.emplace();
            out.exact->reserve(n_max + 1);
            for (int n = 0; n <= n_max; ++n) {
                Rational m(0);
                for (std::size_t k = 0; k < g.exact_coeffs()->size(); ++k)
                    m = m + (*g.exact_coeffs())[k] * Rational(2, static_cast<long long>(k) + 2 * n + 2);
                out.exact->push_back(m);
                out.mu.push_back(m.to_double());
            }
        } else {
            for (int n = 0; n <= n_max; ++n) {
                double m = 0.0;
                for (std::size_t k = 0; k < c.size(); ++k) m += 2.0 * c[k] / (k + 2.0 * n + 2.0);
                out.mu.push_back(m);
            }
        }
        return out;
    }
    // piecewise-linear table: integrate each segment in closed form
    const auto& s = g.samples();
    for (int n = 0; n <= n_max; ++n) {
        double m = 0.0;
        auto segment = [&](double r0, double r1, double v0, double v1) {
            if (r1 <= r0) return;
            double beta = (v1 - v0) / (r1 - r0);
            double alpha = v0 - beta * r0;
            double p = 2.0 * n + 2.0;
            m += 2.0 * (alpha * (std::pow(r1, p) - std::pow(r0, p)) / p +
                        beta * (std::pow(r1, p + 1.0) - std::pow(r0, p + 1.0)) / (p + 1.0));
        };
        // constant continuation outside the sample range
        segment(0.0, s.front().first, s.front().second, s.front().second);
        for (std::size_t i = 1; i < s.size(); ++i)
            segment(s[i - 1].first, s[i].first, s[i - 1].second, s[i].second);
        segment(s.back().first, 1.0, s.back().second, s.back().second);
        out.mu.push_back(m);
    }
    return out;
}

// How many moments the radial series needs at |z| with truncation error tol.
inline int radial_series_terms(double sup_abs, double t, double tol) {
    if (sup_abs == 0.0) return 1;
    int m = 1;
    double tm = t;
    while (sup_abs * tm * (m + 1.0 - m * t) > tol) {
        ++m;
        tm *= t;
        if (m > 50000000) throw numeric_error("radial series: truncation does not converge");
    }
    return m;
}

// Series route for radial symbols: B(g)(z) = (1-t)^2 sum (n+1)^2 t^n mu_n
// with t = |z|^2. Real output; errors out, naming the required count, when
// the supplied moments cannot meet the tolerance.
inline double berezin_radial_series(const RadialMoments& m, Complex z, double tol = 1e-12) {
    double az = std::abs(z);
    if (az >= 1.0) throw domain_error("berezin: |z| must be < 1");
    const double t = az * az;
    int need = radial_series_terms(m.sup_abs, t, tol);
    if (need > static_cast<int>(m.mu.size()))
        throw numeric_error("berezin radial series: needs " + std::to_string(need) +
                            " moments for tol " + std::to_string(tol) + " at |z| = " +
                            std::to_string(az) + ", have " + std::to_string(m.mu.size()));
    double sum = 0.0;
    double tn = 1.0;
    for (int n = 0; n < need; ++n) {
        sum += (n + 1.0) * (n + 1.0) * tn * m.mu[n];
        tn *= t;
    }
    double pref = (1.0 - t) * (1.0 - t);
    return pref * sum;
}

// Berezin transform of an N x N truncation: <T k_z, k_z> restricted to the
// first N basis vectors. The kernel coefficients against e_n = sqrt(n+1) z^n
// are c_n = (1-|z|^2) sqrt(n+1) conj(z)^n; the discarded tail is bounded by
// sigma_max * (1-t)^2 sum_{n>=N} (n+1) t^n = sigma_max * t^N (N+1 - N t).
struct BerezinMatrixValue {
    Complex value;
    double tail_bound = 0.0;
};

inline BerezinMatrixValue berezin_of_matrix(const Eigen::MatrixXcd& T, Complex z,
                                            double sigma_max) {
    if (T.rows() != T.cols() || T.rows() < 1)
        throw argument_error("berezin of matrix: need a square nonempty matrix");
    double az = std::abs(z);
    if (az >= 1.0) throw domain_error("berezin: |z| must be < 1");
    const auto n = T.rows();
    const double t = az * az;
    Eigen::VectorXcd c(n);
    Complex zbar_pow = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        c(k) = (1.0 - t) * std::sqrt(k + 1.0) * zbar_pow;
        zbar_pow *= std::conj(z);
    }
    Complex value = (c.adjoint() * (T * c))(0);
    double tail = sigma_max * std::pow(t, static_cast<double>(n)) * (n + 1.0 - n * t);
    return {value, tail};
}

// Complex field on a disc grid; the carrier for Berezin iterates.
struct GridField {
    DiskGrid grid;
    std::vector<Complex> values;
    InterpRule rule = InterpRule::linear;

    GridField(DiskGrid g, std::vector<Complex> v, InterpRule r = InterpRule::linear)
        : grid(std::move(g)), values(std::move(v)), rule(r) {
        if (values.size() != grid.node_count())
            throw argument_error("grid field: value count differs from node count");
    }

    static GridField from_function(const DiskGrid& g,
                                   const std::function<Complex(Complex)>& f,
                                   InterpRule r = InterpRule::linear) {
        std::vector<Complex> vals(g.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f(g.node(i));
        return GridField(g, std::move(vals), r);
    }

    Complex eval(Complex w) const { return interpolate_polar(grid, values, rule, w); }

    SampledSymbol to_sampled() const { return SampledSymbol(grid, values, rule); }
};

// n-fold Berezin transform of a grid field, re-quadrating the interpolant at
// every step; n = 0 returns the input unchanged.
inline GridField iterate_berezin(const GridField& f, int n, const QuadratureSpec& q) {
    if (n < 0) throw argument_error("iterate_berezin: n must be >= 0");
    if (f.grid.ring_radius(f.grid.ring_count() - 1) > 0.999)
        throw argument_error("iterate_berezin: grid rings must stay within |z| <= 0.999");
    GridField cur = f;
    for (int step = 0; step < n; ++step) {
        std::vector<Complex> next(cur.values.size());
        auto eval = [&cur](Complex w) { return cur.eval(w); };
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = berezin_quad(eval, cur.grid.node(i), q).value;
        cur.values = std::move(next);
    }
    return cur;
}

// Poisson extension of boundary data. For a trigonometric polynomial the
// extension is exact: frequency n contributes a_n r^|n| e^{i n theta}.
inline Complex poisson_extend(const TrigPolynomial& g, Complex z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw domain_error("poisson extension outside the closed disc");
    double r = std::abs(z), theta = std::arg(z);
    Complex acc = 0.0;
    for (const auto& [n, a] : g.terms())
        acc += a * std::pow(r, std::abs(n)) * std::polar(1.0, n * theta);
    return acc;
}

// Poisson-kernel quadrature against samples at uniform boundary angles.
inline Complex poisson_extend(const std::vector<Complex>& samples, Complex z) {
    if (samples.empty()) throw argument_error("poisson extension: no samples");
    double r = std::abs(z);
    if (r >= 1.0) throw domain_error("poisson extension from samples needs |z| < 1");
    double theta = std::arg(z);
    Complex acc = 0.0;
    const auto n = samples.size();
    for (std::size_t j = 0; j < n; ++j) {
        double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        double pk = (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta - t) + r * r);
        acc += pk * samples[j];
    }
    return acc / static_cast<double>(n);
}

}  // namespace bergtol
