#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bergtol/berezin.hpp"
#include "bergtol/common.hpp"
#include "bergtol/geometry.hpp"
#include "bergtol/quadrature.hpp"
#include "bergtol/rational.hpp"
#include "bergtol/symbols.hpp"

namespace bergtol {

// Matrix conventions. The orthonormal basis of the Bergman space under the
// normalized area measure dA = (1/pi) r dr dtheta is
//
//   e_n = sqrt(n+1) z^n,   since  int |z|^{2n} dA = 1/(n+1).
//
// The truncation stores entries T(i, j) = <phi e_j, e_i> for i, j < N.
enum class MatrixProvenance { closed_form, quadrature };

struct ToeplitzTruncation {
    int n = 0;
    Eigen::MatrixXcd entries;
    MatrixProvenance provenance = MatrixProvenance::closed_form;
    std::string symbol_desc;
    std::string note;  // nonempty when the truncation is known to be lossy
};

namespace detail {

// <z^e e_low, e_{low+e}> = sqrt((low+1)/(low+e+1)); shared between the
// analytic and coanalytic fills so that adjoint pairs match bit for bit.
inline double ladder_factor(int low, int e) {
    return std::sqrt((low + 1.0) / (low + e + 1.0));
}

}  // namespace detail

// Closed-form truncation for a harmonic polynomial symbol. The term p_m z^m
// fills the m-th subdiagonal, q_n conj(z)^n the n-th superdiagonal, and the
// constant the diagonal; distinct exponents never collide.
inline ToeplitzTruncation matrix_harmonic(const HarmonicPolynomial& p, int n) {
    if (n < 1) throw argument_error("matrix: dimension must be positive");
    ToeplitzTruncation out;
    out.n = n;
    out.provenance = MatrixProvenance::closed_form;
    out.symbol_desc = "harmonic";
    if (p.max_degree() >= n)
        out.note = "dimension does not exceed the top exponent; the section drops terms";
    out.entries = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) out.entries(j, j) = p.p0();
    for (const auto& t : p.analytic())
        for (int j = 0; j + t.degree < n; ++j)
            out.entries(j + t.degree, j) += t.coef * detail::ladder_factor(j, t.degree);
    for (const auto& t : p.coanalytic())
        for (int i = 0; i + t.degree < n; ++i)
            out.entries(i, i + t.degree) += t.coef * detail::ladder_factor(i, t.degree);
    return out;
}

// A radial symbol diagonalizes in the monomial basis:
//   lambda_j = (j+1) * 2 int_0^1 g(r) r^{2j+1} dr.
inline std::vector<double> radial_eigenvalues(const RadialSymbol& g, int n) {
    if (n < 1) throw argument_error("radial eigenvalues: dimension must be positive");
    RadialMoments m = radial_moments(g, n - 1);
    std::vector<double> lam(n);
    for (int j = 0; j < n; ++j) lam[j] = (j + 1.0) * m.mu[j];
    return lam;
}

inline std::vector<Rational> radial_eigenvalues_exact(const RadialSymbol& g, int n) {
    if (n < 1) throw argument_error("radial eigenvalues: dimension must be positive");
    if (!g.exact_coeffs())
        throw argument_error("radial eigenvalues: symbol carries no exact coefficients");
    RadialMoments m = radial_moments(g, n - 1);
    std::vector<Rational> lam;
    lam.reserve(n);
    for (int j = 0; j < n; ++j) lam.push_back(Rational(j + 1) * (*m.exact)[j]);
    return lam;
}

// Independent quadrature route: Gauss-Legendre in r, exact for polynomial g.
inline std::vector<double> radial_eigenvalues_quadrature(const RadialSymbol& g, int n,
                                                         int order = 0) {
    if (n < 1) throw argument_error("radial eigenvalues: dimension must be positive");
    if (order <= 0) order = g.is_polynomial() ? (g.degree() + 2 * n + 2) / 2 + 2 : 128;
    std::vector<double> lam(n);
    for (int j = 0; j < n; ++j) {
        auto f = [&](double r) { return g.eval(r) * std::pow(r, 2.0 * j + 1.0); };
        lam[j] = (j + 1.0) * 2.0 * gauss_on(f, 0.0, 1.0, order);
    }
    return lam;
}

inline ToeplitzTruncation matrix_radial(const RadialSymbol& g, int n) {
    ToeplitzTruncation out;
    out.n = n;
    out.provenance = MatrixProvenance::closed_form;
    out.symbol_desc = "radial";
    out.entries = Eigen::MatrixXcd::Zero(n, n);
    std::vector<double> lam = radial_eigenvalues(g, n);
    for (int j = 0; j < n; ++j) out.entries(j, j) = lam[j];
    return out;
}

// Closed-form truncation for any symbol that admits one.
inline ToeplitzTruncation matrix_closed_form(const Symbol& s, int n) {
    if (const auto* h = std::get_if<HarmonicPolynomial>(&s)) return matrix_harmonic(*h, n);
    if (const auto* r = std::get_if<RadialSymbol>(&s)) return matrix_radial(*r, n);
    throw argument_error("matrix: sampled symbols have no closed-form route");
}

// Quadrature route for <phi e_j, e_i>. The radial variable stays r (weight
// 2 r dr), so polynomial symbols in r or z, conj(z) make the integrand a
// polynomial and the rule below integrates it exactly; sampled symbols use
// the supplied spec as-is.
inline ToeplitzTruncation matrix_quadrature(const Symbol& phi, int n,
                                            const QuadratureSpec& spec = QuadratureSpec{}) {
    if (n < 1) throw argument_error("matrix: dimension must be positive");
    int trig_deg = 0, r_deg = 0;
    bool polynomial = true;
    if (const auto* h = std::get_if<HarmonicPolynomial>(&phi)) {
        trig_deg = h->max_degree();
        r_deg = h->max_degree();
    } else if (const auto* r = std::get_if<RadialSymbol>(&phi)) {
        if (r->is_polynomial()) r_deg = r->degree();
        else polynomial = false;
    } else {
        polynomial = false;
    }
    int angular = polynomial ? 2 * (trig_deg + 2 * (n - 1)) + 1
                             : std::max(spec.angular_count, 2 * (2 * (n - 1)) + 1);
    int order = polynomial ? (r_deg + 2 * (n - 1) + 1) / 2 + 2
                           : std::max(spec.radial_order, 64);

    ToeplitzTruncation out;
    out.n = n;
    out.provenance = MatrixProvenance::quadrature;
    out.symbol_desc = symbol_kind(phi);
    out.entries = Eigen::MatrixXcd::Zero(n, n);

    const auto& rule = gauss_legendre(order);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < order; ++i) {
        double r = 0.5 * (rule.nodes[i] + 1.0);
        double wr = 0.5 * rule.weights[i] * 2.0 * r;  // radial weight 2 r dr
        const Complex rot = std::polar(1.0, kTwoPi / angular);
        Complex w = Complex(r, 0.0);
        for (int k = 0; k < angular; ++k) {
            Complex pw = eval_symbol(phi, w);
            Complex base = 1.0;
            for (int m = 0; m < n; ++m) {
                v(m) = std::sqrt(m + 1.0) * base;
                base *= w;
            }
            out.entries.noalias() +=
                (wr * pw / static_cast<double>(angular)) * (v.conjugate() * v.transpose());
            w *= rot;
        }
    }
    return out;
}

// Full singular spectrum extremes of the dense section. Jacobi is used up to
// moderate sizes for its accuracy, divide-and-conquer above that.
inline std::pair<double, double> singular_extremes(const ToeplitzTruncation& t) {
    if (t.n < 1) throw argument_error("singular extremes: empty matrix");
    if (!t.entries.allFinite()) throw numeric_error("singular extremes: non-finite entries");
    if (t.n > 2048) throw argument_error("singular extremes: dense method capped at N = 2048");
    Eigen::VectorXd sv;
    if (t.n <= 256) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t.entries);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(t.entries);
        sv = svd.singularValues();
    }
    return {sv(sv.size() - 1), sv(0)};
}

// Invertibility certificate via the Neumann series: with R the scaling
// constant and q a certified upper bound of sup |1 - R phi| < 1,
//   ||I - T_{R phi}|| <= q  and  ||T_phi^{-1}|| <= R / (1 - q).
struct NeumannCertificate {
    double scale = 0.0;               // R
    double contraction = 0.0;         // q
    double inverse_norm_bound = 0.0;  // R / (1 - q)
};

struct CertifyOutcome {
    std::optional<NeumannCertificate> certificate;
    double scale = 0.0;
    double q_bound = 0.0;     // certified sup |1 - R phi|, even on refusal
    std::string reason;       // nonempty iff refused
};

inline Symbol affine_symbol(const Symbol& s, double a, double b) {
    if (const auto* h = std::get_if<HarmonicPolynomial>(&s)) return h->affine(a, b);
    if (const auto* r = std::get_if<RadialSymbol>(&s)) return r->affine(a, b);
    const auto& sym = std::get<SampledSymbol>(s);
    std::vector<Complex> vals = sym.values();
    for (auto& v : vals) v = a + b * v;
    return SampledSymbol(sym.grid(), std::move(vals), sym.rule());
}

// Certificate absence is not a disproof: q >= 1 only means this route cannot
// see the inverse.
inline CertifyOutcome neumann_certificate(const Symbol& phi, int resolution = 512) {
    CertifyOutcome out;
    out.scale = scaling_constant(phi, resolution);
    Symbol psi = affine_symbol(phi, 1.0, -out.scale);
    out.q_bound = sup_norm(psi, resolution).upper;
    if (out.q_bound < 1.0) {
        out.certificate = NeumannCertificate{out.scale, out.q_bound,
                                             out.scale / (1.0 - out.q_bound)};
    } else {
        out.reason = "certified sup |1 - R phi| >= 1; no contraction at this resolution";
    }
    return out;
}

// ||T^{-1}|| <= M / S^2 for a symbol bounded below by S on a set that
// dominates the space with constant M.
inline double luecking_bound(double m, double s) {
    if (!(m >= 1.0)) throw domain_error("luecking bound: M must be >= 1");
    if (!(s > 0.0)) throw domain_error("luecking bound: S must be > 0");
    return m / (s * s);
}

inline BerezinMatrixValue berezin_of_matrix(const ToeplitzTruncation& t, Complex z) {
    auto [smin, smax] = singular_extremes(t);
    (void)smin;
    return berezin_of_matrix(t.entries, z, smax);
}

}  // namespace bergtol
