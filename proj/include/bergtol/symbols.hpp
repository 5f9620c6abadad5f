#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bergtol/common.hpp"
#include "bergtol/grid.hpp"
#include "bergtol/rational.hpp"

namespace bergtol {

// Coefficient in polar form with the argument stored as an exact rational
// multiple of pi, normalized to [0, 2). This is what the exact decision mode
// runs its congruence arithmetic on; the float payload is derived from it.
struct PolarCoefficient {
    Rational modulus;
    Rational arg_over_pi;

    PolarCoefficient(Rational mod, Rational arg)
        : modulus(std::move(mod)), arg_over_pi(arg.mod(2)) {
        if (modulus < Rational(0))
            throw argument_error("polar coefficient: negative modulus");
    }

    Complex to_complex() const {
        double a = arg_over_pi.to_double() * kPi;
        return std::polar(modulus.to_double(), a);
    }
};

struct HarmonicTerm {
    int degree = 0;
    Complex coef;
    std::optional<PolarCoefficient> polar;

    HarmonicTerm(int deg, Complex c) : degree(deg), coef(c) {}
    HarmonicTerm(int deg, PolarCoefficient p)
        : degree(deg), coef(p.to_complex()), polar(std::move(p)) {}
};

// p0 + sum p_m z^m + sum q_n conj(z)^n with finitely many terms. Exponent
// lists are strictly increasing and listed coefficients are nonzero; both are
// enforced at construction.
class HarmonicPolynomial {
  public:
    HarmonicPolynomial(Complex p0, std::vector<HarmonicTerm> analytic,
                       std::vector<HarmonicTerm> coanalytic,
                       std::optional<Rational> p0_exact = std::nullopt)
        : p0_(p0),
          p0_exact_(std::move(p0_exact)),
          analytic_(std::move(analytic)),
          coanalytic_(std::move(coanalytic)) {
        require_finite(p0_, "harmonic p0");
        validate_terms(analytic_, "analytic");
        validate_terms(coanalytic_, "coanalytic");
        if (p0_exact_ && p0_exact_->to_double() != p0_.real())
            throw argument_error("harmonic: exact p0 disagrees with float p0");
    }

    static HarmonicPolynomial constant(Complex c) { return HarmonicPolynomial(c, {}, {}); }

    Complex p0() const { return p0_; }
    const std::optional<Rational>& p0_exact() const { return p0_exact_; }
    const std::vector<HarmonicTerm>& analytic() const { return analytic_; }
    const std::vector<HarmonicTerm>& coanalytic() const { return coanalytic_; }

    int max_degree() const {
        int d = 0;
        if (!analytic_.empty()) d = std::max(d, analytic_.back().degree);
        if (!coanalytic_.empty()) d = std::max(d, coanalytic_.back().degree);
        return d;
    }

    Complex eval(Complex z) const {
        if (std::abs(z) > 1.0 + 1e-12)
            throw domain_error("harmonic evaluation outside the closed disc");
        Complex acc = p0_;
        acc += eval_terms(analytic_, z);
        acc += eval_terms(coanalytic_, std::conj(z));
        require_finite(acc, "harmonic value");
        return acc;
    }

    // sum m|p_m| + n|q_n|; a Lipschitz constant on the closed disc.
    double lipschitz() const {
        double L = 0.0;
        for (const auto& t : analytic_) L += t.degree * std::abs(t.coef);
        for (const auto& t : coanalytic_) L += t.degree * std::abs(t.coef);
        return L;
    }

    double coef_modulus_sum() const {
        double s = 0.0;
        for (const auto& t : analytic_) s += std::abs(t.coef);
        for (const auto& t : coanalytic_) s += std::abs(t.coef);
        return s;
    }

    std::optional<Rational> coef_modulus_sum_exact() const {
        Rational s(0);
        for (const auto& t : analytic_) {
            if (!t.polar) return std::nullopt;
            s = s + t.polar->modulus;
        }
        for (const auto& t : coanalytic_) {
            if (!t.polar) return std::nullopt;
            s = s + t.polar->modulus;
        }
        return s;
    }

    bool has_exact_form() const {
        return p0_exact_.has_value() && coef_modulus_sum_exact().has_value();
    }

    // Triangle-inequality bound on |P| over the closed disc.
    double value_bound() const { return std::abs(p0_) + coef_modulus_sum(); }

    // Swaps analytic and coanalytic parts with conjugated coefficients; the
    // symbol of the adjoint operator.
    HarmonicPolynomial conj_swapped() const {
        auto conj_terms = [](const std::vector<HarmonicTerm>& ts) {
            std::vector<HarmonicTerm> out;
            out.reserve(ts.size());
            for (const auto& t : ts) {
                HarmonicTerm c(t.degree, std::conj(t.coef));
                if (t.polar)
                    c.polar = PolarCoefficient(t.polar->modulus, -t.polar->arg_over_pi);
                out.push_back(std::move(c));
            }
            return out;
        };
        return HarmonicPolynomial(std::conj(p0_), conj_terms(coanalytic_),
                                  conj_terms(analytic_));
    }

    // a + b * P for real a, b with b != 0. Exact polar payloads are dropped:
    // the scale factor is generally not an exact rational.
    HarmonicPolynomial affine(double a, double b) const {
        if (b == 0.0) throw argument_error("harmonic affine: zero scale");
        auto scale_terms = [b](const std::vector<HarmonicTerm>& ts) {
            std::vector<HarmonicTerm> out;
            out.reserve(ts.size());
            for (const auto& t : ts) out.emplace_back(t.degree, b * t.coef);
            return out;
        };
        return HarmonicPolynomial(a + b * p0_, scale_terms(analytic_),
                                  scale_terms(coanalytic_));
    }

    // Exact positive rational rescale, preserving polar form. Requires every
    // coefficient to carry one.
    HarmonicPolynomial scaled_exact(const Rational& c) const {
        if (!(c > Rational(0))) throw argument_error("harmonic scale: need c > 0");
        if (!p0_exact_) throw argument_error("harmonic scale: p0 has no exact form");
        auto scale_terms = [&c](const std::vector<HarmonicTerm>& ts) {
            std::vector<HarmonicTerm> out;
            out.reserve(ts.size());
            for (const auto& t : ts) {
                if (!t.polar) throw argument_error("harmonic scale: coefficient has no exact form");
                out.emplace_back(t.degree,
                                 PolarCoefficient(t.polar->modulus * c, t.polar->arg_over_pi));
            }
            return out;
        };
        return HarmonicPolynomial(Complex((*p0_exact_ * c).to_double(), 0.0),
                                  scale_terms(analytic_), scale_terms(coanalytic_),
                                  *p0_exact_ * c);
    }

    // Divides by the coefficient-modulus sum, restoring the normalization the
    // decision procedure demands. Exact when the polynomial carries exact form.
    HarmonicPolynomial renormalized_exact() const {
        auto s = coef_modulus_sum_exact();
        if (!s || !p0_exact_) throw argument_error("renormalize: symbol has no exact form");
        if (s->num() == 0) throw argument_error("renormalize: zero coefficient sum");
        return scaled_exact(Rational(1) / *s);
    }

  private:
    Complex p0_;
    std::optional<Rational> p0_exact_;
    std::vector<HarmonicTerm> analytic_;
    std::vector<HarmonicTerm> coanalytic_;

    static void validate_terms(const std::vector<HarmonicTerm>& ts, const char* side) {
        int prev = 0;
        for (const auto& t : ts) {
            if (t.degree <= prev)
                throw argument_error(std::string("harmonic ") + side +
                                     ": exponents must be strictly increasing and positive");
            if (std::abs(t.coef) == 0.0)
                throw argument_error(std::string("harmonic ") + side +
                                     ": zero coefficient listed");
            require_finite(t.coef, "harmonic coefficient");
            prev = t.degree;
        }
    }

    static Complex eval_terms(const std::vector<HarmonicTerm>& ts, Complex base) {
        Complex acc = 0.0;
        Complex power = 1.0;
        int reached = 0;
        for (const auto& t : ts) {
            for (; reached < t.degree; ++reached) power *= base;
            acc += t.coef * power;
        }
        return acc;
    }
};

enum class InterpRule { nearest, linear };

// Real function of r = |z| on [0, 1]: either polynomial in r (optionally with
// exact rational coefficients) or a sampled table with a declared
// interpolation rule.
class RadialSymbol {
  public:
    static RadialSymbol polynomial(std::vector<double> coeffs) {
        if (coeffs.empty()) throw argument_error("radial: empty coefficient list");
        for (double c : coeffs) require_finite(c, "radial coefficient");
        RadialSymbol g;
        g.coeffs_ = std::move(coeffs);
        return g;
    }

    static RadialSymbol polynomial_exact(std::vector<Rational> coeffs) {
        if (coeffs.empty()) throw argument_error("radial: empty coefficient list");
        RadialSymbol g;
        g.exact_.emplace(std::move(coeffs));
        g.coeffs_.reserve(g.exact_->size());
        for (const auto& c : *g.exact_) g.coeffs_.push_back(c.to_double());
        return g;
    }

    static RadialSymbol sampled(std::vector<std::pair<double, double>> samples,
                                InterpRule rule = InterpRule::linear) {
        if (samples.size() < 2) throw argument_error("radial: need at least two samples");
        double prev = -1.0;
        for (auto& [r, v] : samples) {
            if (!(r > prev) || r < 0.0 || r > 1.0)
                throw argument_error("radial: sample radii must be strictly increasing in [0, 1]");
            require_finite(v, "radial sample");
            prev = r;
        }
        RadialSymbol g;
        g.samples_ = std::move(samples);
        g.rule_ = rule;
        return g;
    }

    bool is_polynomial() const { return samples_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::optional<std::vector<Rational>>& exact_coeffs() const { return exact_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }
    int degree() const { return is_polynomial() ? static_cast<int>(coeffs_.size()) - 1 : 0; }

    double eval(double r) const {
        if (r < -1e-12 || r > 1.0 + 1e-12)
            throw domain_error("radial evaluation outside [0, 1]");
        r = std::clamp(r, 0.0, 1.0);
        if (is_polynomial()) {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
            return acc;
        }
        auto hi = std::lower_bound(samples_.begin(), samples_.end(), r,
                                   [](const auto& s, double x) { return s.first < x; });
        if (hi == samples_.begin()) return hi->second;
        if (hi == samples_.end()) return samples_.back().second;
        auto lo = hi - 1;
        if (rule_ == InterpRule::nearest)
            return (r - lo->first <= hi->first - r) ? lo->second : hi->second;
        double t = (r - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

    // Lipschitz constant: degree * sum|c_k| for polynomials; for sampled
    // tables the exact slope bound of the interpolant.
    double lipschitz() const {
        if (is_polynomial()) {
            double s = 0.0;
            for (double c : coeffs_) s += std::abs(c);
            return degree() * s;
        }
        double L = 0.0;
        for (std::size_t i = 1; i < samples_.size(); ++i) {
            double dr = samples_[i].first - samples_[i - 1].first;
            L = std::max(L, std::abs(samples_[i].second - samples_[i - 1].second) / dr);
        }
        return L;
    }

    double value_bound() const {
        if (is_polynomial()) {
            double s = 0.0;
            for (double c : coeffs_) s += std::abs(c);
            return s;
        }
        double m = 0.0;
        for (const auto& [r, v] : samples_) m = std::max(m, std::abs(v));
        return m;
    }

    RadialSymbol affine(double a, double b) const {
        if (b == 0.0) throw argument_error("radial affine: zero scale");
        if (is_polynomial()) {
            std::vector<double> c = coeffs_;
            for (double& x : c) x *= b;
            c[0] += a;
            return polynomial(std::move(c));
        }
        auto s = samples_;
        for (auto& [r, v] : s) v = a + b * v;
        return sampled(std::move(s), rule_);
    }

    RadialSymbol affine_exact(const Rational& a, const Rational& b) const {
        if (!exact_) throw argument_error("radial affine: no exact coefficients");
        std::vector<Rational> c = *exact_;
        for (auto& x : c) x = x * b;
        c[0] = c[0] + a;
        return polynomial_exact(std::move(c));
    }

  private:
    RadialSymbol() = default;
    std::vector<double> coeffs_;
    std::optional<std::vector<Rational>> exact_;
    std::vector<std::pair<double, double>> samples_;
    InterpRule rule_ = InterpRule::linear;
};

// Interpolates node values of a polar grid at an arbitrary point of the
// closed disc. Radii outside the ring range clamp to the nearest ring. The
// linear rule interpolates along the two bracketing rings first (periodic in
// the angle), then linearly in the radius; every output is a convex
// combination of node values.
inline Complex interpolate_polar(const DiskGrid& grid, const std::vector<Complex>& values,
                                 InterpRule rule, Complex w) {
    double r = std::abs(w);
    double theta = std::arg(w);
    if (theta < 0) theta += kTwoPi;

    auto along_ring = [&](std::size_t ring) -> Complex {
        int n = grid.ring_angles(ring);
        double pos = theta * n / kTwoPi;
        if (rule == InterpRule::nearest) {
            auto k = static_cast<std::size_t>(std::llround(pos)) % n;
            return values[grid.flat_index(ring, k)];
        }
        double fl = std::floor(pos);
        auto k0 = static_cast<std::size_t>(fl) % n;
        auto k1 = (k0 + 1) % n;
        double t = pos - fl;
        return (1.0 - t) * values[grid.flat_index(ring, k0)] +
               t * values[grid.flat_index(ring, k1)];
    };

    std::size_t nr = grid.ring_count();
    if (r <= grid.ring_radius(0)) return along_ring(0);
    if (r >= grid.ring_radius(nr - 1)) return along_ring(nr - 1);
    std::size_t hi = 1;
    while (grid.ring_radius(hi) < r) ++hi;
    std::size_t lo = hi - 1;
    if (rule == InterpRule::nearest)
        return along_ring(r - grid.ring_radius(lo) <= grid.ring_radius(hi) - r ? lo : hi);
    double t = (r - grid.ring_radius(lo)) / (grid.ring_radius(hi) - grid.ring_radius(lo));
    return (1.0 - t) * along_ring(lo) + t * along_ring(hi);
}

// General bounded symbol given as data: one complex value per grid node plus
// the interpolation rule that defines it between nodes.
class SampledSymbol {
  public:
    SampledSymbol(DiskGrid grid, std::vector<Complex> values,
                  InterpRule rule = InterpRule::linear)
        : grid_(std::move(grid)), values_(std::move(values)), rule_(rule) {
        if (values_.size() != grid_.node_count())
            throw argument_error("sampled symbol: value count differs from node count");
        for (const auto& v : values_) require_finite(v, "sampled value");
    }

    static SampledSymbol from_function(const DiskGrid& grid,
                                       const std::function<Complex(Complex)>& f,
                                       InterpRule rule = InterpRule::linear) {
        std::vector<Complex> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f(grid.node(i));
        return SampledSymbol(grid, std::move(vals), rule);
    }

    const DiskGrid& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    InterpRule rule() const { return rule_; }

    Complex eval(Complex w) const { return interpolate_polar(grid_, values_, rule_, w); }

    // Exact sup of the interpolant: interpolation is convex in node values.
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    DiskGrid grid_;
    std::vector<Complex> values_;
    InterpRule rule_;
};

using Symbol = std::variant<HarmonicPolynomial, RadialSymbol, SampledSymbol>;

inline Complex eval_symbol(const Symbol& s, Complex z) {
    return std::visit(
        [&](const auto& g) -> Complex {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, RadialSymbol>)
                return Complex(g.eval(std::abs(z)), 0.0);
            else
                return g.eval(z);
        },
        s);
}

inline std::function<Complex(Complex)> symbol_evaluator(const Symbol& s) {
    return [&s](Complex z) { return eval_symbol(s, z); };
}

inline std::string symbol_kind(const Symbol& s) {
    if (std::holds_alternative<HarmonicPolynomial>(s)) return "harmonic";
    if (std::holds_alternative<RadialSymbol>(s)) return "radial";
    return "sampled";
}

// Lipschitz constant on the closed disc when one is available.
inline std::optional<double> symbol_lipschitz(const Symbol& s) {
    if (const auto* h = std::get_if<HarmonicPolynomial>(&s)) return h->lipschitz();
    if (const auto* r = std::get_if<RadialSymbol>(&s)) return r->lipschitz();
    return std::nullopt;
}

struct SupNormBracket {
    double lower = 0.0;     // max |phi| over the evaluation grid
    double upper = 0.0;     // lower + Lipschitz slack; lower <= sup <= upper
    int resolution = 0;
    double covering = 0.0;  // covering radius of the grid used
};

namespace detail {

inline SupNormBracket sup_norm_harmonic(const HarmonicPolynomial& p, int resolution) {
    DiskGrid grid = DiskGrid::make_uniform(resolution);
    double lower = std::abs(p.eval(Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        lower = std::max(lower, std::abs(p.eval(grid.node(i))));
    // Origin node plus the uniform grid cover the closed disc with radius
    // 1/resolution (half ring gap + matched arc spacing).
    double h = 1.0 / resolution;
    return {lower, lower + p.lipschitz() * h, resolution, h};
}

inline SupNormBracket sup_norm_radial(const RadialSymbol& g, int resolution) {
    double lower = 0.0;
    for (int j = 0; j <= resolution; ++j)
        lower = std::max(lower, std::abs(g.eval(static_cast<double>(j) / resolution)));
    double h = 0.5 / resolution;
    return {lower, lower + g.lipschitz() * h, resolution, h};
}

}  // namespace detail

// Certified two-sided bracket of the sup norm over the closed disc. The
// sampled case is exact for the interpolant, whose extremes sit at nodes.
inline SupNormBracket sup_norm(const Symbol& s, int resolution = 512) {
    if (resolution < 8) throw argument_error("sup_norm: resolution must be at least 8");
    if (const auto* h = std::get_if<HarmonicPolynomial>(&s))
        return detail::sup_norm_harmonic(*h, resolution);
    if (const auto* r = std::get_if<RadialSymbol>(&s))
        return detail::sup_norm_radial(*r, resolution);
    const auto& sym = std::get<SampledSymbol>(s);
    double m = sym.max_abs();
    return {m, m, resolution, 0.0};
}

inline SupNormBracket sup_norm(const HarmonicPolynomial& p, int resolution = 512) {
    if (resolution < 8) throw argument_error("sup_norm: resolution must be at least 8");
    return detail::sup_norm_harmonic(p, resolution);
}

inline SupNormBracket sup_norm(const RadialSymbol& g, int resolution = 512) {
    if (resolution < 8) throw argument_error("sup_norm: resolution must be at least 8");
    return detail::sup_norm_radial(g, resolution);
}

// Structural report for the normalized harmonic class the decision procedure
// accepts: p0 real with p0 >= 1, nonzero listed coefficients and coefficient
// moduli summing to exactly 1.
struct Theorem33FormReport {
    bool p0_is_real = false;
    bool p0_ge_one = false;
    bool p0_greater_one = false;  // selects the unconditional branch
    double p0_value = 0.0;
    bool coefficients_nonzero = false;
    double modulus_sum = 0.0;
    std::optional<Rational> modulus_sum_exact;
    bool sum_is_one = false;
    bool exact = false;  // every coefficient carried exact polar form
    bool passes = false;
    std::string note;
};

inline Theorem33FormReport check_theorem33_form(const HarmonicPolynomial& p) {
    Theorem33FormReport rep;
    rep.p0_is_real = p.p0().imag() == 0.0;
    rep.p0_value = p.p0().real();
    rep.modulus_sum = p.coef_modulus_sum();
    rep.modulus_sum_exact = p.coef_modulus_sum_exact();
    rep.exact = rep.modulus_sum_exact.has_value() && p.p0_exact().has_value();
    rep.coefficients_nonzero = true;  // enforced at construction
    if (rep.exact) {
        rep.p0_ge_one = *p.p0_exact() >= Rational(1);
        rep.p0_greater_one = *p.p0_exact() > Rational(1);
        rep.sum_is_one = *rep.modulus_sum_exact == Rational(1);
    } else {
        rep.p0_ge_one = rep.p0_is_real && rep.p0_value >= 1.0;
        rep.p0_greater_one = rep.p0_is_real && rep.p0_value > 1.0;
        rep.sum_is_one = std::abs(rep.modulus_sum - 1.0) <= 1e-12;
    }
    rep.passes = rep.p0_is_real && rep.p0_ge_one && rep.coefficients_nonzero && rep.sum_is_one;
    if (!rep.sum_is_one && rep.p0_is_real && rep.p0_value == 1.0 && rep.modulus_sum < 1.0)
        rep.note = "modulus sum below 1 with p0 = 1: |1 - P| < 1 on the disc, so "
                   "invertibility follows from the disc condition; outside this "
                   "procedure's hypothesis";
    return rep;
}

// Finite trigonometric polynomial sum a_n e^{i n t} on the circle; the
// boundary restriction of a harmonic polynomial and the input format for the
// Poisson-extension routines.
class TrigPolynomial {
  public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(std::vector<std::pair<int, Complex>> terms)
        : terms_(std::move(terms)) {
        std::sort(terms_.begin(), terms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (terms_[i].first == terms_[i - 1].first)
                throw argument_error("trig polynomial: duplicate frequency");
    }

    static TrigPolynomial restriction(const HarmonicPolynomial& p) {
        std::vector<std::pair<int, Complex>> t;
        if (std::abs(p.p0()) != 0.0 || (p.analytic().empty() && p.coanalytic().empty()))
            t.emplace_back(0, p.p0());
        for (const auto& a : p.analytic()) t.emplace_back(a.degree, a.coef);
        for (const auto& c : p.coanalytic()) t.emplace_back(-c.degree, c.coef);
        return TrigPolynomial(std::move(t));
    }

    const std::vector<std::pair<int, Complex>>& terms() const { return terms_; }

    Complex eval(double theta) const {
        Complex acc = 0.0;
        for (const auto& [n, a] : terms_) acc += a * std::polar(1.0, n * theta);
        return acc;
    }

    double deriv_bound() const {
        double L = 0.0;
        for (const auto& [n, a] : terms_) L += std::abs(n) * std::abs(a);
        return L;
    }

    double abs_sum() const {
        double s = 0.0;
        for (const auto& [n, a] : terms_) s += std::abs(a);
        return s;
    }

    bool is_real_valued(double tol = 1e-14) const {
        for (const auto& [n, a] : terms_) {
            if (n == 0) {
                if (std::abs(a.imag()) > tol) return false;
                continue;
            }
            Complex mirror = 0.0;
            for (const auto& [m, b] : terms_)
                if (m == -n) mirror = b;
            if (std::abs(mirror - std::conj(a)) > tol) return false;
        }
        return true;
    }

    // Harmonic extension as a polynomial symbol (frequency n goes to z^n for
    // n > 0 and conj(z)^|n| for n < 0). Zero coefficients are dropped.
    HarmonicPolynomial to_harmonic() const {
        Complex p0 = 0.0;
        std::vector<HarmonicTerm> an, co;
        for (const auto& [n, a] : terms_) {
            if (std::abs(a) == 0.0) continue;
            if (n == 0)
                p0 = a;
            else if (n > 0)
                an.emplace_back(n, a);
            else
                co.emplace_back(-n, a);
        }
        auto bydeg = [](const HarmonicTerm& x, const HarmonicTerm& y) {
            return x.degree < y.degree;
        };
        std::sort(an.begin(), an.end(), bydeg);
        std::sort(co.begin(), co.end(), bydeg);
        return HarmonicPolynomial(p0, std::move(an), std::move(co));
    }

  private:
    std::vector<std::pair<int, Complex>> terms_;
};

}  // namespace bergtol
