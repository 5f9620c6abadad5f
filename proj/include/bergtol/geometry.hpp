#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "bergtol/common.hpp"
#include "bergtol/grid.hpp"
#include "bergtol/symbols.hpp"

namespace bergtol {

// Result of scanning Re phi - delta * (Im phi)^2 over a grid. min_margin is
// evidence; the certificate fields upgrade it to a proof over the whole
// closed disc when the symbol has a Lipschitz bound:
//   margin(z) >= min_margin - L_margin * covering_radius   for all |z| <= 1.
struct MarginReport {
    double min_margin = 0.0;
    Complex argmin;          // grid node attaining the minimum
    double delta = 1.0;
    std::string grid_kind;
    std::size_t node_count = 0;
    bool has_certificate = false;  // Lipschitz machinery available
    double lipschitz = 0.0;        // constant for the margin function
    double covering = 0.0;
    double certified_margin = 0.0;  // min_margin - lipschitz * covering
    bool certified_nonneg = false;
};

inline MarginReport parabolic_margin(const Symbol& phi, double delta, const DiskGrid& grid) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw argument_error("parabolic margin: delta must lie in (0, 1]");
    if (grid.node_count() == 0) throw argument_error("parabolic margin: empty grid");
    MarginReport rep;
    rep.delta = delta;
    rep.grid_kind = grid.kind();
    rep.node_count = grid.node_count();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        Complex v = eval_symbol(phi, grid.node(i));
        double m = v.real() - delta * v.imag() * v.imag();
        if (m < best) {
            best = m;
            best_idx = i;
        }
    }
    rep.min_margin = best;
    rep.argmin = grid.node(best_idx);
    if (auto L = symbol_lipschitz(phi)) {
        // |margin(z) - margin(z')| <= L(1 + 2 delta S)|z - z'| with S a sup
        // bound for |Im phi|.
        double S = std::visit(
            [](const auto& g) -> double {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, SampledSymbol>)
                    return g.max_abs();
                else
                    return g.value_bound();
            },
            phi);
        rep.has_certificate = true;
        rep.lipschitz = *L * (1.0 + 2.0 * delta * S);
        rep.covering = grid.covering_radius();
        rep.certified_margin = rep.min_margin - rep.lipschitz * rep.covering;
        rep.certified_nonneg = rep.certified_margin >= 0.0;
    }
    return rep;
}

// Scale factor R = min(1, 1/||phi||) / 2 computed from the certified upper
// norm bracket. Rescaling by R turns the weak parabolic inequality
// Re phi >= (Im phi)^2 into the strong one Re(R phi) >= |R phi|^2.
inline double scaling_constant(const Symbol& phi, int resolution = 512) {
    double upper = sup_norm(phi, resolution).upper;
    require_finite(upper, "scaling constant");
    double m = upper <= 1.0 ? 1.0 : 1.0 / upper;  // zero symbol lands here too
    return 0.5 * m;
}

// sup over the grid of |1 - phi|; a value < 1 implies the delta = 1/2
// parabolic inequality at every grid node.
inline double disc_condition(const Symbol& phi, const DiskGrid& grid) {
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        sup = std::max(sup, std::abs(1.0 - eval_symbol(phi, grid.node(i))));
    return sup;
}

struct EuclideanDisc {
    Complex center;
    double radius = 0.0;

    // area against dA = Lebesgue / pi
    double normalized_area() const { return radius * radius; }

    bool contains(Complex x) const { return std::abs(x - center) <= radius; }
};

// Euclidean parameters of the pseudohyperbolic disc D(w, eps); its closure
// stays inside the closed unit disc.
inline EuclideanDisc pseudohyperbolic_disc(Complex w, double eps) {
    double aw = std::abs(w);
    if (aw >= 1.0) throw domain_error("pseudohyperbolic disc: |w| must be < 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw domain_error("pseudohyperbolic disc: eps must lie in (0, 1)");
    double e2 = eps * eps, w2 = aw * aw;
    double denom = 1.0 - e2 * w2;
    return {(1.0 - e2) * w / denom, eps * (1.0 - w2) / denom};
}

inline double pseudohyperbolic_distance(Complex a, Complex b) {
    return std::abs((a - b) / (1.0 - std::conj(a) * b));
}

struct LueckingEstimate {
    double min_ratio = 1.0;
    Complex argmin;
    double std_error = 0.0;
    int samples_per_disc = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 0x42455247544f4cULL;  // documented default

// Stochastic lower-density diagnostic: for every probe w estimates the area
// fraction of D(w, eps) covered by the set G, by uniform sampling of the
// disc. Per-probe generators are derived from (seed, probe index), so the
// estimate does not depend on evaluation order.
inline LueckingEstimate luecking_density(const std::function<bool(Complex)>& member, double eps,
                                         const DiskGrid& probes, int samples_per_disc,
                                         std::uint64_t seed = kDefaultSeed) {
    if (samples_per_disc < 100)
        throw argument_error("luecking density: need at least 100 samples per disc");
    LueckingEstimate out;
    out.samples_per_disc = samples_per_disc;
    bool first = true;
    for (std::size_t i = 0; i < probes.node_count(); ++i) {
        Complex w = probes.node(i);
        if (std::abs(w) >= 1.0) continue;
        EuclideanDisc d = pseudohyperbolic_disc(w, eps);
        std::mt19937_64 gen(seed + 0x9E3779B97F4A7C15ULL * (i + 1));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        int hits = 0;
        for (int s = 0; s < samples_per_disc; ++s) {
            double r = d.radius * std::sqrt(unif(gen));
            double th = kTwoPi * unif(gen);
            if (member(d.center + std::polar(r, th))) ++hits;
        }
        double ratio = static_cast<double>(hits) / samples_per_disc;
        if (first || ratio < out.min_ratio) {
            first = false;
            out.min_ratio = ratio;
            out.argmin = w;
            out.std_error = std::sqrt(std::max(ratio * (1.0 - ratio), 0.0) / samples_per_disc);
        }
    }
    if (first) throw argument_error("luecking density: no probes inside the open disc");
    return out;
}

enum class SufficiencyVariant {
    im_squared,  // Re phi >= (Im phi)^2 away from the small set, |Lambda| <= rho^6
    im_linear,   // sketched variant: Re phi >= |Im phi|, budget relaxed to rho^4
};

struct SufficiencyVerdict {
    double rho = 0.0;
    double rho0 = 0.0;
    bool rho_below_rho0 = false;
    bool pass_i = false;
    double margin_i = 0.0;  // min geometric margin over nodes with |phi| >= rho
    bool pass_ii = false;
    double margin_ii = 0.0;  // min |phi| - rho over nodes with |z| >= rho
    bool pass_iii = false;
    double lambda_area = 0.0;  // one-sided over-count of |{|phi| <= rho}|
    double lambda_budget = 0.0;
    SufficiencyVariant variant = SufficiencyVariant::im_squared;
    bool pass = false;
    std::string reason;
};

// Grid check of the three-part sufficient condition: geometric inequality
// where |phi| >= rho, |phi| > rho away from a rho-neighborhood of 0, and a
// small exceptional set Lambda = {|phi| <= rho}. The Lambda area is counted
// cell-wise with Lipschitz slack, so it can only over-estimate; sufficiency
// is never claimed spuriously. Everything is gated on rho < rho0 with
// rho0 = min(1, 1/||phi||) / 32 from the certified norm bracket.
inline SufficiencyVerdict thm_sufficient_check(const Symbol& phi, double rho,
                                               const DiskGrid& grid,
                                               SufficiencyVariant variant =
                                                   SufficiencyVariant::im_squared,
                                               int norm_resolution = 256) {
    if (!(rho > 0.0)) throw argument_error("sufficiency check: rho must be positive");
    SufficiencyVerdict v;
    v.rho = rho;
    v.variant = variant;
    double upper = sup_norm(phi, norm_resolution).upper;
    v.rho0 = (upper <= 1.0 ? 1.0 : 1.0 / upper) / 32.0;
    v.rho_below_rho0 = rho < v.rho0;

    double lip = symbol_lipschitz(phi).value_or(0.0);
    v.pass_i = true;
    v.pass_ii = true;
    v.margin_i = std::numeric_limits<double>::infinity();
    v.margin_ii = std::numeric_limits<double>::infinity();
    v.lambda_area = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        Complex z = grid.node(i);
        Complex val = eval_symbol(phi, z);
        double av = std::abs(val);
        if (av >= rho) {
            double m = variant == SufficiencyVariant::im_squared
                           ? val.real() - val.imag() * val.imag()
                           : val.real() - std::abs(val.imag());
            v.margin_i = std::min(v.margin_i, m);
            if (m < 0.0) v.pass_i = false;
        }
        if (std::abs(z) >= rho) {
            v.margin_ii = std::min(v.margin_ii, av - rho);
            if (!(av > rho)) v.pass_ii = false;
        }
        // cell counts toward Lambda if its node could hide a value <= rho
        std::size_t ring = grid.ring_of(i);
        if (av <= rho + lip * grid.ring_covering_radius(ring))
            v.lambda_area += grid.cell_area(ring);
    }
    v.lambda_budget = variant == SufficiencyVariant::im_squared ? std::pow(rho, 6.0)
                                                                : std::pow(rho, 4.0);
    v.pass_iii = v.lambda_area <= v.lambda_budget;
    v.pass = v.pass_i && v.pass_ii && v.pass_iii && v.rho_below_rho0;
    if (!v.rho_below_rho0) v.reason = "rho exceeds rho0";
    else if (!v.pass_i) v.reason = "geometric inequality fails where |phi| >= rho";
    else if (!v.pass_ii) v.reason = "|phi| <= rho somewhere with |z| >= rho";
    else if (!v.pass_iii) v.reason = "exceptional set larger than budget";
    return v;
}

// Norm of multiplication by the indicator of a set inside B(0, r), restricted
// to functions vanishing to order n at 0: r^{n+1} / sqrt(1 - r).
inline double multiplier_tail_bound(double r, int n) {
    if (!(r > 0.0 && r < 1.0)) throw domain_error("multiplier bound: r must lie in (0, 1)");
    if (n < 0) throw argument_error("multiplier bound: n must be >= 0");
    return std::pow(r, n + 1.0) / std::sqrt(1.0 - r);
}

}  // namespace bergtol
