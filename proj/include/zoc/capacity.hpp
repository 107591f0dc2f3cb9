#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zoc/copulas.hpp"
#include "zoc/errors.hpp"
#include "zoc/marginals.hpp"
#include "zoc/numerics.hpp"

namespace zoc {

//! Diversity combining at the receiver.
enum class combiner { mrc, sc };

inline double combine(combiner c, double x1, double x2) {
    return c == combiner::mrc ? x1 + x2 : std::max(x1, x2);
}

enum class zoc_candidate { none, quantile1, quantile2, tangent };

inline const char* to_string(zoc_candidate c) {
    switch (c) {
    case zoc_candidate::quantile1: return "quantile1";
    case zoc_candidate::quantile2: return "quantile2";
    case zoc_candidate::tangent: return "tangent";
    default: return "none";
    }
}

//! A computed zero-outage capacity with its SNR threshold and diagnostics.
struct zoc_result {
    double rate_bits = 0.0;
    double snr_threshold = 0.0;              ///< s* with rate = log2(1 + s*)
    std::optional<double> tangent_x;         ///< boundary tangent point x*, if interior
    std::optional<double> p_star;            ///< SC equalizing probability, if applicable
    zoc_candidate chosen = zoc_candidate::none;
    std::string status = "ok";
};

namespace detail {

inline double rate_from_snr(double s) { return std::log1p(s) / 0.6931471805599453; }

inline zoc_result make_result(double s, zoc_candidate chosen) {
    zoc_result r;
    r.snr_threshold = s;
    r.rate_bits = rate_from_snr(s);
    r.chosen = chosen;
    return r;
}

// Classifies the minimizer of the boundary objective against the two
// endpoint candidates F2^{-1}(w) (p = 0) and F1^{-1}(w) (p = w).
inline void classify_candidate(zoc_result& r, const gain_distribution& f1,
                               const gain_distribution& f2, double width, double p) {
    const double q1 = quantile_or_inf(f1, width);
    const double q2 = quantile_or_inf(f2, width);
    const double tol = 1e-9 * (1.0 + std::fabs(r.snr_threshold));
    if (std::isfinite(q2) && q2 <= r.snr_threshold + tol) {
        r.snr_threshold = std::min(r.snr_threshold, q2);
        r.chosen = zoc_candidate::quantile2;
    } else if (std::isfinite(q1) && q1 <= r.snr_threshold + tol) {
        r.snr_threshold = std::min(r.snr_threshold, q1);
        r.chosen = zoc_candidate::quantile1;
    } else {
        r.chosen = zoc_candidate::tangent;
        r.tangent_x = f1.quantile(p);
    }
    r.rate_bits = rate_from_snr(r.snr_threshold);
}

} // namespace detail

//! Zero-outage capacity of two dependent links under the copula C_t, MRC.
//!
//! The SNR threshold is the global minimum of x + B_t(x) over the zero-set
//! boundary, taken in probability space p = F1(x): endpoints reproduce the
//! quantile candidates F2^{-1}(t) and F1^{-1}(t), interior minima are the
//! tangent candidate.
inline zoc_result mrc_two_link_ct(const gain_distribution& f1, const gain_distribution& f2,
                                  double t, const tolerance_config& tol = {}) {
    if (!(t >= 0.0 && t <= 1.0)) throw domain_error("mrc_two_link_ct: requires t in [0, 1]");
    if (t == 0.0) return detail::make_result(0.0, zoc_candidate::quantile1);

    auto objective = [&](double p) {
        return quantile_or_inf(f1, p) + quantile_or_inf(f2, t - p);
    };
    const scalar_minimum m = minimize_on_interval(objective, 0.0, t, tol);
    zoc_result r = detail::make_result(m.value, zoc_candidate::none);
    detail::classify_candidate(r, f1, f2, t, m.argmin);
    return r;
}

//! Closed form of mrc_two_link_ct for two Rayleigh links with rates
//! lambda_i = 1 / rho_i.
inline zoc_result mrc_two_link_rayleigh(double lambda1, double lambda2, double t) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw domain_error("mrc_two_link_rayleigh: requires positive rates");
    if (!(t >= 0.0 && t <= 1.0)) throw domain_error("mrc_two_link_rayleigh: requires t in [0, 1]");
    if (t == 0.0) return detail::make_result(0.0, zoc_candidate::quantile1);

    const double x_unclamped = -std::log(lambda2 * (2.0 - t) / (lambda1 + lambda2)) / lambda1;
    const double x_hi = (t < 1.0) ? -std::log1p(-t) / lambda1
                                  : std::numeric_limits<double>::infinity();
    const double x = std::min(std::max(x_unclamped, 0.0), x_hi);
    const double s = x - std::log(2.0 - t - std::exp(-lambda1 * x)) / lambda2;

    zoc_result r = detail::make_result(s, zoc_candidate::tangent);
    if (x_unclamped <= 0.0) {
        r.chosen = zoc_candidate::quantile2;
    } else if (x_unclamped >= x_hi) {
        r.chosen = zoc_candidate::quantile1;
    } else {
        r.tangent_x = x;
    }
    return r;
}

//! Maximum ZOC over all joint distributions of two links.
//!
//! MRC: countermonotonic coupling, i.e. C_t with t = 1. SC: solves
//! F1^{-1}(p) = F2^{-1}(1 - p) and reports rate log2(1 + F1^{-1}(p*)).
inline zoc_result max_zoc_two_link(const gain_distribution& f1, const gain_distribution& f2,
                                   combiner comb, const tolerance_config& tol = {}) {
    if (comb == combiner::mrc) return mrc_two_link_ct(f1, f2, 1.0, tol);

    const double eps = 1e-12;
    const double p = find_root_bracketed(
        [&](double q) { return f1.quantile(q) - f2.quantile(1.0 - q); },
        {eps, 1.0 - eps}, tol);
    zoc_result r = detail::make_result(f1.quantile(p), zoc_candidate::none);
    r.p_star = p;
    return r;
}

//! ZOC for an arbitrary bivariate copula with a nondegenerate zero set:
//! minimizes the combiner over the zero-set boundary.
inline zoc_result generic_two_link(const bivariate_copula& c, const gain_distribution& f1,
                                   const gain_distribution& f2, combiner comb,
                                   const tolerance_config& tol = {}) {
    if (!c.has_zero_set()) {
        zoc_result r = detail::make_result(0.0, zoc_candidate::none);
        r.status = "no_zero_set";
        return r;
    }
    const zero_boundary_curve boundary(c, f1, f2);
    const double w = boundary.width();
    auto objective = [&](double p) {
        const double x1 = quantile_or_inf(f1, p);
        const double x2 = quantile_or_inf(f2, boundary.v_of_u(p));
        return combine(comb, x1, x2);
    };
    const scalar_minimum m = minimize_on_interval(objective, 0.0, w, tol);
    zoc_result r = detail::make_result(m.value, zoc_candidate::none);
    if (comb == combiner::mrc) {
        detail::classify_candidate(r, f1, f2, w, m.argmin);
    } else {
        r.p_star = m.argmin;
    }
    return r;
}

//! Outer bound on the maximum n-link MRC ZOC from the Fréchet-Hoeffding
//! lower bound: log2(1 + n F^{-1}(1 - 1/n)).
inline double mrc_outer_bound_w(const gain_distribution& f, int n) {
    if (n < 2) throw domain_error("mrc_outer_bound_w: requires n >= 2");
    return detail::rate_from_snr(n * f.quantile(1.0 - 1.0 / n));
}

//! Outer bound from joint mixability: log2(1 + n E[X]).
inline double mrc_outer_bound_jm(const gain_distribution& f, int n) {
    if (n < 2) throw domain_error("mrc_outer_bound_jm: requires n >= 2");
    return detail::rate_from_snr(n * f.mean());
}

//! Inner (achievable) bound from the Archimedean lower-bound copula:
//! log2(1 + n F^{-1}((1 - 1/n)^{n-1})).
inline double mrc_inner_bound(const gain_distribution& f, int n) {
    if (n < 2) throw domain_error("mrc_inner_bound: requires n >= 2");
    return detail::rate_from_snr(n * f.quantile(std::pow(1.0 - 1.0 / n, n - 1.0)));
}

//! Asymptotic cap on the gap between outer and inner bound:
//! log2(E[X] / F^{-1}(1/e)).
inline double mrc_gap_limit(const gain_distribution& f) {
    const double q = f.quantile(0.36787944117144233);
    if (!(q > 0.0)) throw degenerate_quantile("mrc_gap_limit: F^{-1}(1/e) is zero");
    return std::log2(f.mean() / q);
}

//! Verdict of a sufficient-condition check for the boundary-symmetric
//! minimum property.
struct bsym_verdict {
    std::string boundary;     ///< "w_boundary" or "arch_boundary"
    double condition_value;   ///< negative means the derivative condition holds
    bool holds;
    bool quasiconcave_ok;
    std::string notes;
};

namespace detail {

// Finite unimodality scan over the central 99.99% mass: no rise after a fall.
// Approximate by construction; the property is not decidable numerically.
template <class Fn>
bool unimodal_on_grid(Fn&& g, const gain_distribution& f, int grid_points) {
    const double lo = f.quantile(5e-5);
    const double hi = f.quantile(1.0 - 5e-5);
    if (!(hi > lo)) return true;
    std::vector<double> vals(grid_points);
    double vmax = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        vals[i] = g(x);
        if (std::isfinite(vals[i])) vmax = std::max(vmax, std::fabs(vals[i]));
    }
    const double eps = 1e-9 * (vmax > 0.0 ? vmax : 1.0);
    bool fell = false;
    for (int i = 1; i < grid_points; ++i) {
        const double d = vals[i] - vals[i - 1];
        if (d < -eps) fell = true;
        else if (d > eps && fell) return false;
    }
    return true;
}

} // namespace detail

//! Sufficient condition for the W-type boundary (sum of CDFs):
//! f'(F^{-1}(1 - 1/n)) < 0, with a unimodality scan of the density.
inline bsym_verdict bsym_check_w(const gain_distribution& f, int n,
                                 const tolerance_config& tol = {}) {
    if (n < 2) throw domain_error("bsym_check_w: requires n >= 2");
    bsym_verdict v;
    v.boundary = "w_boundary";
    v.condition_value = f.pdf_derivative(f.quantile(1.0 - 1.0 / n));
    v.holds = v.condition_value < 0.0;
    v.quasiconcave_ok =
        detail::unimodal_on_grid([&](double x) { return f.pdf(x); }, f, tol.grid_points);
    v.notes = v.holds ? "density decreasing at F^{-1}(1-1/n)"
                      : "density increasing at F^{-1}(1-1/n)";
    return v;
}

//! Sufficient conditions for the Archimedean-type boundary: quasi-concavity
//! of g(x) = F^{(2-n)/(n-1)} f / (n-1) plus the curvature inequality at
//! x* = F^{-1}((1-1/n)^{n-1}). condition_value is lhs - rhs of the inequality.
inline bsym_verdict bsym_check_arch(const gain_distribution& f, int n,
                                    const tolerance_config& tol = {}) {
    if (n < 2) throw domain_error("bsym_check_arch: requires n >= 2");
    const double nr = n;
    const double x_star = f.quantile(std::pow(1.0 - 1.0 / nr, nr - 1.0));
    const double fx = f.pdf(x_star);
    const double lhs = f.pdf_derivative(x_star) / (fx * fx);
    const double rhs = (nr - 2.0) / (nr - 1.0) * std::pow(1.0 - 1.0 / nr, 1.0 - nr);

    bsym_verdict v;
    v.boundary = "arch_boundary";
    v.condition_value = lhs - rhs;
    v.quasiconcave_ok = detail::unimodal_on_grid(
        [&](double x) {
            return std::pow(f.cdf(x), (2.0 - nr) / (nr - 1.0)) * f.pdf(x) / (nr - 1.0);
        },
        f, tol.grid_points);
    v.holds = v.quasiconcave_ok && v.condition_value < 0.0;
    v.notes = v.holds ? "both sufficient conditions hold" : "sufficient conditions violated";
    return v;
}

//! Maximum SC ZOC for n homogeneous links: log2(1 + F^{-1}(1 - 1/n)).
inline zoc_result sc_n_homogeneous(const gain_distribution& f, int n) {
    if (n < 2) throw domain_error("sc_n_homogeneous: requires n >= 2");
    return detail::make_result(f.quantile(1.0 - 1.0 / n), zoc_candidate::none);
}

//! Maximum SC ZOC for heterogeneous links: solves
//! sum_i F_i(s) = n - 1 by bracket expansion plus Brent.
inline zoc_result sc_n_heterogeneous(const std::vector<const gain_distribution*>& fs,
                                     const tolerance_config& tol = {}) {
    const int n = static_cast<int>(fs.size());
    if (n < 2) throw domain_error("sc_n_heterogeneous: requires n >= 2 marginals");
    auto h = [&](double s) {
        double acc = 1.0 - n;
        for (const auto* f : fs) acc += f->cdf(s);
        return acc;
    };
    double hi = 1.0;
    while (h(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 0x1p60)
            throw no_convergence("sc_n_heterogeneous: no finite solution (improper marginal?)");
    }
    const double s = find_root_bracketed(h, {0.0, hi}, tol);
    zoc_result r = detail::make_result(s, zoc_candidate::none);
    if (n == 2) r.p_star = fs[0]->cdf(s);
    return r;
}

//! Inner bound, both outer bounds and the gap for n homogeneous MRC links.
struct bounds_report_row {
    int n;
    double inner_bits;
    double outer_w_bits;
    double outer_jm_bits;
    double gap_bits;        ///< outer_jm - inner
    double gap_limit_bits;  ///< asymptotic cap on the gap
    bool bsym_w_holds;
    bool bsym_arch_holds;
};

inline std::vector<bounds_report_row> bounds_report(const gain_distribution& f, int n_lo,
                                                    int n_hi, const tolerance_config& tol = {}) {
    if (n_lo < 2 || n_hi > 1000000 || n_lo > n_hi)
        throw domain_error("bounds_report: requires 2 <= n_lo <= n_hi <= 1e6");
    const double gap_limit = mrc_gap_limit(f);
    std::vector<bounds_report_row> rows;
    rows.reserve(n_hi - n_lo + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
        bounds_report_row row;
        row.n = n;
        row.inner_bits = mrc_inner_bound(f, n);
        row.outer_w_bits = mrc_outer_bound_w(f, n);
        row.outer_jm_bits = mrc_outer_bound_jm(f, n);
        row.gap_bits = row.outer_jm_bits - row.inner_bits;
        row.gap_limit_bits = gap_limit;
        row.bsym_w_holds = bsym_check_w(f, n, tol).holds;
        row.bsym_arch_holds = bsym_check_arch(f, n, tol).holds;
        rows.push_back(row);
    }
    return rows;
}

} // namespace zoc
