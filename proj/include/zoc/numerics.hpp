#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "zoc/errors.hpp"

namespace zoc {

//! Shared tolerances for the scalar solvers.
struct tolerance_config {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;
    int grid_points = 2048; ///< sample count for global interval scans

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw domain_error("tolerance_config: tolerances must be positive");
        if (max_iter < 1)
            throw domain_error("tolerance_config: max_iter must be >= 1");
        if (grid_points < 16)
            throw domain_error("tolerance_config: grid_points must be >= 16");
    }
};

//! Interval [lo, hi] on which a target function changes sign.
struct root_bracket {
    double lo;
    double hi;
};

//! Result of a 1-D minimization.
struct scalar_minimum {
    double argmin;
    double value;
};

//! Brent's method on a sign-changing bracket.
//!
//! Returns x with |f(x)| driven to the tolerance or the bracket collapsed
//! below abs_tol. Deterministic for identical inputs.
template <class F>
double find_root_bracketed(F&& f, root_bracket bracket, const tolerance_config& tol = {}) {
    tol.validate();
    if (!(bracket.lo < bracket.hi))
        throw invalid_interval("find_root_bracketed: requires lo < hi");

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw no_sign_change("find_root_bracketed: f(lo) and f(hi) have the same sign");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
                            0.5 * std::max(tol.abs_tol, tol.rel_tol * std::fabs(b));
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // inverse quadratic interpolation, falling back to secant
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += std::copysign(tol1, xm);
        fb = f(b);
    }
    throw no_convergence("find_root_bracketed: max_iter exceeded");
}

namespace detail {

// Golden-section refinement on (a, b); the bracket endpoints are never
// evaluated.
template <class F>
scalar_minimum golden_section(F&& f, double a, double b, const tolerance_config& tol) {
    static const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    auto guarded = [&](double x) {
        const double y = f(x);
        return std::isfinite(y) ? y : std::numeric_limits<double>::infinity();
    };
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = guarded(x1), f2 = guarded(x2);
    scalar_minimum best = (f1 <= f2) ? scalar_minimum{x1, f1} : scalar_minimum{x2, f2};
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if (b - a <= std::max(tol.abs_tol, tol.rel_tol * std::fabs(0.5 * (a + b)))) break;
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = guarded(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = guarded(x2);
        }
        if (f1 < best.value) best = {x1, f1};
        if (f2 < best.value) best = {x2, f2};
    }
    return best;
}

} // namespace detail

//! Global minimum of a continuous function on [lo, hi].
//!
//! Dense grid scan (tol.grid_points samples, endpoints included) followed by
//! golden-section refinement around the best grid cell. Isolated non-finite
//! values are skipped; if more than a quarter of the grid is non-finite the
//! scan aborts with non_finite_error.
template <class F>
scalar_minimum minimize_on_interval(F&& f, double lo, double hi, const tolerance_config& tol = {}) {
    tol.validate();
    if (!(lo <= hi))
        throw invalid_interval("minimize_on_interval: requires lo <= hi");
    if (lo == hi) {
        const double v = f(lo);
        if (!std::isfinite(v)) throw non_finite_error("minimize_on_interval: f not finite at the single point");
        return {lo, v};
    }

    const int n = tol.grid_points;
    const double step = (hi - lo) / (n - 1);
    int best_idx = -1;
    double best_val = std::numeric_limits<double>::infinity();
    int non_finite = 0;
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? hi : lo + i * step;
        const double v = f(x);
        if (!std::isfinite(v)) {
            ++non_finite;
            continue;
        }
        if (v < best_val) {
            best_val = v;
            best_idx = i;
        }
    }
    if (best_idx < 0 || non_finite * 4 > n)
        throw non_finite_error("minimize_on_interval: too many non-finite evaluations");

    const double ra = std::max(lo, lo + (best_idx - 1) * step);
    const double rb = std::min(hi, lo + (best_idx + 1) * step);
    scalar_minimum refined = detail::golden_section(f, ra, rb, tol);
    if (refined.value < best_val) return refined;
    return {(best_idx == n - 1) ? hi : lo + best_idx * step, best_val};
}

//! Central difference (f(x+h) - f(x-h)) / 2h; h <= 0 selects the default step.
template <class F>
double derivative_central(F&& f, double x, double h = 0.0) {
    if (h <= 0.0) h = std::max(1e-6, 1e-6 * std::fabs(x));
    const double fp = f(x + h);
    const double fm = f(x - h);
    if (!std::isfinite(fp) || !std::isfinite(fm))
        throw non_finite_error("derivative_central: non-finite function value");
    return (fp - fm) / (2.0 * h);
}

} // namespace zoc
