#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zoc/errors.hpp"
#include "zoc/marginals.hpp"
#include "zoc/numerics.hpp"
#include "zoc/rng.hpp"

namespace zoc {

enum class copula_family { comonotone, countermonotone, independence, shifted_w, circular, clayton };

//! Two-dimensional dependency structure.
//!
//! Families: the Fréchet-Hoeffding extremes M and W, independence, the
//! shifted-W family C_t (W stretched into [0,t]^2, comonotone above), a
//! circular-copula generalization with the same zero set, and Clayton.
class bivariate_copula {
public:
    static bivariate_copula comonotone() { return {copula_family::comonotone, 0.0}; }
    static bivariate_copula countermonotone() { return {copula_family::countermonotone, 0.0}; }
    static bivariate_copula independence() { return {copula_family::independence, 0.0}; }
    static bivariate_copula shifted_w(double t) {
        if (!(t >= 0.0 && t <= 1.0)) throw domain_error("shifted_w: requires t in [0, 1]");
        return {copula_family::shifted_w, t};
    }
    static bivariate_copula circular(double t) {
        if (!(t >= 0.0 && t <= 1.0)) throw domain_error("circular: requires t in [0, 1]");
        return {copula_family::circular, t};
    }
    static bivariate_copula clayton(double theta) {
        if (!(theta >= -1.0) || theta == 0.0)
            throw domain_error("clayton: requires theta in [-1, inf) \\ {0}");
        return {copula_family::clayton, theta};
    }

    copula_family family() const { return family_; }
    double parameter() const { return param_; }

    //! C(a, b) on the unit square.
    double operator()(double a, double b) const {
        if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
            throw domain_error("bivariate_copula: arguments outside the unit square");
        switch (family_) {
        case copula_family::comonotone:
            return std::min(a, b);
        case copula_family::countermonotone:
            return std::max(a + b - 1.0, 0.0);
        case copula_family::independence:
            return a * b;
        case copula_family::shifted_w:
            if (a <= param_ && b <= param_) return std::max(a + b - param_, 0.0);
            return std::min(a, b);
        case copula_family::circular: {
            // M outside the diagonal band, W outside the middle diamond,
            // the linear patch (a+b)/2 - t/2 in between.
            if (std::fabs(a - b) > param_) return std::min(a, b);
            if (std::fabs(a + b - 1.0) >= 1.0 - param_) return std::max(a + b - 1.0, 0.0);
            return 0.5 * (a + b) - 0.5 * param_;
        }
        case copula_family::clayton: {
            if (a == 0.0 || b == 0.0) return 0.0;
            const double s = std::pow(a, -param_) + std::pow(b, -param_) - 1.0;
            if (s <= 0.0) return 0.0;
            return std::pow(s, -1.0 / param_);
        }
        }
        return 0.0;
    }

    //! True when {C = 0} extends beyond the axes.
    bool has_zero_set() const {
        switch (family_) {
        case copula_family::countermonotone:
            return true;
        case copula_family::shifted_w:
        case copula_family::circular:
            return param_ > 0.0;
        case copula_family::clayton:
            return param_ < 0.0;
        default:
            return false;
        }
    }

    //! Extent of the zero set along each axis in copula space.
    double zero_set_width() const {
        require_zero_set();
        switch (family_) {
        case copula_family::countermonotone:
            return 1.0;
        case copula_family::shifted_w:
        case copula_family::circular:
            return param_;
        default: // clayton, theta < 0
            return 1.0;
        }
    }

    //! Upper boundary of the zero set: v(u) with C(u, v(u)) = 0, u in [0, width].
    double zero_boundary_v(double u) const {
        require_zero_set();
        const double w = zero_set_width();
        u = std::min(std::max(u, 0.0), w);
        if (family_ == copula_family::clayton) {
            if (u == 0.0) return 1.0;
            const double s = 1.0 - std::pow(u, -param_);
            return s <= 0.0 ? 0.0 : std::pow(s, -1.0 / param_);
        }
        return w - u;
    }

    //! Conditional CDF h(v | a) = dC(u, v)/du at u = a, a in (0, 1).
    double conditional(double v, double a) const {
        if (!(a > 0.0 && a < 1.0)) throw domain_error("conditional: requires a in (0, 1)");
        if (v <= 0.0) return 0.0;
        if (v >= 1.0) return 1.0;
        switch (family_) {
        case copula_family::independence:
            return v;
        case copula_family::comonotone:
            return v >= a ? 1.0 : 0.0;
        case copula_family::countermonotone:
            return v >= 1.0 - a ? 1.0 : 0.0;
        case copula_family::shifted_w:
            if (a <= param_) return v >= param_ - a ? 1.0 : 0.0;
            return v >= a ? 1.0 : 0.0;
        case copula_family::clayton: {
            const double s = std::pow(a, -param_) + std::pow(v, -param_) - 1.0;
            if (s <= 0.0) return 0.0;
            return std::pow(a, -param_ - 1.0) * std::pow(s, -1.0 / param_ - 1.0);
        }
        case copula_family::circular: {
            const double h = std::min(1e-7, 0.5 * std::min(a, 1.0 - a));
            const double d = ((*this)(a + h, v) - (*this)(a - h, v)) / (2.0 * h);
            return std::min(1.0, std::max(0.0, d));
        }
        }
        return v;
    }

    //! Exact sampler; deterministic for a given seed.
    std::vector<std::array<double, 2>> sample(std::size_t count, std::uint64_t seed) const {
        if (count < 1) throw domain_error("sample: requires count >= 1");
        counter_rng rng(seed);
        std::vector<std::array<double, 2>> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double u = rng.uniform(2 * i);
            double v;
            switch (family_) {
            case copula_family::comonotone:
                v = u;
                break;
            case copula_family::countermonotone:
                v = 1.0 - u;
                break;
            case copula_family::independence:
                v = rng.uniform(2 * i + 1);
                break;
            case copula_family::shifted_w:
                v = (u <= param_) ? param_ - u : u;
                break;
            default: { // clayton, circular: conditional-distribution method
                const double w = rng.uniform(2 * i + 1);
                v = invert_conditional(u, w);
                break;
            }
            }
            out[i] = {u, v};
        }
        return out;
    }

    std::string describe() const {
        switch (family_) {
        case copula_family::comonotone:
            return "m";
        case copula_family::countermonotone:
            return "w";
        case copula_family::independence:
            return "indep";
        case copula_family::shifted_w:
            return "shifted_w:t=" + std::to_string(param_);
        case copula_family::circular:
            return "circular:t=" + std::to_string(param_);
        case copula_family::clayton:
            return "clayton:theta=" + std::to_string(param_);
        }
        return "";
    }

private:
    bivariate_copula(copula_family f, double p) : family_(f), param_(p) {}

    void require_zero_set() const {
        if (!has_zero_set())
            throw empty_zero_set("copula " + describe() + " has an empty zero set");
    }

    double invert_conditional(double a, double w) const {
        tolerance_config tol;
        tol.abs_tol = 1e-13;
        tol.rel_tol = 1e-13;
        // h(. | a) rises from 0 to 1, possibly with jumps; Brent converges to
        // the crossing (or jump location) either way.
        return find_root_bracketed([&](double v) { return conditional(v, a) - w; },
                                   {0.0, 1.0}, tol);
    }

    copula_family family_;
    double param_;
};

//! Pointwise lower bound of the n-dimensional Archimedean class:
//! C_n(u) = (max[sum u_i^{1/(n-1)} - n + 1, 0])^{n-1}.
class arch_lower_copula {
public:
    explicit arch_lower_copula(int n) : n_(n) {
        if (n_ < 2) throw domain_error("arch_lower_copula: requires n >= 2");
    }

    int dim() const { return n_; }

    double operator()(std::span<const double> u) const {
        if (static_cast<int>(u.size()) != n_)
            throw dimension_mismatch("arch_lower_copula: argument dimension mismatch");
        double s = 1.0 - n_;
        for (double ui : u) {
            if (!(ui >= 0.0 && ui <= 1.0))
                throw domain_error("arch_lower_copula: arguments outside the unit cube");
            s += std::pow(ui, 1.0 / (n_ - 1));
        }
        return s <= 0.0 ? 0.0 : std::pow(s, static_cast<double>(n_ - 1));
    }

    //! Samples on the singular support sum u_i^{1/(n-1)} = n-1: a uniform
    //! simplex point S (normalized exponential spacings) mapped through
    //! u_i = (1 - S_i)^{n-1}. Margins are exactly uniform.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const {
        if (count < 1) throw domain_error("sample: requires count >= 1");
        counter_rng rng(seed);
        std::vector<double> out(count * n_);
        std::vector<double> e(n_);
        for (std::size_t i = 0; i < count; ++i) {
            double total = 0.0;
            for (int j = 0; j < n_; ++j) {
                e[j] = -std::log(rng.uniform(i * n_ + j));
                total += e[j];
            }
            for (int j = 0; j < n_; ++j)
                out[i * n_ + j] = std::pow(1.0 - e[j] / total, static_cast<double>(n_ - 1));
        }
        return out;
    }

    std::string describe() const { return "arch_lower:n=" + std::to_string(n_); }

private:
    int n_;
};

//! Upper boundary of the zero-probability region in gain space,
//! x2 = B(x1) with C(F1(x1), F2(x2)) = 0.
class zero_boundary_curve {
public:
    zero_boundary_curve(const bivariate_copula& c, const gain_distribution& f1,
                        const gain_distribution& f2)
        : copula_(c), f1_(&f1), f2_(&f2), width_(c.zero_set_width()) {}

    //! Zero-set extent in copula space along the first margin.
    double width() const { return width_; }

    //! Domain endpoint F1^{-1}(width); +inf when the quantile diverges.
    double x_max() const { return quantile_or_inf(*f1_, width_); }

    double v_of_u(double u) const { return copula_.zero_boundary_v(u); }

    double operator()(double x) const {
        return quantile_or_inf(*f2_, v_of_u(f1_->cdf(x)));
    }

private:
    bivariate_copula copula_;
    const gain_distribution* f1_;
    const gain_distribution* f2_;
    double width_;
};

} // namespace zoc
