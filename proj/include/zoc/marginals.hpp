#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "zoc/errors.hpp"
#include "zoc/gamma.hpp"

namespace zoc {

//! Continuous non-negative channel-gain law X = rho |H|^2.
//!
//! Supplies everything the capacity machinery needs from a marginal: CDF,
//! quantile, density, density derivative and the three location summaries.
class gain_distribution {
public:
    virtual ~gain_distribution() = default;

    virtual double cdf(double x) const = 0;
    //! Quantile for u in [0, 1); u = 1 signals infinite_quantile.
    virtual double quantile(double u) const = 0;
    virtual double pdf(double x) const = 0;
    virtual double pdf_derivative(double x) const = 0;
    virtual double mean() const = 0;
    virtual double median() const { return quantile(0.5); }
    virtual double mode() const = 0;
    //! Spec string that parse_gain_distribution() accepts back.
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<gain_distribution> clone() const = 0;

protected:
    static void check_u(double u) {
        if (!(u >= 0.0 && u <= 1.0)) throw domain_error("quantile: u must lie in [0, 1)");
        if (u == 1.0) throw infinite_quantile("quantile: u = 1 has no finite quantile");
    }
};

struct gain_moments {
    double mean;
    double median;
    double mode;
};

inline gain_moments moments(const gain_distribution& d) {
    return {d.mean(), d.median(), d.mode()};
}

//! quantile extended to u >= 1 by returning +infinity; used by the boundary
//! minimizers, which skip non-finite values instead of catching signals.
inline double quantile_or_inf(const gain_distribution& d, double u) {
    if (u >= 1.0) return std::numeric_limits<double>::infinity();
    if (u < 0.0) u = 0.0;
    return d.quantile(u);
}

//! Rayleigh fading: X ~ exponential with rate 1/rho.
class rayleigh_gain final : public gain_distribution {
public:
    explicit rayleigh_gain(double snr_linear) : snr_(snr_linear) {
        if (!(snr_ > 0.0)) throw domain_error("rayleigh_gain: requires snr_linear > 0");
    }

    double snr_linear() const { return snr_; }
    double rate() const { return 1.0 / snr_; }

    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-x / snr_); }
    double quantile(double u) const override {
        check_u(u);
        return -snr_ * std::log1p(-u);
    }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : std::exp(-x / snr_) / snr_; }
    double pdf_derivative(double x) const override {
        return x < 0.0 ? 0.0 : -std::exp(-x / snr_) / (snr_ * snr_);
    }
    double mean() const override { return snr_; }
    double median() const override { return snr_ * 0.6931471805599453; }
    double mode() const override { return 0.0; }
    std::string describe() const override {
        return "rayleigh:snr_db=" + std::to_string(10.0 * std::log10(snr_));
    }
    std::unique_ptr<gain_distribution> clone() const override {
        return std::make_unique<rayleigh_gain>(*this);
    }

private:
    double snr_;
};

//! Nakagami-m fading: X ~ Gamma(shape m, scale rho/m).
class nakagami_gain final : public gain_distribution {
public:
    nakagami_gain(double m, double snr_linear) : m_(m), snr_(snr_linear), scale_(snr_linear / m) {
        if (!(m_ >= 0.5)) throw domain_error("nakagami_gain: requires m >= 0.5");
        if (!(snr_ > 0.0)) throw domain_error("nakagami_gain: requires snr_linear > 0");
    }

    double shape() const { return m_; }
    double snr_linear() const { return snr_; }

    double cdf(double x) const override {
        return x <= 0.0 ? 0.0 : reg_gamma_lower(m_, x / scale_);
    }
    double quantile(double u) const override {
        check_u(u);
        return scale_ * reg_gamma_lower_inv(m_, u);
    }
    double pdf(double x) const override {
        if (x < 0.0) return 0.0;
        if (x == 0.0) {
            if (m_ > 1.0) return 0.0;
            if (m_ == 1.0) return 1.0 / scale_;
            return std::numeric_limits<double>::infinity();
        }
        return std::exp((m_ - 1.0) * std::log(x) - x / scale_ - ln_gamma(m_) - m_ * std::log(scale_));
    }
    double pdf_derivative(double x) const override {
        if (m_ == 1.0) return x < 0.0 ? 0.0 : -std::exp(-x / scale_) / (scale_ * scale_);
        if (x <= 0.0) return 0.0;
        return pdf(x) * ((m_ - 1.0) / x - 1.0 / scale_);
    }
    double mean() const override { return snr_; }
    double mode() const override { return m_ >= 1.0 ? (m_ - 1.0) * scale_ : 0.0; }
    std::string describe() const override {
        return "nakagami:m=" + std::to_string(m_) +
               ",snr_db=" + std::to_string(10.0 * std::log10(snr_));
    }
    std::unique_ptr<gain_distribution> clone() const override {
        return std::make_unique<nakagami_gain>(*this);
    }

private:
    double m_;
    double snr_;
    double scale_;
};

//! Weibull law with scale lambda and shape k.
class weibull_gain final : public gain_distribution {
public:
    weibull_gain(double scale, double shape) : scale_(scale), shape_(shape) {
        if (!(scale_ > 0.0) || !(shape_ > 0.0))
            throw domain_error("weibull_gain: requires scale > 0 and shape > 0");
    }

    double cdf(double x) const override {
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
    }
    double quantile(double u) const override {
        check_u(u);
        return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
    }
    double pdf(double x) const override {
        if (x < 0.0) return 0.0;
        if (x == 0.0) {
            if (shape_ > 1.0) return 0.0;
            if (shape_ == 1.0) return 1.0 / scale_;
            return std::numeric_limits<double>::infinity();
        }
        const double z = std::pow(x / scale_, shape_);
        return (shape_ / scale_) * std::pow(x / scale_, shape_ - 1.0) * std::exp(-z);
    }
    double pdf_derivative(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = std::pow(x / scale_, shape_);
        return (shape_ / (scale_ * scale_)) * std::pow(x / scale_, shape_ - 2.0) * std::exp(-z) *
               ((shape_ - 1.0) - shape_ * z);
    }
    double mean() const override { return scale_ * std::exp(ln_gamma(1.0 + 1.0 / shape_)); }
    double median() const override { return scale_ * std::pow(0.6931471805599453, 1.0 / shape_); }
    double mode() const override {
        return shape_ > 1.0 ? scale_ * std::pow((shape_ - 1.0) / shape_, 1.0 / shape_) : 0.0;
    }
    std::string describe() const override {
        return "weibull:scale=" + std::to_string(scale_) + ",shape=" + std::to_string(shape_);
    }
    std::unique_ptr<gain_distribution> clone() const override {
        return std::make_unique<weibull_gain>(*this);
    }

private:
    double scale_;
    double shape_;
};

//! Log-normal law: log X ~ N(mu, sigma^2).
class lognormal_gain final : public gain_distribution {
public:
    lognormal_gain(double mu, double sigma) : mu_(mu), sigma_(sigma) {
        if (!(sigma_ > 0.0)) throw domain_error("lognormal_gain: requires sigma > 0");
    }

    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu_) / sigma_;
        return 0.5 * std::erfc(-z / 1.4142135623730951);
    }
    double quantile(double u) const override {
        check_u(u);
        if (u == 0.0) return 0.0;
        return std::exp(mu_ + sigma_ * normal_quantile(u));
    }
    double pdf(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu_) / sigma_;
        return std::exp(-0.5 * z * z) / (x * sigma_ * 2.5066282746310005);
    }
    double pdf_derivative(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu_) / sigma_;
        return -pdf(x) / x * (1.0 + z / sigma_);
    }
    double mean() const override { return std::exp(mu_ + 0.5 * sigma_ * sigma_); }
    double median() const override { return std::exp(mu_); }
    double mode() const override { return std::exp(mu_ - sigma_ * sigma_); }
    std::string describe() const override {
        return "lognormal:mu=" + std::to_string(mu_) + ",sigma=" + std::to_string(sigma_);
    }
    std::unique_ptr<gain_distribution> clone() const override {
        return std::make_unique<lognormal_gain>(*this);
    }

    //! Standard normal quantile through the incomplete-gamma inverse:
    //! Phi^{-1}(u) = sign(u - 1/2) sqrt(2 P^{-1}(1/2, |2u - 1|)).
    static double normal_quantile(double u) {
        if (u == 0.5) return 0.0;
        if (u > 0.5) return std::sqrt(2.0 * reg_gamma_lower_inv(0.5, 2.0 * u - 1.0));
        return -std::sqrt(2.0 * reg_gamma_lower_inv(0.5, 1.0 - 2.0 * u));
    }

private:
    double mu_;
    double sigma_;
};

} // namespace zoc
