#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "zoc/copulas.hpp"
#include "zoc/errors.hpp"
#include "zoc/marginals.hpp"

namespace zoc {

namespace detail {

struct spec_fields {
    std::string family;
    std::map<std::string, double> kv;
};

inline spec_fields split_spec(std::string_view spec) {
    spec_fields out;
    const auto colon = spec.find(':');
    out.family = std::string(spec.substr(0, colon));
    if (colon == std::string_view::npos) return out;
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw parse_error("spec '" + std::string(spec) + "': expected key=value pairs");
        const std::string key(item.substr(0, eq));
        const std::string val(item.substr(eq + 1));
        char* end = nullptr;
        const double num = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw parse_error("spec '" + std::string(spec) + "': bad numeric value for " + key);
        out.kv[key] = num;
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

inline double take(spec_fields& f, const std::string& key, std::string_view spec) {
    const auto it = f.kv.find(key);
    if (it == f.kv.end())
        throw parse_error("spec '" + std::string(spec) + "': missing parameter " + key);
    const double v = it->second;
    f.kv.erase(it);
    return v;
}

inline void expect_empty(const spec_fields& f, std::string_view spec) {
    if (!f.kv.empty())
        throw parse_error("spec '" + std::string(spec) + "': unknown parameter " +
                          f.kv.begin()->first);
}

} // namespace detail

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

//! Parses a distribution spec string:
//!   rayleigh:snr_db=<f>  nakagami:m=<f>,snr_db=<f>
//!   weibull:scale=<f>,shape=<f>  lognormal:mu=<f>,sigma=<f>
inline std::unique_ptr<gain_distribution> parse_gain_distribution(std::string_view spec) {
    auto f = detail::split_spec(spec);
    std::unique_ptr<gain_distribution> out;
    try {
        if (f.family == "rayleigh") {
            out = std::make_unique<rayleigh_gain>(db_to_linear(detail::take(f, "snr_db", spec)));
        } else if (f.family == "nakagami") {
            const double m = detail::take(f, "m", spec);
            out = std::make_unique<nakagami_gain>(m, db_to_linear(detail::take(f, "snr_db", spec)));
        } else if (f.family == "weibull") {
            const double scale = detail::take(f, "scale", spec);
            out = std::make_unique<weibull_gain>(scale, detail::take(f, "shape", spec));
        } else if (f.family == "lognormal") {
            const double mu = detail::take(f, "mu", spec);
            out = std::make_unique<lognormal_gain>(mu, detail::take(f, "sigma", spec));
        } else {
            throw parse_error("unknown distribution family '" + f.family + "'");
        }
    } catch (const domain_error& e) {
        throw parse_error("spec '" + std::string(spec) + "': " + e.what());
    }
    detail::expect_empty(f, spec);
    return out;
}

//! Rebuilds a distribution spec with its snr_db parameter replaced; only
//! meaningful for families parameterized by SNR.
inline std::unique_ptr<gain_distribution> parse_with_snr_db(std::string_view spec, double snr_db) {
    auto f = detail::split_spec(spec);
    if (f.family == "rayleigh") {
        return std::make_unique<rayleigh_gain>(db_to_linear(snr_db));
    }
    if (f.family == "nakagami") {
        const double m = detail::take(f, "m", spec);
        return std::make_unique<nakagami_gain>(m, db_to_linear(snr_db));
    }
    throw parse_error("spec '" + std::string(spec) + "': family has no snr_db parameter");
}

//! Parsed copula spec: either bivariate or the n-dimensional Archimedean
//! lower bound.
struct copula_spec {
    bool is_arch = false;
    bivariate_copula bivariate = bivariate_copula::independence();
    int arch_n = 0;
};

//! Parses a copula spec string:
//!   shifted_w:t=<f>  circular:t=<f>  clayton:theta=<f>
//!   w  m  indep  arch_lower:n=<int>
inline copula_spec parse_copula(std::string_view spec) {
    auto f = detail::split_spec(spec);
    copula_spec out;
    try {
        if (f.family == "w") {
            out.bivariate = bivariate_copula::countermonotone();
        } else if (f.family == "m") {
            out.bivariate = bivariate_copula::comonotone();
        } else if (f.family == "indep") {
            out.bivariate = bivariate_copula::independence();
        } else if (f.family == "shifted_w") {
            out.bivariate = bivariate_copula::shifted_w(detail::take(f, "t", spec));
        } else if (f.family == "circular") {
            out.bivariate = bivariate_copula::circular(detail::take(f, "t", spec));
        } else if (f.family == "clayton") {
            out.bivariate = bivariate_copula::clayton(detail::take(f, "theta", spec));
        } else if (f.family == "arch_lower") {
            const double n = detail::take(f, "n", spec);
            if (n != std::floor(n)) throw parse_error("arch_lower: n must be an integer");
            out.is_arch = true;
            out.arch_n = static_cast<int>(n);
            if (out.arch_n < 2) throw parse_error("arch_lower: requires n >= 2");
        } else {
            throw parse_error("unknown copula family '" + f.family + "'");
        }
    } catch (const domain_error& e) {
        throw parse_error("spec '" + std::string(spec) + "': " + e.what());
    }
    detail::expect_empty(f, spec);
    return out;
}

} // namespace zoc
