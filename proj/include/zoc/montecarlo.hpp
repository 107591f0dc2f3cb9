#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "zoc/capacity.hpp"
#include "zoc/copulas.hpp"
#include "zoc/errors.hpp"
#include "zoc/marginals.hpp"
#include "zoc/rng.hpp"

namespace zoc {

//! Dependent channel-gain realizations drawn from an explicit coupling.
struct sample_batch {
    std::size_t dims = 0;
    std::vector<double> gains; ///< row-major, count() x dims
    std::uint64_t seed = 0;
    std::string coupling;

    std::size_t count() const { return dims == 0 ? 0 : gains.size() / dims; }
    double at(std::size_t row, std::size_t col) const { return gains[row * dims + col]; }
};

//! Gains X_i = F_i^{-1}(U_i) from a bivariate copula sample.
inline sample_batch gains_from_copula(const bivariate_copula& c, const gain_distribution& f1,
                                      const gain_distribution& f2, std::size_t count,
                                      std::uint64_t seed) {
    sample_batch batch;
    batch.dims = 2;
    batch.seed = seed;
    batch.coupling = c.describe();
    batch.gains.reserve(2 * count);
    for (const auto& uv : c.sample(count, seed)) {
        batch.gains.push_back(f1.quantile(uv[0]));
        batch.gains.push_back(f2.quantile(uv[1]));
    }
    return batch;
}

//! Gains from the n-dimensional Archimedean lower-bound copula.
inline sample_batch gains_from_copula(const arch_lower_copula& c,
                                      const std::vector<const gain_distribution*>& fs,
                                      std::size_t count, std::uint64_t seed) {
    if (static_cast<int>(fs.size()) != c.dim())
        throw dimension_mismatch("gains_from_copula: marginal count must match copula dimension");
    sample_batch batch;
    batch.dims = fs.size();
    batch.seed = seed;
    batch.coupling = c.describe();
    const std::vector<double> u = c.sample(count, seed);
    batch.gains.resize(u.size());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < batch.dims; ++j)
            batch.gains[i * batch.dims + j] = fs[j]->quantile(u[i * batch.dims + j]);
    return batch;
}

//! Maximally dependent coupling for n identically distributed gains:
//! V_i = frac(U + (i-1)/n). Every sample satisfies
//! max_i X_i >= F^{-1}(1 - 1/n).
inline sample_batch rotation_coupling_sc(const gain_distribution& f, int n, std::size_t count,
                                         std::uint64_t seed) {
    if (n < 2) throw domain_error("rotation_coupling_sc: requires n >= 2");
    sample_batch batch;
    batch.dims = n;
    batch.seed = seed;
    batch.coupling = "rotation:n=" + std::to_string(n);
    batch.gains.resize(count * n);
    counter_rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.uniform(i);
        for (int j = 0; j < n; ++j) {
            double v = u + static_cast<double>(j) / n;
            if (v >= 1.0) v -= 1.0;
            batch.gains[i * n + j] = f.quantile(v);
        }
    }
    return batch;
}

//! Coupling attaining the heterogeneous SC optimum: [0,1) is cut into
//! intervals I_i of length 1 - F_i(s*); V_i rearranges I_i onto the upper
//! tail [F_i(s*), 1) and the complement onto [0, F_i(s*)), both by
//! translation. Every sample has at least one X_i >= s*.
inline sample_batch hetero_sc_coupling(const std::vector<const gain_distribution*>& fs,
                                       std::size_t count, std::uint64_t seed,
                                       const tolerance_config& tol = {}) {
    const std::size_t n = fs.size();
    const double s_star = sc_n_heterogeneous(fs, tol).snr_threshold;
    std::vector<double> q(n), len(n), cut(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = fs[i]->cdf(s_star);
        len[i] = 1.0 - q[i];
        cut[i + 1] = cut[i] + len[i];
    }
    sample_batch batch;
    batch.dims = n;
    batch.seed = seed;
    batch.coupling = "hetero_sc:n=" + std::to_string(n);
    batch.gains.resize(count * n);
    counter_rng rng(seed);
    for (std::size_t r = 0; r < count; ++r) {
        const double u = rng.uniform(r);
        for (std::size_t i = 0; i < n; ++i) {
            // the last cut carries the root-finder residual; pin it to 1 so
            // every u falls into exactly one interval
            const double hi_cut = (i + 1 == n) ? 1.0 : cut[i + 1];
            double v;
            if (u >= cut[i] && u < hi_cut)
                v = q[i] + (u - cut[i]);
            else if (u < cut[i])
                v = u;
            else
                v = u - len[i];
            if (v >= 1.0) v = std::nextafter(1.0, 0.0);
            batch.gains[r * n + i] = fs[i]->quantile(v);
        }
    }
    return batch;
}

//! Empirical outage verdict at a claimed rate.
struct outage_report {
    double rate_bits = 0.0;
    std::size_t outage_count = 0;
    std::size_t sample_count = 0;
    double min_combiner_value = 0.0;
    bool zero_outage() const { return outage_count == 0; }
    const char* verdict() const { return zero_outage() ? "zero_outage" : "outage_observed"; }
};

inline double combine_row(const sample_batch& batch, std::size_t row, combiner comb) {
    double acc = batch.at(row, 0);
    for (std::size_t j = 1; j < batch.dims; ++j) {
        const double x = batch.at(row, j);
        acc = (comb == combiner::mrc) ? acc + x : std::max(acc, x);
    }
    return acc;
}

//! Counts samples with L(x) < 2^rate - 1.
inline outage_report empirical_outage(const sample_batch& batch, combiner comb,
                                      double rate_bits) {
    if (!(rate_bits >= 0.0)) throw domain_error("empirical_outage: requires rate_bits >= 0");
    const double s = std::exp2(rate_bits) - 1.0;
    outage_report rep;
    rep.rate_bits = rate_bits;
    rep.sample_count = batch.count();
    rep.min_combiner_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.sample_count; ++i) {
        const double l = combine_row(batch, i, comb);
        if (l < s) ++rep.outage_count;
        rep.min_combiner_value = std::min(rep.min_combiner_value, l);
    }
    return rep;
}

//! Probe a claimed ZOC: zero outages at the claim, strictly positive outage
//! just above it.
struct verify_report {
    double claimed_rate_bits = 0.0;
    double delta_bits = 0.0;
    outage_report at_claim;
    outage_report above_claim;
    bool passed() const { return at_claim.zero_outage() && !above_claim.zero_outage(); }
};

inline verify_report verify_zoc(const sample_batch& batch, combiner comb,
                                double claimed_rate_bits, double delta_bits = 0.05) {
    if (batch.count() < 1000) throw domain_error("verify_zoc: requires at least 1000 samples");
    verify_report rep;
    rep.claimed_rate_bits = claimed_rate_bits;
    rep.delta_bits = delta_bits;
    rep.at_claim = empirical_outage(batch, comb, claimed_rate_bits);
    rep.above_claim = empirical_outage(batch, comb, claimed_rate_bits + delta_bits);
    return rep;
}

//! CSV export with an x1,...,xn header, for external scatter plots.
inline void write_csv(const sample_batch& batch, std::ostream& os) {
    for (std::size_t j = 0; j < batch.dims; ++j)
        os << (j ? "," : "") << "x" << (j + 1);
    os << "\n";
    char buf[40];
    for (std::size_t i = 0; i < batch.count(); ++i) {
        for (std::size_t j = 0; j < batch.dims; ++j) {
            std::snprintf(buf, sizeof(buf), "%.9g", batch.at(i, j));
            os << (j ? "," : "") << buf;
        }
        os << "\n";
    }
}

} // namespace zoc
