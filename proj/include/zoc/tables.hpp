#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoc/capacity.hpp"
#include "zoc/csv.hpp"
#include "zoc/montecarlo.hpp"
#include "zoc/parse.hpp"

namespace zoc {

using ordered_json = nlohmann::ordered_json;

//! Uniform grid written as "lo:hi:count" on the command line.
struct grid_spec {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;

    static grid_spec parse(const std::string& s) {
        grid_spec g;
        char* end = nullptr;
        g.lo = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != ':') throw parse_error("grid '" + s + "': expected lo:hi:count");
        const char* p = end + 1;
        g.hi = std::strtod(p, &end);
        if (end == p || *end != ':') throw parse_error("grid '" + s + "': expected lo:hi:count");
        p = end + 1;
        g.count = static_cast<int>(std::strtol(p, &end, 10));
        if (end == p || *end != '\0') throw parse_error("grid '" + s + "': bad count");
        if (g.count < 1 || (g.count == 1 && g.lo != g.hi) || g.lo > g.hi)
            throw parse_error("grid '" + s + "': requires lo <= hi and count >= 1");
        return g;
    }

    std::vector<double> points() const {
        std::vector<double> out(count);
        for (int i = 0; i < count; ++i)
            out[i] = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1);
        return out;
    }
};

//! Inclusive integer range written as "lo:hi".
struct int_range {
    int lo = 2;
    int hi = 10;

    static int_range parse(const std::string& s) {
        int_range r;
        char* end = nullptr;
        r.lo = static_cast<int>(std::strtol(s.c_str(), &end, 10));
        if (end == s.c_str() || *end != ':') throw parse_error("range '" + s + "': expected lo:hi");
        const char* p = end + 1;
        r.hi = static_cast<int>(std::strtol(p, &end, 10));
        if (end == p || *end != '\0') throw parse_error("range '" + s + "': expected lo:hi");
        if (r.lo > r.hi) throw parse_error("range '" + s + "': requires lo <= hi");
        return r;
    }
};

//! ZOC against the copula parameter t (one curve of the t-sweep figures).
inline csv_table curve_t_table(const gain_distribution& f1, const gain_distribution& f2,
                               const grid_spec& t_grid, const tolerance_config& tol = {}) {
    csv_table table;
    table.header = {"t", "capacity_bits"};
    for (double t : t_grid.points())
        table.add_row({t, mrc_two_link_ct(f1, f2, t, tol).rate_bits});
    return table;
}

//! ZOC over a rectangular SNR grid at fixed t; rows in row-major order.
inline csv_table snr_grid_table(const std::string& dist1_spec, const std::string& dist2_spec,
                                double t, const grid_spec& snr1_db, const grid_spec& snr2_db,
                                const tolerance_config& tol = {}) {
    csv_table table;
    table.header = {"snr1_db", "snr2_db", "capacity_bits"};
    for (double db1 : snr1_db.points()) {
        const auto f1 = parse_with_snr_db(dist1_spec, db1);
        for (double db2 : snr2_db.points()) {
            const auto f2 = parse_with_snr_db(dist2_spec, db2);
            table.add_row({db1, db2, mrc_two_link_ct(*f1, *f2, t, tol).rate_bits});
        }
    }
    return table;
}

//! Inner/outer bounds for homogeneous MRC links over an n range.
inline csv_table bounds_table(const gain_distribution& f, const int_range& n_range,
                              const tolerance_config& tol = {}) {
    csv_table table;
    table.header = {"n", "inner", "outer_w", "outer_jm", "gap", "gap_limit", "bsym_w", "bsym_arch"};
    for (const auto& row : bounds_report(f, n_range.lo, n_range.hi, tol))
        table.add_row({static_cast<double>(row.n), row.inner_bits, row.outer_w_bits,
                       row.outer_jm_bits, row.gap_bits, row.gap_limit_bits,
                       row.bsym_w_holds ? 1.0 : 0.0, row.bsym_arch_holds ? 1.0 : 0.0});
    return table;
}

//! Maximum SC ZOC for homogeneous links over an n range.
inline csv_table sc_homogeneous_table(const gain_distribution& f, const int_range& n_range) {
    csv_table table;
    table.header = {"n", "capacity_bits"};
    for (int n = n_range.lo; n <= n_range.hi; ++n)
        table.add_row({static_cast<double>(n), sc_n_homogeneous(f, n).rate_bits});
    return table;
}

//! Maximum SC ZOC for an explicit heterogeneous marginal list.
inline ordered_json sc_heterogeneous_record(const std::vector<const gain_distribution*>& fs,
                                            const tolerance_config& tol = {}) {
    const zoc_result r = sc_n_heterogeneous(fs, tol);
    ordered_json j;
    j["n"] = fs.size();
    if (r.p_star) j["p_star"] = round_to_output(*r.p_star);
    j["s_star"] = round_to_output(r.snr_threshold);
    j["rate_bits"] = round_to_output(r.rate_bits);
    return j;
}

inline ordered_json to_json(const csv_table& table) {
    ordered_json j;
    j["columns"] = table.header;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::array();
        for (double x : row) r.push_back(round_to_output(x));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline ordered_json to_json(const bsym_verdict& v) {
    ordered_json j;
    j["boundary"] = v.boundary;
    j["condition_value"] = round_to_output(v.condition_value);
    j["holds"] = v.holds;
    j["quasiconcave_ok"] = v.quasiconcave_ok;
    j["notes"] = v.notes;
    return j;
}

//! Both sufficient-condition verdicts plus the mode-based shortcut quantities.
inline ordered_json bsym_report(const gain_distribution& f, int n,
                                const tolerance_config& tol = {}) {
    ordered_json j;
    j["distribution"] = f.describe();
    j["n"] = n;
    j["condition_w"] = to_json(bsym_check_w(f, n, tol));
    j["condition_arch"] = to_json(bsym_check_arch(f, n, tol));
    ordered_json shortcut;
    shortcut["cdf_at_mode"] = round_to_output(f.cdf(f.mode()));
    shortcut["threshold_w"] = round_to_output(1.0 - 1.0 / n);
    shortcut["threshold_arch"] = round_to_output(0.36787944117144233);
    j["mode_shortcut"] = std::move(shortcut);
    return j;
}

inline ordered_json to_json(const outage_report& rep) {
    ordered_json j;
    j["rate_bits"] = round_to_output(rep.rate_bits);
    j["outage_count"] = rep.outage_count;
    j["sample_count"] = rep.sample_count;
    j["min_combiner_value"] = round_to_output(rep.min_combiner_value);
    j["verdict"] = rep.verdict();
    return j;
}

//! Coupling requested on the command line: either an explicit copula or one
//! of the named constructions.
struct coupling_config {
    std::string copula;                ///< copula spec string, or empty
    std::string coupling;              ///< "rotation" | "hetero_sc" | empty
    std::vector<std::string> dists;    ///< distribution spec strings
    int n = 0;                         ///< dimension for rotation / arch_lower with one marginal
};

namespace detail {

struct parsed_coupling {
    std::vector<std::unique_ptr<gain_distribution>> owned;
    std::vector<const gain_distribution*> dists;
    copula_spec cop;
    bool is_copula = false;
    bool is_rotation = false;
    bool is_hetero_sc = false;
    int dim = 0;
};

inline parsed_coupling resolve_coupling(const coupling_config& cfg) {
    parsed_coupling pc;
    for (const auto& s : cfg.dists) pc.owned.push_back(parse_gain_distribution(s));
    for (const auto& d : pc.owned) pc.dists.push_back(d.get());
    if (!cfg.copula.empty() == !cfg.coupling.empty())
        throw parse_error("exactly one of copula/coupling must be given");

    if (!cfg.copula.empty()) {
        pc.is_copula = true;
        pc.cop = parse_copula(cfg.copula);
        if (pc.cop.is_arch) {
            pc.dim = pc.cop.arch_n;
            if (pc.dists.size() == 1) {
                while (static_cast<int>(pc.dists.size()) < pc.dim)
                    pc.dists.push_back(pc.dists.front());
            } else if (static_cast<int>(pc.dists.size()) != pc.dim) {
                throw parse_error("arch_lower: marginal count must be 1 or n");
            }
        } else {
            if (pc.dists.size() != 2)
                throw parse_error("bivariate copula requires exactly two marginals");
            pc.dim = 2;
        }
    } else if (cfg.coupling == "rotation") {
        pc.is_rotation = true;
        if (pc.dists.size() != 1) throw parse_error("rotation coupling requires one marginal");
        if (cfg.n < 2) throw parse_error("rotation coupling requires --n >= 2");
        pc.dim = cfg.n;
    } else if (cfg.coupling == "hetero_sc") {
        pc.is_hetero_sc = true;
        if (pc.dists.size() < 2) throw parse_error("hetero_sc coupling requires >= 2 marginals");
        pc.dim = static_cast<int>(pc.dists.size());
    } else {
        throw parse_error("unknown coupling '" + cfg.coupling + "'");
    }
    return pc;
}

} // namespace detail

//! Draws the gain batch a coupling_config describes.
inline sample_batch build_batch(const coupling_config& cfg, std::size_t count,
                                std::uint64_t seed) {
    auto pc = detail::resolve_coupling(cfg);
    if (pc.is_copula) {
        if (pc.cop.is_arch)
            return gains_from_copula(arch_lower_copula(pc.cop.arch_n), pc.dists, count, seed);
        return gains_from_copula(pc.cop.bivariate, *pc.dists[0], *pc.dists[1], count, seed);
    }
    if (pc.is_rotation) return rotation_coupling_sc(*pc.dists[0], pc.dim, count, seed);
    return hetero_sc_coupling(pc.dists, count, seed);
}

//! The analytic ZOC claim matching a coupling/combiner pair. Combinations
//! without a matching result (e.g. heterogeneous MRC for n > 2) are refused.
inline double claimed_rate_bits(const coupling_config& cfg, combiner comb) {
    auto pc = detail::resolve_coupling(cfg);
    if (pc.is_copula && !pc.cop.is_arch)
        return generic_two_link(pc.cop.bivariate, *pc.dists[0], *pc.dists[1], comb).rate_bits;
    if (pc.is_copula && pc.cop.is_arch) {
        if (comb != combiner::mrc || cfg.dists.size() != 1)
            throw parse_error("arch_lower verification needs MRC and one homogeneous marginal");
        return mrc_inner_bound(*pc.dists[0], pc.dim);
    }
    if (pc.is_rotation) {
        if (comb != combiner::sc) throw parse_error("rotation coupling verifies SC only");
        return sc_n_homogeneous(*pc.dists[0], pc.dim).rate_bits;
    }
    if (comb != combiner::sc) throw parse_error("hetero_sc coupling verifies SC only");
    return sc_n_heterogeneous(pc.dists).rate_bits;
}

//! Full verification run: claim, the two outage probes and the verdict.
inline ordered_json run_verify(const coupling_config& cfg, combiner comb, std::size_t samples,
                               std::uint64_t seed, double delta_bits = 0.05) {
    const double claim = claimed_rate_bits(cfg, comb);
    const sample_batch batch = build_batch(cfg, samples, seed);
    const verify_report rep = verify_zoc(batch, comb, claim, delta_bits);
    ordered_json j;
    j["coupling"] = batch.coupling;
    j["combiner"] = comb == combiner::mrc ? "mrc" : "sc";
    j["claim_rate_bits"] = round_to_output(claim);
    j["delta_bits"] = delta_bits;
    j["samples"] = samples;
    j["seed"] = seed;
    j["at_claim"] = to_json(rep.at_claim);
    j["above_claim"] = to_json(rep.above_claim);
    j["passed"] = rep.passed();
    return j;
}

} // namespace zoc
