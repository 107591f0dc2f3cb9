// Command-line surface of the zero-outage capacity toolkit.
//
// Exit codes: 0 success, 2 spec/flag parse failure, 3 solver failure,
// 4 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zoc/capacity.hpp"
#include "zoc/csv.hpp"
#include "zoc/montecarlo.hpp"
#include "zoc/parse.hpp"
#include "zoc/tables.hpp"

namespace {

constexpr std::uint64_t default_seed = 0x5EED;

struct output_options {
    std::string path;   // empty: stdout
    std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, output_options& out) {
    cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
    cmd->add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void write_output(const output_options& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out.path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out.path);
    os << text;
}

void emit_table(const output_options& out, const zoc::csv_table& table) {
    if (out.format == "json")
        write_output(out, zoc::to_json(table).dump(2) + "\n");
    else
        write_output(out, table.to_csv());
}

zoc::combiner parse_combiner(const std::string& s) {
    if (s == "mrc") return zoc::combiner::mrc;
    if (s == "sc") return zoc::combiner::sc;
    throw zoc::parse_error("unknown combiner '" + s + "'");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Zero-outage capacities of dependent fading channels"};
    app.require_subcommand(1);

    std::vector<std::string> dists;
    std::string copula;
    std::string coupling;
    std::string combiner_name = "mrc";
    std::string t_grid_spec = "0:1:101";
    std::string snr1_grid_spec = "-10:10:21";
    std::string snr2_grid_spec = "-10:10:21";
    std::string n_range_spec = "2:10";
    double t_value = 0.5;
    int n_links = 0;
    std::uint64_t seed = default_seed;
    std::size_t samples = 100000;
    double delta_bits = 0.05;
    output_options out;

    auto* curve = app.add_subcommand("curve-t", "ZOC of two links against the copula parameter t");
    curve->add_option("--dist", dists, "Marginal spec (twice)")->required()->expected(2);
    curve->add_option("--t-grid", t_grid_spec, "t grid lo:hi:count");
    add_output_flags(curve, out);

    auto* grid = app.add_subcommand("snr-grid", "Two-link ZOC over an SNR grid at fixed t");
    grid->add_option("--dist", dists, "Marginal spec (twice; snr_db is overridden per cell)")
        ->required()
        ->expected(2);
    grid->add_option("--t", t_value, "Copula parameter t");
    grid->add_option("--snr1-grid", snr1_grid_spec, "First-link SNR grid in dB, lo:hi:count");
    grid->add_option("--snr2-grid", snr2_grid_spec, "Second-link SNR grid in dB, lo:hi:count");
    add_output_flags(grid, out);

    auto* bounds = app.add_subcommand("bounds", "Inner/outer bounds for n homogeneous MRC links");
    bounds->add_option("--dist", dists, "Marginal spec (once)")->required()->expected(1);
    bounds->add_option("--n-range", n_range_spec, "Link-count range lo:hi");
    add_output_flags(bounds, out);

    auto* sc = app.add_subcommand("sc", "Maximum SC ZOC (homogeneous range or explicit list)");
    sc->add_option("--dist", dists, "Marginal spec (one for a range, several for a list)")
        ->required();
    sc->add_option("--n-range", n_range_spec, "Link-count range lo:hi (homogeneous case)");
    add_output_flags(sc, out);

    auto* verify = app.add_subcommand("verify", "Monte Carlo check of an analytic ZOC");
    verify->add_option("--dist", dists, "Marginal spec(s)")->required();
    verify->add_option("--copula", copula, "Copula spec");
    verify->add_option("--coupling", coupling, "Named coupling: rotation or hetero_sc");
    verify->add_option("--combiner", combiner_name, "mrc or sc")
        ->check(CLI::IsMember({"mrc", "sc"}));
    verify->add_option("--n", n_links, "Link count for rotation / homogeneous arch_lower");
    verify->add_option("--samples", samples, "Sample count");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--delta-bits", delta_bits, "Probe offset above the claim");
    add_output_flags(verify, out);

    auto* bsym = app.add_subcommand("bsym", "Boundary-symmetry condition verdicts for a marginal");
    bsym->add_option("--dist", dists, "Marginal spec (once)")->required()->expected(1);
    bsym->add_option("--n", n_links, "Link count")->required();
    add_output_flags(bsym, out);

    auto* samp = app.add_subcommand("samples", "Export a coupled gain batch as CSV");
    samp->add_option("--dist", dists, "Marginal spec(s)")->required();
    samp->add_option("--copula", copula, "Copula spec");
    samp->add_option("--coupling", coupling, "Named coupling: rotation or hetero_sc");
    samp->add_option("--n", n_links, "Link count for rotation");
    samp->add_option("--samples", samples, "Sample count");
    samp->add_option("--seed", seed, "RNG seed");
    add_output_flags(samp, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (curve->parsed()) {
        const auto f1 = zoc::parse_gain_distribution(dists[0]);
        const auto f2 = zoc::parse_gain_distribution(dists[1]);
        emit_table(out, zoc::curve_t_table(*f1, *f2, zoc::grid_spec::parse(t_grid_spec)));
    } else if (grid->parsed()) {
        emit_table(out, zoc::snr_grid_table(dists[0], dists[1], t_value,
                                            zoc::grid_spec::parse(snr1_grid_spec),
                                            zoc::grid_spec::parse(snr2_grid_spec)));
    } else if (bounds->parsed()) {
        const auto f = zoc::parse_gain_distribution(dists[0]);
        emit_table(out, zoc::bounds_table(*f, zoc::int_range::parse(n_range_spec)));
    } else if (sc->parsed()) {
        if (dists.size() == 1) {
            const auto f = zoc::parse_gain_distribution(dists[0]);
            emit_table(out, zoc::sc_homogeneous_table(*f, zoc::int_range::parse(n_range_spec)));
        } else {
            std::vector<std::unique_ptr<zoc::gain_distribution>> owned;
            std::vector<const zoc::gain_distribution*> fs;
            for (const auto& s : dists) {
                owned.push_back(zoc::parse_gain_distribution(s));
                fs.push_back(owned.back().get());
            }
            write_output(out, zoc::sc_heterogeneous_record(fs).dump(2) + "\n");
        }
    } else if (verify->parsed()) {
        zoc::coupling_config cfg{copula, coupling, dists, n_links};
        const auto report =
            zoc::run_verify(cfg, parse_combiner(combiner_name), samples, seed, delta_bits);
        write_output(out, report.dump(2) + "\n");
        if (!report["passed"].get<bool>()) return 4;
    } else if (bsym->parsed()) {
        const auto f = zoc::parse_gain_distribution(dists[0]);
        write_output(out, zoc::bsym_report(*f, n_links).dump(2) + "\n");
    } else if (samp->parsed()) {
        zoc::coupling_config cfg{copula, coupling, dists, n_links};
        const auto batch = zoc::build_batch(cfg, samples, seed);
        std::ostringstream os;
        zoc::write_csv(batch, os);
        write_output(out, os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const zoc::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zoc::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zoc::numeric_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
