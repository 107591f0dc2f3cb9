#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zoc/capacity.hpp"
#include "zoc/marginals.hpp"
#include "test_helpers.hpp"

using namespace zoc;

namespace {

const double ln2 = std::log(2.0);

double bits(double s) { return std::log2(1.0 + s); }

} // namespace

TEST_CASE("two-link MRC capacity under C_t") {
    SECTION("symmetric Rayleigh, countermonotone") {
        rayleigh_gain f(1.0);
        const auto r = mrc_two_link_ct(f, f, 1.0);
        REQUIRE(std::fabs(r.rate_bits - bits(2.0 * ln2)) < 1e-9);
        REQUIRE(r.chosen == zoc_candidate::tangent);
        REQUIRE(r.tangent_x.has_value());
        REQUIRE(std::fabs(*r.tangent_x - ln2) < 1e-4);
    }
    SECTION("t = 0 gives zero capacity") {
        rayleigh_gain f1(1.0);
        nakagami_gain f2(5.0, 2.0);
        REQUIRE(mrc_two_link_ct(f1, f2, 0.0).rate_bits == 0.0);
    }
    SECTION("weaker-link quantile wins at t = 0.5") {
        rayleigh_gain f1(1.0);             // 0 dB
        rayleigh_gain f2(1.0 / 3.162);     // -5 dB
        const auto r = mrc_two_link_ct(f1, f2, 0.5);
        REQUIRE(std::fabs(r.snr_threshold - 0.2192) < 1e-3);
        REQUIRE(r.chosen == zoc_candidate::quantile2);
    }
    SECTION("rejects t outside [0, 1]") {
        rayleigh_gain f(1.0);
        REQUIRE_THROWS_AS(mrc_two_link_ct(f, f, -0.1), domain_error);
        REQUIRE_THROWS_AS(mrc_two_link_ct(f, f, 1.1), domain_error);
    }
}

TEST_CASE("Rayleigh closed form") {
    SECTION("tangent case of the boundary example") {
        const auto r = mrc_two_link_rayleigh(1.0, 3.162, 0.9);
        REQUIRE(r.tangent_x.has_value());
        REQUIRE(std::fabs(*r.tangent_x - 0.1795) < 1e-3);
        REQUIRE(std::fabs(r.snr_threshold - 0.6003) < 1e-3);
        REQUIRE(r.chosen == zoc_candidate::tangent);
    }
    SECTION("symmetric countermonotone") {
        const auto r = mrc_two_link_rayleigh(1.0, 1.0, 1.0);
        REQUIRE(std::fabs(*r.tangent_x - ln2) < 1e-12);
        REQUIRE(std::fabs(r.snr_threshold - 2.0 * ln2) < 1e-12);
    }
    SECTION("degenerate cases") {
        REQUIRE(mrc_two_link_rayleigh(1.0, 2.0, 0.0).snr_threshold == 0.0);
        REQUIRE_THROWS_AS(mrc_two_link_rayleigh(0.0, 1.0, 0.5), domain_error);
    }
}

TEST_CASE("closed form, generic C_t path and copula path agree") {
    std::mt19937_64 gen(1618);
    std::uniform_real_distribution<double> ul(std::log(0.2), std::log(5.0));
    std::uniform_real_distribution<double> ut(0.05, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double l1 = std::exp(ul(gen));
        const double l2 = std::exp(ul(gen));
        const double t = ut(gen);
        rayleigh_gain f1(1.0 / l1), f2(1.0 / l2);
        const double closed = mrc_two_link_rayleigh(l1, l2, t).rate_bits;
        const double generic = mrc_two_link_ct(f1, f2, t).rate_bits;
        const double copula =
            generic_two_link(bivariate_copula::shifted_w(t), f1, f2, combiner::mrc).rate_bits;
        INFO("l1=" << l1 << " l2=" << l2 << " t=" << t);
        REQUIRE(std::fabs(closed - generic) < 1e-6);
        REQUIRE(std::fabs(closed - copula) < 1e-6);
    }
}

TEST_CASE("maximum two-link ZOC") {
    SECTION("SC with Rayleigh plus Nakagami at 10 dB") {
        rayleigh_gain f1(10.0);
        nakagami_gain f2(5.0, 10.0);
        const auto r = max_zoc_two_link(f1, f2, combiner::sc);
        REQUIRE(r.p_star.has_value());
        REQUIRE(std::fabs(*r.p_star - 0.575) < 1e-3);
        REQUIRE(std::fabs(r.snr_threshold - 8.554) < 1e-2);
        REQUIRE(std::fabs(r.rate_bits - 3.256) < 5e-3);
    }
    SECTION("SC with identical marginals splits at the median") {
        nakagami_gain f(5.0, 1.0);
        const auto r = max_zoc_two_link(f, f, combiner::sc);
        REQUIRE(std::fabs(*r.p_star - 0.5) < 1e-9);
        REQUIRE(std::fabs(r.rate_bits - bits(f.median())) < 1e-9);
    }
    SECTION("MRC recovers the countermonotone value") {
        rayleigh_gain f(1.0);
        const auto r = max_zoc_two_link(f, f, combiner::mrc);
        REQUIRE(std::fabs(r.rate_bits - bits(2.0 * ln2)) < 1e-9);
    }
}

TEST_CASE("generic two-link over explicit copulas") {
    rayleigh_gain f(1.0);
    SECTION("countermonotone SC equals the median formula") {
        const auto r = generic_two_link(bivariate_copula::countermonotone(), f, f, combiner::sc);
        REQUIRE(std::fabs(r.rate_bits - bits(ln2)) < 1e-6);
    }
    SECTION("countermonotone SC matches the direct solver off-symmetry") {
        rayleigh_gain f1(10.0);
        nakagami_gain f2(5.0, 10.0);
        const auto via_boundary =
            generic_two_link(bivariate_copula::countermonotone(), f1, f2, combiner::sc);
        const auto direct = max_zoc_two_link(f1, f2, combiner::sc);
        REQUIRE(std::fabs(via_boundary.rate_bits - direct.rate_bits) < 1e-6);
    }
    SECTION("empty zero set reports zero rate") {
        for (const auto& c : {bivariate_copula::independence(), bivariate_copula::comonotone(),
                              bivariate_copula::clayton(1.5)}) {
            const auto r = generic_two_link(c, f, f, combiner::mrc);
            REQUIRE(r.rate_bits == 0.0);
            REQUIRE(r.status == "no_zero_set");
        }
    }
    SECTION("negative-theta Clayton achieves a positive rate") {
        const auto r = generic_two_link(bivariate_copula::clayton(-0.75), f, f, combiner::mrc);
        REQUIRE(r.rate_bits > 0.1);
        REQUIRE(r.status == "ok");
    }
}

TEST_CASE("MRC bounds for homogeneous links") {
    rayleigh_gain ray(1.0);
    nakagami_gain naka(5.0, 1.0);
    SECTION("outer bound from W") {
        REQUIRE(std::fabs(mrc_outer_bound_w(ray, 2) - bits(2.0 * ln2)) < 1e-12);
        REQUIRE(std::fabs(mrc_outer_bound_w(ray, 4) - bits(4.0 * std::log(4.0))) < 1e-12);
        REQUIRE(std::fabs(mrc_outer_bound_w(naka, 2) - bits(2.0 * naka.median())) < 1e-9);
        REQUIRE(std::fabs(mrc_outer_bound_w(naka, 2) - 1.5202) < 1e-3);
        REQUIRE_THROWS_AS(mrc_outer_bound_w(ray, 1), domain_error);
    }
    SECTION("outer bound from joint mixability") {
        REQUIRE(std::fabs(mrc_outer_bound_jm(ray, 4) - std::log2(5.0)) < 1e-12);
        REQUIRE(std::fabs(mrc_outer_bound_jm(naka, 2) - std::log2(3.0)) < 1e-12);
        REQUIRE(std::fabs(mrc_outer_bound_jm(rayleigh_gain(2.0), 2) - std::log2(5.0)) < 1e-12);
    }
    SECTION("inner bound and its Rayleigh closed form") {
        REQUIRE(std::fabs(mrc_inner_bound(ray, 2) - mrc_outer_bound_w(ray, 2)) < 1e-12);
        for (int n = 2; n <= 12; ++n) {
            const double closed = std::log2(1.0 - n * std::log(1.0 - std::pow(1.0 - 1.0 / n, n - 1.0)));
            REQUIRE(std::fabs(mrc_inner_bound(ray, n) - closed) < 1e-9);
        }
        REQUIRE(std::fabs(mrc_inner_bound(ray, 3) - 1.4664) < 1e-3);
    }
    SECTION("inner bound approaches the 1/e quantile regime for large n") {
        const int n = 10000;
        const double limit_form = std::log2(1.0 + n * 0.2 * reg_gamma_lower_inv(5.0, 1.0 / M_E));
        REQUIRE(std::fabs(mrc_inner_bound(naka, n) - limit_form) < 1e-3);
    }
    SECTION("gap limit") {
        REQUIRE(std::fabs(mrc_gap_limit(ray) - 1.1245) < 1e-3);
        REQUIRE(std::fabs(mrc_gap_limit(naka) - 0.3280) < 1e-3);
        // scale invariance
        const double g1 = mrc_gap_limit(rayleigh_gain(0.1));
        const double g2 = mrc_gap_limit(rayleigh_gain(1.0));
        const double g3 = mrc_gap_limit(rayleigh_gain(10.0));
        REQUIRE(std::fabs(g1 - g2) < 1e-12);
        REQUIRE(std::fabs(g2 - g3) < 1e-12);
    }
}

TEST_CASE("B-SYM sufficient conditions") {
    rayleigh_gain ray(1.0);
    nakagami_gain naka(5.0, 1.0);
    weibull_gain wei(1.0, 6.0);
    SECTION("W boundary") {
        for (int n = 2; n <= 10; ++n) {
            const auto v = bsym_check_w(ray, n);
            REQUIRE(v.holds);
            REQUIRE(v.condition_value < 0.0);
            REQUIRE(v.quasiconcave_ok);
            REQUIRE(bsym_check_w(naka, n).holds);
        }
        const auto v = bsym_check_w(wei, 2);
        REQUIRE_FALSE(v.holds);
        REQUIRE(std::fabs(v.condition_value - 1.98) < 0.05);
    }
    SECTION("Archimedean boundary") {
        REQUIRE(bsym_check_arch(ray, 3).holds);
        REQUIRE(bsym_check_arch(naka, 4).holds);
        REQUIRE_FALSE(bsym_check_arch(wei, 2).holds);
    }
}

TEST_CASE("SC capacities for n links") {
    SECTION("homogeneous closed forms") {
        rayleigh_gain ray1(1.0);
        REQUIRE(std::fabs(sc_n_homogeneous(ray1, 2).rate_bits - bits(ln2)) < 1e-12);
        rayleigh_gain ray10(10.0);
        REQUIRE(std::fabs(sc_n_homogeneous(ray10, 10).rate_bits - bits(10.0 * std::log(10.0))) <
                1e-9);
        nakagami_gain naka(5.0, 10.0);
        const double expected = bits(2.0 * reg_gamma_lower_inv(5.0, 0.5));
        REQUIRE(std::fabs(sc_n_homogeneous(naka, 2).rate_bits - expected) < 1e-9);
        REQUIRE_THROWS_AS(sc_n_homogeneous(ray1, 1), domain_error);
    }
    SECTION("heterogeneous solve matches the homogeneous formula") {
        nakagami_gain naka(5.0, 10.0);
        for (int n : {2, 4, 7}) {
            std::vector<const gain_distribution*> fs(n, &naka);
            REQUIRE(std::fabs(sc_n_heterogeneous(fs).rate_bits -
                              sc_n_homogeneous(naka, n).rate_bits) < 1e-9);
        }
    }
    SECTION("heterogeneous pair equals the two-link path") {
        std::mt19937_64 gen(55);
        std::uniform_real_distribution<double> usnr(0.2, 20.0);
        for (int trial = 0; trial < 10; ++trial) {
            rayleigh_gain f1(usnr(gen));
            nakagami_gain f2(3.0, usnr(gen));
            std::vector<const gain_distribution*> fs{&f1, &f2};
            const auto hetero = sc_n_heterogeneous(fs);
            const auto direct = max_zoc_two_link(f1, f2, combiner::sc);
            REQUIRE(std::fabs(hetero.rate_bits - direct.rate_bits) < 1e-9);
            REQUIRE(hetero.p_star.has_value());
        }
        rayleigh_gain f1(10.0);
        nakagami_gain f2(5.0, 10.0);
        std::vector<const gain_distribution*> fs{&f1, &f2};
        const auto r = sc_n_heterogeneous(fs);
        REQUIRE(std::fabs(r.snr_threshold - 8.554) < 1e-2);
        REQUIRE(std::fabs(r.rate_bits - 3.256) < 5e-3);
    }
}

TEST_CASE("bounds report") {
    rayleigh_gain ray(1.0);
    nakagami_gain naka(5.0, 1.0);
    SECTION("Rayleigh rows, ordering and gap growth") {
        const auto rows = bounds_report(ray, 2, 10);
        REQUIRE(rows.size() == 9);
        REQUIRE(std::fabs(rows[0].inner_bits - rows[0].outer_w_bits) < 1e-9);
        double prev_gap = 0.0;
        for (const auto& row : rows) {
            REQUIRE(row.inner_bits <= row.outer_w_bits + 1e-9);
            REQUIRE(row.inner_bits <= row.outer_jm_bits + 1e-9);
            REQUIRE(row.gap_bits >= prev_gap - 1e-9);
            REQUIRE(row.gap_bits <= row.gap_limit_bits + 1e-9);
            REQUIRE(row.bsym_w_holds);
            REQUIRE(row.bsym_arch_holds);
            prev_gap = row.gap_bits;
        }
    }
    SECTION("Nakagami gap stays under its limit") {
        for (const auto& row : bounds_report(naka, 2, 10)) {
            REQUIRE(row.gap_bits <= 0.3281);
            REQUIRE(row.inner_bits <= row.outer_jm_bits + 1e-9);
        }
    }
    SECTION("single row") {
        REQUIRE(bounds_report(ray, 2, 2).size() == 1);
        REQUIRE_THROWS_AS(bounds_report(ray, 1, 5), domain_error);
    }
}

TEST_CASE("capacity properties") {
    SECTION("candidate dominance") {
        rayleigh_gain f1(1.0);
        nakagami_gain f2(5.0, 2.0);
        for (int i = 1; i <= 20; ++i) {
            const double t = i / 20.0;
            const double rate = mrc_two_link_ct(f1, f2, t).rate_bits;
            REQUIRE(rate <= bits(quantile_or_inf(f1, t)) + 1e-9);
            REQUIRE(rate <= bits(quantile_or_inf(f2, t)) + 1e-9);
        }
    }
    SECTION("monotone in t") {
        rayleigh_gain f1(1.0), f2(10.0 / 3.162);
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double rate = mrc_two_link_ct(f1, f2, i / 100.0).rate_bits;
            REQUIRE(rate >= prev - 1e-9);
            prev = rate;
        }
    }
    SECTION("weak link controls the small-t regime") {
        rayleigh_gain weak(std::pow(10.0, -0.5));             // -5 dB
        rayleigh_gain mid(std::pow(10.0, 0.5));               // 5 dB
        rayleigh_gain strong(10.0);                           // 10 dB
        for (int i = 0; i <= 17; ++i) {
            const double t = 0.05 * i;
            const double a = mrc_two_link_ct(weak, mid, t).rate_bits;
            const double b = mrc_two_link_ct(weak, strong, t).rate_bits;
            REQUIRE(std::fabs(a - b) < 1e-6);
        }
        const double a = mrc_two_link_ct(weak, mid, 0.99).rate_bits;
        const double b = mrc_two_link_ct(weak, strong, 0.99).rate_bits;
        REQUIRE(b - a > 1e-3);
    }
    SECTION("n = 2 collapse of bounds and two-link maximum") {
        rayleigh_gain ray(1.0);
        nakagami_gain naka(5.0, 1.0);
        for (const gain_distribution* f :
             std::initializer_list<const gain_distribution*>{&ray, &naka}) {
            const double inner = mrc_inner_bound(*f, 2);
            const double outer = mrc_outer_bound_w(*f, 2);
            const double two_link = max_zoc_two_link(*f, *f, combiner::mrc).rate_bits;
            REQUIRE(std::fabs(inner - outer) < 1e-6);
            REQUIRE(std::fabs(inner - two_link) < 1e-6);
        }
    }
    SECTION("thresholds scale with SNR") {
        for (double c : {0.1, 3.0, 25.0}) {
            rayleigh_gain base(1.0), scaled(c);
            const double s1 = mrc_two_link_ct(base, base, 0.8).snr_threshold;
            const double s2 = mrc_two_link_ct(scaled, scaled, 0.8).snr_threshold;
            REQUIRE(std::fabs(s2 - c * s1) < 1e-8 * c * (1.0 + s1));
            nakagami_gain nb(5.0, 1.0), ns(5.0, c);
            const double t1 = sc_n_homogeneous(nb, 4).snr_threshold;
            const double t2 = sc_n_homogeneous(ns, 4).snr_threshold;
            REQUIRE(std::fabs(t2 - c * t1) < 1e-8 * c * (1.0 + t1));
        }
    }
}
