#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zoc/numerics.hpp"
#include "test_helpers.hpp"

using namespace zoc;

TEST_CASE("find_root_bracketed solves classic brackets") {
    SECTION("sqrt(2)") {
        const double r = find_root_bracketed([](double x) { return x * x - 2.0; }, {1.0, 2.0});
        REQUIRE(std::fabs(r - 1.4142135623730951) < 1e-10);
    }
    SECTION("cos(x) = x against a fixed-point oracle") {
        double oracle = 0.5;
        for (int i = 0; i < 200; ++i) oracle = std::cos(oracle);
        const double r = find_root_bracketed([](double x) { return std::cos(x) - x; }, {0.0, 1.0});
        REQUIRE(std::fabs(r - oracle) < 1e-10);
        REQUIRE(std::fabs(r - 0.7390851332) < 1e-9);
    }
    SECTION("identity through zero") {
        const double r = find_root_bracketed([](double x) { return x; }, {-1.0, 1.0});
        REQUIRE(std::fabs(r) < 1e-10);
    }
}

TEST_CASE("find_root_bracketed error paths") {
    REQUIRE_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, {-1.0, 1.0}),
                      no_sign_change);
    REQUIRE_THROWS_AS(find_root_bracketed([](double x) { return x; }, {1.0, -1.0}),
                      invalid_interval);
    tolerance_config strict;
    strict.max_iter = 1;
    strict.abs_tol = 1e-15;
    strict.rel_tol = 1e-15;
    REQUIRE_THROWS_AS(
        find_root_bracketed([](double x) { return std::cos(x) - x; }, {0.0, 1.0}, strict),
        no_convergence);
    tolerance_config bad;
    bad.abs_tol = -1.0;
    REQUIRE_THROWS_AS(find_root_bracketed([](double x) { return x; }, {-1.0, 1.0}, bad),
                      domain_error);
}

TEST_CASE("find_root_bracketed recovers planted roots") {
    std::mt19937_64 gen(8086);
    std::uniform_real_distribution<double> ur(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double root = ur(gen);
        auto f = [&](double x) { return (x - root) * (x * x + 1.0); };
        const double r = find_root_bracketed(f, {root - 1.0 - 3.0 * std::fabs(ur(gen)),
                                                 root + 1.0 + 3.0 * std::fabs(ur(gen))});
        REQUIRE(std::fabs(r - root) < 1e-9);
    }
}

TEST_CASE("minimize_on_interval finds global minima") {
    SECTION("parabola") {
        const auto m = minimize_on_interval([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
        REQUIRE(std::fabs(m.argmin - 0.3) < 1e-6);
        REQUIRE(m.value < 1e-12);
    }
    SECTION("two-link boundary objective, tangent regime") {
        // x + B_t(x) for exponential rates (1, 3.162) and t = 0.9
        const double lambda2 = 3.162;
        auto f = [&](double x) {
            return x - std::log(1.1 - std::exp(-x)) / lambda2;
        };
        const double hi = -std::log(0.1); // F1^{-1}(0.9)
        const auto m = minimize_on_interval(f, 0.0, hi);
        REQUIRE(std::fabs(m.argmin - 0.1795) < 1e-3);
        REQUIRE(std::fabs(m.value - 0.6003) < 1e-3);
    }
    SECTION("endpoint minimum") {
        const auto m = minimize_on_interval([](double x) { return x; }, 0.0, 1.0);
        REQUIRE(std::fabs(m.argmin) < 1e-12);
        REQUIRE(std::fabs(m.value) < 1e-12);
    }
    SECTION("isolated non-finite values are skipped") {
        const auto m = minimize_on_interval([](double x) { return 1.0 / x; }, 0.0, 1.0);
        REQUIRE(std::fabs(m.argmin - 1.0) < 1e-9);
        REQUIRE(std::fabs(m.value - 1.0) < 1e-9);
    }
}

TEST_CASE("minimize_on_interval error paths") {
    REQUIRE_THROWS_AS(minimize_on_interval([](double x) { return x; }, 1.0, 0.0),
                      invalid_interval);
    REQUIRE_THROWS_AS(
        minimize_on_interval([](double) { return std::nan(""); }, 0.0, 1.0),
        non_finite_error);
}

TEST_CASE("minimize_on_interval never exceeds the endpoint values") {
    std::mt19937_64 gen(314159);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    tolerance_config tol;
    for (int trial = 0; trial < 25; ++trial) {
        const double a = coef(gen), b = coef(gen), c = coef(gen), w = 3.0 + 5.0 * std::fabs(coef(gen));
        auto f = [&](double x) { return a * x * x + b * std::sin(w * x) + c * x; };
        const auto m = minimize_on_interval(f, -1.0, 2.0, tol);
        REQUIRE(m.value <= std::min(f(-1.0), f(2.0)) + tol.abs_tol);
        REQUIRE(m.value <= f(m.argmin) + 1e-12);
    }
}

TEST_CASE("derivative_central") {
    SECTION("square") {
        const double d = derivative_central([](double x) { return x * x; }, 1.0);
        REQUIRE(std::fabs(d - 2.0) < 1e-6);
    }
    SECTION("exponential density slope") {
        const double d = derivative_central([](double x) { return std::exp(-x); }, 0.5);
        REQUIRE(std::fabs(d + std::exp(-0.5)) < 1e-6);
    }
    SECTION("gamma density is flat at its mode") {
        // shape 5, scale 0.2: mode at 0.8
        auto pdf = [](double x) {
            return std::exp(4.0 * std::log(x) - 5.0 * x - std::lgamma(5.0) + 5.0 * std::log(5.0));
        };
        REQUIRE(std::fabs(derivative_central(pdf, 0.8)) < 1e-5);
    }
    SECTION("exact for polynomials of degree <= 2") {
        std::mt19937_64 gen(2718);
        std::uniform_real_distribution<double> coef(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double a = coef(gen), b = coef(gen), c = coef(gen), x = coef(gen);
            const double d =
                derivative_central([&](double t) { return a * t * t + b * t + c; }, x);
            REQUIRE(std::fabs(d - (2.0 * a * x + b)) < 1e-8);
        }
    }
    SECTION("non-finite evaluations are rejected") {
        REQUIRE_THROWS_AS(derivative_central([](double x) { return std::log(x); }, 0.0),
                          non_finite_error);
    }
}
