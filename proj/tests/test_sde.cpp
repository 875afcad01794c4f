#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cascade/model_b.hpp"
#include "cascade/sde.hpp"

using namespace cascade;

TEST_CASE("one-step moments from the origin") {
    // from x=0 the drift vanishes and the diffusion is 1/sqrt(2):
    // Var[X(dt)] = dt/2
    const double dt = 1e-3;
    double sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        SdePath p = simulate_sde(0.0, dt, dt, 100 + static_cast<std::uint64_t>(i));
        sum_sq += p.x_end * p.x_end;
    }
    double var = sum_sq / n;
    double se = std::sqrt(2.0 / n) * (dt / 2.0);
    CHECK(std::abs(var - dt / 2.0) <= 4.0 * se);
}

TEST_CASE("entrance boundary: paths started at 1 move inward") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        SdePath p = simulate_sde(1.0, 0.05, 1e-3, seed);
        CHECK(p.x_end < 1.0);
        CHECK(p.x_end >= -1.0);
    }
}

TEST_CASE("weights stay in the analytic bounds") {
    for (std::uint64_t seed = 10; seed < 30; ++seed) {
        double t = 0.8;
        SdePath p = simulate_sde(0.6, t, 1e-3, seed);
        CHECK(p.weight <= 1.0);
        CHECK(p.weight >= std::exp(-0.5 * t) * (1.0 - 1e-9));
        CHECK(std::abs(p.x_end) <= 1.0);
    }
    CHECK_THROWS_AS(simulate_sde(1.5, 1.0, 1e-3, 1), ValidationError);
    CHECK_THROWS_AS(simulate_sde(0.5, 1.0, 1e-2, 1), ValidationError);
}

TEST_CASE("feynman-kac degenerate cases") {
    OddSeriesFunction hx = OddSeriesFunction::from_sequence(ShellSequence::unit_mode(1, 2));
    FeynmanKacEstimate at0 = feynman_kac_H(hx, 0.37, 0.0, 100, 1e-3, 5);
    CHECK(at0.mean == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(at0.std_error == 0.0);

    // antithetic pairing makes the x=0 estimate exactly zero by parity
    FeynmanKacEstimate origin = feynman_kac_H(hx, 0.0, 0.7, 2000, 1e-3, 6);
    CHECK(origin.mean == 0.0);

    OddSeriesFunction bad = OddSeriesFunction::from_generator([](int) { return 1.0; }, "ones");
    CHECK_THROWS_AS(feynman_kac_H(bad, 0.5, 0.5, 100, 1e-3, 7), ValidationError);
}

TEST_CASE("feynman-kac agrees with the spectral evolution") {
    EigenBasis basis(48);
    OddSeriesFunction hx = OddSeriesFunction::from_sequence(ShellSequence::unit_mode(1, 2));
    OddSeriesFunction hq = OddSeriesFunction::from_generator(
        [](int n) { return 1.0 / (static_cast<double>(n) * n); }, "inv_sq");

    auto spectral = [&](const OddSeriesFunction& h0, double x, double t) {
        double acc = 0.0;
        for (int k = 1; k <= 16; ++k) {
            acc += basis.project(h0, k) * std::exp(-basis.lambda(k) * t) * basis.phi(k, x);
        }
        return acc;
    };

    struct Case {
        const OddSeriesFunction* h0;
        double x, t;
    };
    int idx = 0;
    for (Case c : {Case{&hx, 0.5, 0.5}, Case{&hq, 0.8, 1.0}, Case{&hx, 0.2, 2.0}}) {
        FeynmanKacEstimate est =
            feynman_kac_H(*c.h0, c.x, c.t, 30000, 1e-3, 900 + static_cast<std::uint64_t>(idx++));
        double ref = spectral(*c.h0, c.x, c.t);
        CHECK(std::abs(est.mean - ref) <= 3.0 * est.std_error);
    }
}
