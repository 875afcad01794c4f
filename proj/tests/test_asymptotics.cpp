#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cascade/asymptotics.hpp"
#include "cascade/catalog.hpp"
#include "cascade/generating_function.hpp"
#include "cascade/stationary.hpp"
#include "cascade/taylor.hpp"

using namespace cascade;
using Complex = std::complex<double>;

namespace {

GeneratingFunction power_singularity(double zeta_sign, double alpha) {
    // (1 -+ z)^{-alpha} with the branch cut away from the unit disk
    return GeneratingFunction::from_evaluator(
        "power_sing",
        [zeta_sign, alpha](Complex z) {
            return std::pow(1.0 - z / zeta_sign, Complex(-alpha, 0.0));
        },
        {Complex(zeta_sign, 0.0)});
}

}  // namespace

TEST_CASE("transfer prediction point checks") {
    // geometric series: zeta=1, alpha=1 predicts a_n = 1 exactly
    SingularityDescriptor geo{Complex(1.0, 0.0), 1.0, Complex(1.0, 0.0)};
    for (int n : {1, 7, 40}) CHECK(transfer_coefficients(geo, n) == doctest::Approx(1.0));

    // 1/sqrt(1-z) at z-power 25 (a_26): prediction within 1% of the exact
    // central-binomial coefficient
    SingularityDescriptor root{Complex(1.0, 0.0), 0.5, Complex(1.0, 0.0)};
    double predicted = transfer_coefficients(root, 26);
    CHECK(predicted == doctest::Approx(1.0 / (std::sqrt(M_PI) * 5.0)).epsilon(1e-12));
    double exact = central_binomial_ratio(25);
    CHECK(std::abs(predicted - exact) / exact < 0.01);

    // zeta=-1 alternates with the sign of (-1)^{n+1} (example-5 pattern)
    SingularityDescriptor alt{Complex(-1.0, 0.0), 0.5, Complex(1.0, 0.0)};
    CHECK(transfer_coefficients(alt, 11) > 0.0);
    CHECK(transfer_coefficients(alt, 10) < 0.0);

    SingularityDescriptor bad{Complex(0.5, 0.0), 0.5, Complex(1.0, 0.0)};
    CHECK_THROWS_AS(transfer_coefficients(bad, 3), ValidationError);
}

TEST_CASE("evolve_singularity amplitude factors") {
    // alpha = 1/2 is marginal at both fixed points of the flow
    SingularityDescriptor plus_half{Complex(1.0, 0.0), 0.5, Complex(2.0, 0.0)};
    SingularityDescriptor evolved = evolve_singularity(plus_half, 1.7);
    CHECK(evolved.amplitude.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(evolved.zeta.real() == doctest::Approx(1.0).epsilon(1e-12));

    SingularityDescriptor minus_half{Complex(-1.0, 0.0), 0.5, Complex(1.5, 0.0)};
    SingularityDescriptor evolved_m = evolve_singularity(minus_half, 2.3);
    CHECK(evolved_m.amplitude.real() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(evolved_m.zeta.real() == doctest::Approx(-1.0));

    // zeta=1, alpha=1: factor e^{-t}
    SingularityDescriptor pole{Complex(1.0, 0.0), 1.0, Complex(1.0, 0.0)};
    CHECK(evolve_singularity(pole, 1.0).amplitude.real() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // zeta=-1, alpha=1: factor e^{+t} (the explosive side)
    SingularityDescriptor mpole{Complex(-1.0, 0.0), 1.0, Complex(1.0, 0.0)};
    CHECK(evolve_singularity(mpole, 1.0).amplitude.real() ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));

    // generic on-circle point drifts toward +1
    SingularityDescriptor off{Complex(0.0, 1.0), 0.5, Complex(1.0, 0.0)};
    SingularityDescriptor moved = evolve_singularity(off, 1.0);
    CHECK(std::abs(std::abs(moved.zeta) - 1.0) < 1e-12);
    CHECK(moved.zeta.real() > 0.5);
}

TEST_CASE("classification from descriptors") {
    auto d = [](double zr, double alpha) {
        return SingularityDescriptor{Complex(zr, 0.0), alpha, Complex(1.0, 0.0)};
    };
    CHECK(classify_from_descriptor(d(1.0, 0.5)) == RegimeLabel::dissipative_finite_rate);
    CHECK(classify_from_descriptor(d(1.0, 0.3)) == RegimeLabel::conservative);
    CHECK(classify_from_descriptor(d(1.0, 0.8)) == RegimeLabel::dissipative_infinite_rate);
    CHECK(classify_from_descriptor(d(-1.0, 0.7)) == RegimeLabel::explosive_infinite_rate);
    CHECK(classify_from_descriptor(d(-1.0, 0.5)) == RegimeLabel::explosive_finite_rate);
    CHECK(classify_from_descriptor(d(-1.0, 0.2)) == RegimeLabel::conservative);
    CHECK(classify_from_descriptor(d(1.5, 2.0)) == RegimeLabel::conservative);
    SingularityDescriptor ring{Complex(0.6, 0.8), 0.9, Complex(1.0, 0.0)};
    CHECK(classify_from_descriptor(ring) == RegimeLabel::conservative);

    // regime is invariant under the flow
    for (double zr : {1.0, -1.0}) {
        for (double alpha : {0.25, 0.5, 1.0}) {
            SingularityDescriptor base = d(zr, alpha);
            for (double t : {0.5, 1.0, 2.0}) {
                CHECK(classify_from_descriptor(evolve_singularity(base, t)) ==
                      classify_from_descriptor(base));
            }
        }
    }
}

TEST_CASE("transfer vs exact extraction for evolved descriptors") {
    // descriptors at zeta = +-1, alpha in {1/4, 1/2, 1}, t in {0, 1}:
    // prediction within 3% of the extracted coefficient at n = 64
    for (double zeta : {1.0, -1.0}) {
        for (double alpha : {0.25, 0.5, 1.0}) {
            GeneratingFunction g0 = power_singularity(zeta, alpha);
            SingularityDescriptor d{Complex(zeta, 0.0), alpha, Complex(1.0, 0.0)};
            for (double t : {0.0, 1.0}) {
                GeneratingFunction gt = apply_semigroup(g0, t);
                ShellSequence coeffs = taylor_coeffs(gt, 64);
                double predicted = transfer_coefficients(evolve_singularity(d, t), 64);
                double actual = coeffs.a(64);
                CHECK(std::abs(predicted - actual) <= 0.03 * std::abs(actual));
            }
        }
    }
}

TEST_CASE("transfer matches example 2 at its marginal singularity") {
    // G0 = 1/sqrt(1-z): descriptor (zeta=1, alpha=1/2, A=1); t in {0, 1}
    SingularityDescriptor d{Complex(1.0, 0.0), 0.5, Complex(1.0, 0.0)};
    for (double t : {0.0, 1.0}) {
        double predicted = transfer_coefficients(evolve_singularity(d, t), 64);
        double actual = closed_form_example(2, 64, t);
        CHECK(std::abs(predicted - actual) <= 0.02 * std::abs(actual));
    }
}

TEST_CASE("long time profile at zeta = -1") {
    // n = 1: C_0 = 1, so the profile is 2^{1-alpha} A
    SingularityDescriptor d{Complex(-1.0, 0.0), 0.7, Complex(1.3, 0.0)};
    CHECK(long_time_profile(d, 1) == doctest::Approx(std::pow(2.0, 0.3) * 1.3).epsilon(1e-12));

    // alpha = 1/2, A = 1/sqrt(2): the profile IS the fixed-point family
    SingularityDescriptor half{Complex(-1.0, 0.0), 0.5, Complex(1.0 / std::sqrt(2.0), 0.0)};
    ShellSequence fp = fixed_point_coeffs(1.0 / std::sqrt(2.0), 24);
    for (int n = 1; n <= 24; ++n) {
        CHECK(long_time_profile(half, n) == doctest::Approx(fp.a(n)).epsilon(1e-12));
    }

    // two independent routes to the alpha = 1/2 coefficients
    std::vector<double> series = long_time_profile_coeffs(0.5, 32);
    GeneratingFunction g = GeneratingFunction::from_evaluator(
        "profile",
        [](Complex z) {
            return std::sqrt((1.0 - z) / (1.0 + z)) / (1.0 - z);
        },
        {Complex(1.0, 0.0), Complex(-1.0, 0.0)});
    ShellSequence extracted = taylor_coeffs(g, 32);
    for (int n = 1; n <= 32; ++n) {
        CHECK(std::abs(series[static_cast<std::size_t>(n - 1)] - extracted.a(n)) < 1e-10);
    }

    SingularityDescriptor wrong{Complex(1.0, 0.0), 0.5, Complex(1.0, 0.0)};
    CHECK_THROWS_AS(long_time_profile(wrong, 3), ValidationError);
}

TEST_CASE("empirical tail exponent fits") {
    // example 2 initial data: a_n ~ 1/sqrt(pi n)
    ShellSequence ex2 = example_initial_state(2, 256);
    TailEstimate est = fit_tail_exponent(ex2, SignPattern::constant);
    CHECK(est.ok);
    CHECK(std::abs(est.alpha_hat - 0.5) < 0.02);
    CHECK(est.amplitude == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(0.05));

    // pure power a_n = 1/n: alpha_hat ~ 0
    std::vector<double> inv(128);
    for (int n = 1; n <= 128; ++n) inv[static_cast<std::size_t>(n - 1)] = 1.0 / n;
    TailEstimate pow_est = fit_tail_exponent(ShellSequence(inv), SignPattern::constant);
    CHECK(std::abs(pow_est.alpha_hat) < 1e-3);

    // forced steady state: alpha_hat ~ 1/2 with amplitude sqrt(pi/2)
    StationaryStateA st = constant_forced_fixed_point(512);
    TailEstimate st_est = fit_tail_exponent(st.values, SignPattern::constant);
    CHECK(std::abs(st_est.alpha_hat - 0.5) < 0.02);
    CHECK(st_est.amplitude == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(0.02));

    // alternating data fits |a_n|
    ShellSequence ex5 = example_initial_state(5, 128);
    TailEstimate alt_est = fit_tail_exponent(ex5, SignPattern::alternating);
    CHECK(std::abs(alt_est.alpha_hat - 1.0) < 1e-6);
    CHECK_THROWS_AS(fit_tail_exponent(ex5, SignPattern::constant), ValidationError);
}
