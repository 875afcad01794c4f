#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cascade/catalog.hpp"
#include "cascade/integrate.hpp"
#include "cascade/stationary.hpp"

using namespace cascade;

namespace {

ShellSequence inverse_square_data(int n_max) {
    std::vector<double> v(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        v[static_cast<std::size_t>(n - 1)] = 1.0 / (static_cast<double>(n) * n);
    }
    return ShellSequence(std::move(v));
}

}  // namespace

TEST_CASE("model A pulse matches the closed form at t=1") {
    TruncationConfig cfg;
    cfg.n_max = 256;
    cfg.step_control.dt = 1e-3;
    TrajectoryRecord rec = integrate_model_a(ShellSequence::unit_mode(1, 256), cfg,
                                             ForcingSpec::none(), ViscositySpec::none(),
                                             {0.0, 1.0}, {1.0});
    REQUIRE(rec.states.size() == 1);
    double worst = 0.0;
    for (int n = 1; n <= 64; ++n) {
        worst = std::max(worst, std::abs(rec.states[0].a(n) - closed_form_example(1, n, 1.0)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("RK4 convergence order: halving dt cuts the error ~16x") {
    auto error_at = [](double dt) {
        TruncationConfig cfg;
        cfg.n_max = 128;
        cfg.step_control.dt = dt;
        TrajectoryRecord rec = integrate_model_a(ShellSequence::unit_mode(1, 128), cfg,
                                                 ForcingSpec::none(), ViscositySpec::none(),
                                                 {0.0, 1.0}, {1.0});
        double worst = 0.0;
        for (int n = 1; n <= 64; ++n) {
            worst = std::max(worst, std::abs(rec.states[0].a(n) - closed_form_example(1, n, 1.0)));
        }
        return worst;
    };
    double ratio = error_at(2e-3) / error_at(1e-3);
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("zero initial data stays zero") {
    TruncationConfig cfg;
    cfg.n_max = 32;
    TrajectoryRecord rec = integrate_model_a(ShellSequence::zeros(32), cfg, ForcingSpec::none(),
                                             ViscositySpec::none(), {0.0, 1.0}, {0.5, 1.0});
    for (const auto& st : rec.states) {
        for (int n = 1; n <= 32; ++n) CHECK(st.a(n) == 0.0);
    }
}

TEST_CASE("constant forcing relaxes to the Gamma-formula steady state") {
    TruncationConfig cfg;
    cfg.n_max = 256;
    cfg.step_control.dt = 1e-3;
    cfg.closure = Closure::absorbing_sponge;  // outflow boundary; zero_pad reflects
    TrajectoryRecord rec = integrate_model_a(ShellSequence::zeros(256), cfg,
                                             ForcingSpec::constant(1), ViscositySpec::none(),
                                             {0.0, 20.0}, {20.0});
    StationaryStateA st = constant_forced_fixed_point(17);
    for (int n = 1; n <= 16; ++n) {
        CHECK(std::abs(rec.states[0].a(n) - st.values.a(n)) < 1e-3);
    }
    CHECK(rec.states[0].a(1) == doctest::Approx(M_PI / 2).epsilon(1e-4));
}

TEST_CASE("energy conservation and the closure artifact") {
    // pre-front regime: drift at rounding level
    TruncationConfig cfg;
    cfg.n_max = 256;
    cfg.step_control.dt = 1e-3;
    TrajectoryRecord rec = integrate_model_a(ShellSequence::unit_mode(1, 256), cfg,
                                             ForcingSpec::none(), ViscositySpec::none(),
                                             {0.0, 2.0}, {0.0, 0.5, 1.0, 1.5, 2.0});
    CHECK(energy_drift(rec) < 1e-8);

    // front past the boundary: the zero-pad block energy still reads
    // conserved (the closure is exactly conservative) but the state is wrong
    TruncationConfig small;
    small.n_max = 64;
    small.step_control.dt = 1e-3;
    TrajectoryRecord junk = integrate_model_a(ShellSequence::unit_mode(1, 64), small,
                                              ForcingSpec::none(), ViscositySpec::none(),
                                              {0.0, 5.0}, {5.0});
    CHECK(crest_index(5.0) > 64.0);
    double state_err = 0.0;
    for (int n = 1; n <= 64; ++n) {
        state_err = std::max(state_err,
                             std::abs(junk.states[0].a(n) - closed_form_example(1, n, 5.0)));
    }
    CHECK(state_err > 1e-2);  // closure artifact
    CHECK(energy_drift(junk) < 1e-8);

    TrajectoryRecord zero = integrate_model_a(ShellSequence::zeros(16), TruncationConfig{16},
                                              ForcingSpec::none(), ViscositySpec::none(),
                                              {0.0, 0.1}, {0.1});
    CHECK_THROWS_AS(energy_drift(zero), ValidationError);
}

TEST_CASE("per-step block-energy change telescopes to the boundary flux") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    const double dt = 1e-4;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> v(12);
        for (auto& x : v) x = u(rng);
        ShellSequence init(v);
        TruncationConfig cfg;
        cfg.n_max = 12;
        cfg.step_control.dt = dt;
        TrajectoryRecord rec = integrate_model_a(init, cfg, ForcingSpec::none(),
                                                 ViscositySpec::none(), {0.0, dt}, {dt});
        int N = 8;
        double e0 = block_energy(init, 1, N);
        double e1 = block_energy(rec.states[0], 1, N);
        double flux = boundary_flux(init, N, CouplingFamily::model_a());
        CHECK(std::abs((e1 - e0) + 2.0 * flux * dt) <= 10.0 * dt * dt);
    }
}

TEST_CASE("seeded white-noise runs are reproducible") {
    TruncationConfig cfg;
    cfg.n_max = 32;
    cfg.step_control.dt = 1e-3;
    ViscositySpec visc;
    visc.nu = 0.25;
    auto run = [&](std::uint64_t seed) {
        return integrate_model_a(ShellSequence::zeros(32), cfg,
                                 ForcingSpec::white_noise(1, 1.0, seed), visc, {0.0, 2.0}, {2.0});
    };
    TrajectoryRecord r1 = run(7), r2 = run(7), r3 = run(8);
    for (int n = 1; n <= 32; ++n) {
        CHECK(r1.states[0].a(n) == r2.states[0].a(n));  // bitwise
    }
    CHECK(r1.states[0].a(1) != r3.states[0].a(1));
}

TEST_CASE("uniform p=0 damping dissipates exactly at rate 4 nu") {
    TruncationConfig cfg;
    cfg.n_max = 128;
    cfg.step_control.dt = 1e-3;
    ViscositySpec visc;
    visc.nu = 0.1;
    TrajectoryRecord rec = integrate_model_a(ShellSequence::unit_mode(1, 128), cfg,
                                             ForcingSpec::none(), visc, {0.0, 1.0}, {1.0});
    double expected = std::exp(-4.0 * visc.nu * 1.0);
    CHECK(rec.diagnostics[0].block_energy == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("viscous equilibrium balance: nu * E sum Lambda a^2 = 1/4") {
    ViscositySpec visc;
    visc.nu = 0.5;
    visc.p = 0;
    std::vector<TrajectoryRecord> recs;
    std::vector<double> snaps;
    for (double t = 0; t <= 200.0; t += 1.0) snaps.push_back(t);
    for (int s = 0; s < 16; ++s) {
        TruncationConfig cfg;
        cfg.n_max = 128;
        cfg.step_control.dt = 1e-3;
        recs.push_back(integrate_model_a(ShellSequence::zeros(128), cfg,
                                         ForcingSpec::white_noise(1, 1.0, 1000 + s), visc,
                                         {0.0, 200.0}, snaps));
    }
    BalanceAudit audit = viscous_equilibrium_balance_ensemble(recs, visc);
    CHECK(std::abs(audit.value - audit.expected) <= 0.15 * audit.expected);

    // unforced record rejected
    TruncationConfig cfg;
    cfg.n_max = 16;
    TrajectoryRecord unforced = integrate_model_a(ShellSequence::unit_mode(1, 16), cfg,
                                                  ForcingSpec::none(), visc, {0.0, 1.0}, {1.0});
    CHECK_THROWS_AS(viscous_equilibrium_balance(unforced, visc), ValidationError);
}

TEST_CASE("large nu concentrates in mode 1 but balances the same") {
    ViscositySpec visc;
    visc.nu = 10.0;
    visc.p = 0;
    std::vector<TrajectoryRecord> recs;
    std::vector<double> snaps;
    for (double t = 0; t <= 100.0; t += 0.25) snaps.push_back(t);
    for (int s = 0; s < 16; ++s) {
        TruncationConfig cfg;
        cfg.n_max = 64;
        cfg.step_control.dt = 5e-4;
        recs.push_back(integrate_model_a(ShellSequence::zeros(64), cfg,
                                         ForcingSpec::white_noise(1, 1.0, 77 + s), visc,
                                         {0.0, 100.0}, snaps));
    }
    BalanceAudit audit = viscous_equilibrium_balance_ensemble(recs, visc);
    CHECK(std::abs(audit.value - audit.expected) <= 0.10 * audit.expected);
}

TEST_CASE("instability is flagged, not fatal") {
    // example-6 data already exceeds the threshold at the top of the chain
    TruncationConfig cfg;
    cfg.n_max = 48;
    cfg.step_control.dt = 1e-4;
    ShellSequence init = example_initial_state(6, 48, 2.0);
    TrajectoryRecord rec = integrate_model_a(init, cfg, ForcingSpec::none(), ViscositySpec::none(),
                                             {0.0, 0.3}, {0.3});
    CHECK(rec.instability_detected);
    CHECK(rec.t_instability <= 0.3);

    // a stable run is not flagged
    TruncationConfig ok;
    ok.n_max = 32;
    TrajectoryRecord fine = integrate_model_a(ShellSequence::unit_mode(1, 32), ok,
                                              ForcingSpec::none(), ViscositySpec::none(),
                                              {0.0, 0.5}, {0.5});
    CHECK_FALSE(fine.instability_detected);
}

TEST_CASE("model B: one-step Taylor expansion") {
    // b1(0)=1: b1'(0) = -(3/2) b2(0) = 0 and b2'(0) = (2-1)(2-1/2) b1(0) = 3/2
    const double dt = 1e-3;
    TruncationConfig cfg;
    cfg.n_max = 16;
    cfg.step_control.dt = dt;
    TrajectoryRecord rec = integrate_model_b(ShellSequence::unit_mode(1, 16), cfg,
                                             ForcingSpec::none(), {0.0, dt}, {dt});
    CHECK(std::abs(rec.states[0].a(2) - 1.5 * dt) <= 10.0 * dt * dt * dt);
    CHECK(std::abs(rec.states[0].a(1) - 1.0) <= 10.0 * dt * dt);

    TrajectoryRecord zero = integrate_model_b(ShellSequence::zeros(16), cfg, ForcingSpec::none(),
                                              {0.0, 0.01}, {0.01});
    for (int n = 1; n <= 16; ++n) CHECK(zero.states[0].a(n) == 0.0);
}

TEST_CASE("model B: 1/n^2 data dissipates energy through the top") {
    auto run = [](int n_max) {
        TruncationConfig cfg;
        cfg.n_max = n_max;
        cfg.step_control.dt = default_dt_model_b(n_max);
        cfg.closure = Closure::absorbing_sponge;
        return integrate_model_b(inverse_square_data(n_max), cfg, ForcingSpec::none(),
                                 {0.0, 1.0}, {1.0});
    };
    TrajectoryRecord lo = run(192), hi = run(256);

    double e_init = 0.0;
    ShellSequence init = inverse_square_data(192);
    e_init = block_energy(init, 1, 96);
    double e_lo = block_energy(lo.states[0], 1, 96);
    CHECK(e_lo < e_init);  // strictly dissipative by t=1

    // two resolutions agree far below the closure scale
    double diff = 0.0;
    for (int n = 1; n <= 16; ++n) {
        diff = std::max(diff, std::abs(lo.states[0].a(n) - hi.states[0].a(n)));
    }
    CHECK(diff < 1e-5);
}

TEST_CASE("model B: stiffness warning") {
    TruncationConfig cfg;
    cfg.n_max = 64;
    cfg.step_control.dt = 1e-3;  // dt * n_max^2 = 4.1
    TrajectoryRecord rec = integrate_model_b(ShellSequence::unit_mode(1, 64), cfg,
                                             ForcingSpec::none(), {0.0, 1e-3}, {1e-3});
    bool warned = false;
    for (const auto& w : rec.warnings) warned = warned || w.find("stiffness") != std::string::npos;
    CHECK(warned);
    CHECK(default_dt_model_b(64) * 64 * 64 <= 0.25);
}

TEST_CASE("viscosity spec variants") {
    ViscositySpec lp;
    lp.nu = 1.0;
    lp.p = 1;
    CHECK(lp.lambda(1) == 0.0);  // prod (n-k), k=1: (n-1)
    CHECK(lp.lambda(5) == 4.0);

    ViscositySpec pw;
    pw.nu = 1.0;
    pw.p = 1;
    pw.variant = ViscositySpec::Variant::power;
    CHECK(pw.lambda(5) == 5.0);

    ViscositySpec p0;
    CHECK(p0.lambda(7) == 1.0);
}
