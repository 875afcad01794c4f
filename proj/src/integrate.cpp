#include "cascade/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "cascade/kahan.hpp"
#include "cascade/rng.hpp"

namespace cascade {

double ViscositySpec::lambda(int n) const {
    if (p == 0) return 1.0;
    if (variant == Variant::power) return std::pow(static_cast<double>(n), p);
    double prod = 1.0;
    for (int k = 1; k <= p; ++k) prod *= static_cast<double>(n - k);
    return prod;
}

double default_dt_model_b(int n_max) { return 0.2 / (static_cast<double>(n_max) * n_max); }

namespace {

constexpr double kBlowupThreshold = 1e12;

struct LinearShellSystem {
    int n_max;
    std::vector<double> c_lo;     // c_{n-1}
    std::vector<double> c_hi;     // c_n
    std::vector<double> damping;  // 2 nu Lambda_n + sponge
    int force_mode = 0;           // 1-based; 0 = none
    double force_amp = 0.0;       // constant part

    void rhs(const std::vector<double>& a, std::vector<double>& out) const {
        const int n = n_max;
        for (int i = 0; i < n; ++i) {
            double left = (i > 0) ? a[static_cast<std::size_t>(i - 1)] : 0.0;
            double right = (i + 1 < n) ? a[static_cast<std::size_t>(i + 1)] : 0.0;
            out[static_cast<std::size_t>(i)] =
                c_lo[static_cast<std::size_t>(i)] * left -
                c_hi[static_cast<std::size_t>(i)] * right -
                damping[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
        }
        if (force_mode >= 1) out[static_cast<std::size_t>(force_mode - 1)] += force_amp;
    }
};

LinearShellSystem build_system(const CouplingFamily& fam, const TruncationConfig& cfg,
                               const ForcingSpec& forcing, const ViscositySpec& visc,
                               TrajectoryRecord& rec) {
    LinearShellSystem sys;
    sys.n_max = cfg.n_max;
    sys.c_lo.resize(static_cast<std::size_t>(cfg.n_max));
    sys.c_hi.resize(static_cast<std::size_t>(cfg.n_max));
    sys.damping.assign(static_cast<std::size_t>(cfg.n_max), 0.0);
    for (int n = 1; n <= cfg.n_max; ++n) {
        sys.c_lo[static_cast<std::size_t>(n - 1)] = fam.c(n - 1);
        sys.c_hi[static_cast<std::size_t>(n - 1)] = fam.c(n);
        if (visc.nu > 0.0) {
            sys.damping[static_cast<std::size_t>(n - 1)] = 2.0 * visc.nu * visc.lambda(n);
        }
    }
    if (cfg.closure == Closure::absorbing_sponge) {
        int n0 = cfg.n_max - static_cast<int>(cfg.sponge_fraction * cfg.n_max);
        int width = cfg.n_max - n0;
        double smax = cfg.sponge_strength;
        if (smax <= 0.0) {
            // Outgoing signals move at ~2 c(n)/n modes per unit time; the
            // WKB-absorbed fraction of a quadratic ramp is
            // exp(-smax * width / (3 c(n0))). Stationary radiating profiles
            // need deep absorption, so aim well past that estimate.
            smax = 96.0 * fam.c(n0) / width;
        }
        for (int n = n0 + 1; n <= cfg.n_max; ++n) {
            double x = static_cast<double>(n - n0) / width;
            sys.damping[static_cast<std::size_t>(n - 1)] += smax * x * x;
        }
        rec.viscous = true;  // sponge is explicit dissipation
    }
    if (forcing.mode == ForcingSpec::Mode::constant) {
        sys.force_mode = forcing.target_mode;
        sys.force_amp = forcing.amplitude;
    }
    return sys;
}

TrajectoryRecord integrate_shell(const CouplingFamily& fam, const ShellSequence& initial,
                                 const TruncationConfig& cfg, const ForcingSpec& forcing,
                                 const ViscositySpec& visc, std::pair<double, double> t_span,
                                 std::vector<double> snapshot_times) {
    if (cfg.n_max < 4) throw ValidationError("integrate: need n_max >= 4");
    if (!(cfg.step_control.dt > 0.0)) throw ValidationError("integrate: need dt > 0");
    if (initial.n_max() > cfg.n_max) {
        throw ValidationError("integrate: initial state longer than n_max");
    }
    if (forcing.mode != ForcingSpec::Mode::none &&
        (forcing.target_mode < 1 || forcing.target_mode > cfg.n_max)) {
        throw ValidationError("integrate: forcing mode outside 1..n_max");
    }
    if (!(t_span.second >= t_span.first)) throw ValidationError("integrate: bad t_span");

    TrajectoryRecord rec;
    rec.forced = forcing.mode != ForcingSpec::Mode::none;
    rec.viscous = visc.nu > 0.0;

    if (fam.kind == CouplingKind::model_b &&
        cfg.step_control.dt * cfg.n_max * cfg.n_max > 0.5) {
        rec.warnings.push_back("stiffness: dt * n_max^2 > 0.5 for model B");
    }

    LinearShellSystem sys = build_system(fam, cfg, forcing, visc, rec);

    const double dt_base = cfg.step_control.dt;
    const bool white = forcing.mode == ForcingSpec::Mode::white_noise;
    const bool euler = cfg.step_control.method == StepMethod::euler_maruyama;
    GaussianRng rng(forcing.seed);

    std::vector<double> a(static_cast<std::size_t>(cfg.n_max), 0.0);
    for (int n = 1; n <= initial.n_max(); ++n) a[static_cast<std::size_t>(n - 1)] = initial.a(n);

    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::vector<double> stops;
    for (double s : snapshot_times) {
        if (s >= t_span.first - 1e-12 && s <= t_span.second + 1e-12) stops.push_back(s);
    }
    if (stops.empty() || stops.back() < t_span.second - 1e-12) stops.push_back(t_span.second);

    auto snapshot = [&](double t) {
        ShellSequence state(a, Provenance::integrated);
        EnergyReport er;
        er.M = 1;
        er.N = cfg.n_max;
        er.block_energy = block_energy(state, 1, cfg.n_max);
        er.flux_at_N = boundary_flux(state, cfg.n_max - 1, fam);
        er.time = t;
        rec.times.push_back(t);
        rec.states.push_back(std::move(state));
        rec.diagnostics.push_back(er);
    };

    std::vector<double> k1(a.size()), k2(a.size()), k3(a.size()), k4(a.size()), tmp(a.size());
    auto deterministic_step = [&](double dt) {
        if (euler) {
            sys.rhs(a, k1);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += dt * k1[i];
            return;
        }
        sys.rhs(a, k1);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + 0.5 * dt * k1[i];
        sys.rhs(tmp, k2);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + 0.5 * dt * k2[i];
        sys.rhs(tmp, k3);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + dt * k3[i];
        sys.rhs(tmp, k4);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] += dt * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) / 6.0;
        }
    };

    double t = t_span.first;
    if (!stops.empty() && std::abs(stops.front() - t) <= 1e-12) {
        snapshot(t);
        stops.erase(stops.begin());
    }

    for (double stop : stops) {
        while (t < stop - 1e-12) {
            double dt = std::min(dt_base, stop - t);
            deterministic_step(dt);
            if (white) {
                a[static_cast<std::size_t>(forcing.target_mode - 1)] +=
                    forcing.amplitude * std::sqrt(dt) * rng.normal();
            }
            t += dt;
            double amax = 0.0;
            for (double x : a) amax = std::max(amax, std::abs(x));
            if (amax > kBlowupThreshold || !std::isfinite(amax)) {
                rec.instability_detected = true;
                rec.t_instability = t;
                rec.warnings.push_back("instability detected at t=" + std::to_string(t));
                if (std::isfinite(amax)) snapshot(t);
                return rec;
            }
        }
        snapshot(t);
    }
    return rec;
}

}  // namespace

TrajectoryRecord integrate_model_a(const ShellSequence& initial, const TruncationConfig& cfg,
                                   const ForcingSpec& forcing, const ViscositySpec& visc,
                                   std::pair<double, double> t_span,
                                   const std::vector<double>& snapshot_times) {
    return integrate_shell(CouplingFamily::model_a(), initial, cfg, forcing, visc, t_span,
                           snapshot_times);
}

TrajectoryRecord integrate_model_b(const ShellSequence& initial, const TruncationConfig& cfg,
                                   const ForcingSpec& forcing, std::pair<double, double> t_span,
                                   const std::vector<double>& snapshot_times) {
    return integrate_shell(CouplingFamily::model_b(), initial, cfg, forcing, ViscositySpec::none(),
                           t_span, snapshot_times);
}

double energy_drift(const TrajectoryRecord& rec) {
    if (rec.forced || rec.viscous) {
        throw ValidationError("energy_drift: record is forced or viscous");
    }
    if (rec.diagnostics.empty()) throw ValidationError("energy_drift: empty record");
    double e0 = rec.diagnostics.front().block_energy;
    if (e0 <= 0.0) throw ValidationError("energy_drift: zero initial energy");
    double worst = 0.0;
    for (const auto& d : rec.diagnostics) {
        worst = std::max(worst, std::abs(d.block_energy - e0) / e0);
    }
    return worst;
}

namespace {

struct HalfSums {
    double first = 0.0, second = 0.0;
    std::size_t n_first = 0, n_second = 0;
};

HalfSums weighted_half_sums(const TrajectoryRecord& rec, const ViscositySpec& visc) {
    if (!rec.forced) throw ValidationError("viscous_equilibrium_balance: unforced record");
    if (!(visc.nu > 0.0)) throw ValidationError("viscous_equilibrium_balance: need nu > 0");
    std::size_t n_snap = rec.states.size();
    std::size_t start = n_snap / 2;
    if (n_snap - start < 8) {
        throw ValidationError("viscous_equilibrium_balance: too few snapshots to average");
    }
    std::size_t mid = start + (n_snap - start) / 2;
    HalfSums sums;
    KahanSum first, second;
    for (std::size_t s = start; s < n_snap; ++s) {
        const ShellSequence& state = rec.states[s];
        KahanSum weighted;
        for (int n = 1; n <= state.n_max(); ++n) {
            double an = state.a(n);
            weighted.add(visc.lambda(n) * an * an);
        }
        if (s < mid) {
            first.add(weighted.value());
            ++sums.n_first;
        } else {
            second.add(weighted.value());
            ++sums.n_second;
        }
    }
    sums.first = first.value();
    sums.second = second.value();
    return sums;
}

BalanceAudit audit_from_sums(const HalfSums& sums, const ViscositySpec& visc,
                             double forcing_amplitude) {
    BalanceAudit audit;
    audit.first_half = visc.nu * sums.first / static_cast<double>(sums.n_first);
    audit.second_half = visc.nu * sums.second / static_cast<double>(sums.n_second);
    audit.value = visc.nu * (sums.first + sums.second) /
                  static_cast<double>(sums.n_first + sums.n_second);
    audit.expected = 0.25 * forcing_amplitude * forcing_amplitude;
    if (std::abs(audit.first_half - audit.second_half) >
        0.1 * std::max(std::abs(audit.first_half), std::abs(audit.second_half))) {
        throw NumericalError("viscous_equilibrium_balance: record not equilibrated");
    }
    return audit;
}

}  // namespace

BalanceAudit viscous_equilibrium_balance(const TrajectoryRecord& rec, const ViscositySpec& visc,
                                         double forcing_amplitude) {
    return audit_from_sums(weighted_half_sums(rec, visc), visc, forcing_amplitude);
}

BalanceAudit viscous_equilibrium_balance_ensemble(const std::vector<TrajectoryRecord>& recs,
                                                  const ViscositySpec& visc,
                                                  double forcing_amplitude) {
    if (recs.empty()) throw ValidationError("viscous_equilibrium_balance: empty ensemble");
    HalfSums pooled;
    for (const auto& rec : recs) {
        HalfSums s = weighted_half_sums(rec, visc);
        pooled.first += s.first;
        pooled.second += s.second;
        pooled.n_first += s.n_first;
        pooled.n_second += s.n_second;
    }
    return audit_from_sums(pooled, visc, forcing_amplitude);
}

}  // namespace cascade
