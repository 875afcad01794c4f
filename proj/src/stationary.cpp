#include "cascade/stationary.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cascade/quadrature.hpp"
#include "cascade/rng.hpp"

namespace cascade {

namespace {

// tanh^{n-1}(u)/cosh(u) without the 0^0 ambiguity at u = 0.
double forcing_kernel(int n, double u) {
    if (n == 1) return 1.0 / std::cosh(u);
    return std::pow(std::tanh(u), n - 1) / std::cosh(u);
}

double sech(double u) { return 1.0 / std::cosh(u); }

}  // namespace

StationaryStateA constant_forced_fixed_point(int n_max) {
    if (n_max < 1) throw ValidationError("constant_forced_fixed_point: need n_max >= 1");
    std::vector<double> v(static_cast<std::size_t>(n_max));
    const double half_sqrt_pi = 0.5 * std::sqrt(M_PI);
    for (int n = 1; n <= n_max; ++n) {
        v[static_cast<std::size_t>(n - 1)] =
            half_sqrt_pi * std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1)));
    }
    return StationaryStateA{ShellSequence(std::move(v), Provenance::closed_form_sampled)};
}

double fixed_point_flux_audit(const StationaryStateA& state, int N) {
    if (N + 1 > state.values.n_max()) {
        throw ValidationError("fixed_point_flux_audit: need N+1 <= n_max");
    }
    return state.values.a(1) - N * state.values.a(N) * state.values.a(N + 1);
}

double stationary_covariance(int n, int m) {
    if (n < 1 || m < 1) throw ValidationError("stationary_covariance: need n, m >= 1");
    return 1.0 / (n + m - 1);
}

double stationary_covariance_quadrature(int n, int m) {
    if (n < 1 || m < 1) throw ValidationError("stationary_covariance: need n, m >= 1");
    int pow_sum = n + m - 2;
    auto f = [pow_sum](double u) {
        double th = std::tanh(u);
        double s = sech(u);
        double t = (pow_sum == 0) ? 1.0 : std::pow(th, pow_sum);
        return t * s * s;
    };
    return integrate_decaying(f, 1e-13);
}

double StationarySampler::default_lookback(int n_max) {
    return std::max(10.0, 5.0 + std::log(static_cast<double>(n_max)));
}

StationarySampler::StationarySampler(int n_max, double lookback_T, double dt, double trunc_tol)
    : n_max_(n_max), lookback_(lookback_T), dt_(dt) {
    if (n_max < 1) throw ValidationError("StationarySampler: need n_max >= 1");
    if (!(dt > 0.0) || !(lookback_T > dt)) {
        throw ValidationError("StationarySampler: need dt > 0 and T > dt");
    }
    // Missing variance beyond the lookback: (1 - tanh^{2n-1}(T))/(2n-1),
    // roughly 2(2n-1) e^{-2T} relative for the worst mode.
    double rel_trunc = 2.0 * (2.0 * n_max - 1.0) * std::exp(-2.0 * lookback_T);
    if (rel_trunc > trunc_tol) {
        throw ValidationError("StationarySampler: lookback too short for n_max=" +
                              std::to_string(n_max));
    }
    steps_ = static_cast<int>(std::llround(lookback_T / dt));
    kernel_.resize(static_cast<std::size_t>(steps_) * static_cast<std::size_t>(n_max_));
    double sqrt_dt = std::sqrt(dt_);
    for (int j = 0; j < steps_; ++j) {
        // left-point rule on s over [t - T, t): u = t - s
        double u = lookback_ - j * dt_;
        double th = std::tanh(u);
        double base = sech(u) * sqrt_dt;
        double* row = kernel_.data() + static_cast<std::size_t>(j) * n_max_;
        double p = 1.0;
        for (int i = 0; i < n_max_; ++i) {
            row[i] = base * p;
            p *= th;
        }
    }
}

ShellSequence StationarySampler::sample(std::uint64_t seed) const {
    GaussianRng rng(seed);
    std::vector<double> acc(static_cast<std::size_t>(n_max_), 0.0);
    for (int j = 0; j < steps_; ++j) {
        double xi = rng.normal();
        const double* row = kernel_.data() + static_cast<std::size_t>(j) * n_max_;
        for (int i = 0; i < n_max_; ++i) acc[static_cast<std::size_t>(i)] += row[i] * xi;
    }
    return ShellSequence(std::move(acc), Provenance::integrated);
}

ShellSequence sample_stationary_state(int n_max, std::uint64_t seed, double lookback_T,
                                      double dt) {
    StationarySampler sampler(n_max, lookback_T, dt);
    return sampler.sample(seed);
}

ViscousVariance viscous_variance(int n, double nu, int p) {
    if (n < 1) throw ValidationError("viscous_variance: need n >= 1");
    if (nu < 0.0) throw ValidationError("viscous_variance: need nu >= 0");
    if (p != 0 && p != 1) throw ValidationError("viscous_variance: p must be 0 or 1");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ViscousVariance out;
    if (p == 0) {
        auto f = [n, nu](double u) {
            double k = std::exp(-2.0 * nu * u) * forcing_kernel(n, u);
            return k * k;
        };
        out.quadrature = integrate_decaying(f, 1e-12);
        out.printed_value = std::exp(std::log(2.0) * (1.0 - 2.0 * nu) + std::lgamma(1.0 + 2.0 * nu) +
                                     std::lgamma(2.0 * n + 1.0 - 2.0 * nu) -
                                     std::lgamma(2.0 * n + 2.0));
        out.printed_lower = nan;
        out.printed_upper = nan;
        out.derived_lower = nan;
        out.derived_upper = nan;
    } else {
        double kappa = std::sqrt(1.0 + nu * nu);
        auto f = [n, nu, kappa](double u) {
            double v = kappa * u;
            double k = kappa / std::pow(kappa + nu * std::tanh(v), n) * forcing_kernel(n, v);
            return k * k;
        };
        out.quadrature = integrate_decaying(f, 1e-12);
        out.printed_value = nan;
        out.printed_lower =
            kappa * kappa / std::pow(kappa + nu, 2.0 * n + 2.0) / (2.0 * n + 1.0);
        out.printed_upper = std::pow(kappa, -2.0 * n) / (2.0 * n + 1.0);
        out.derived_lower = kappa / std::pow(kappa + nu, 2.0 * n) / (2.0 * n - 1.0);
        out.derived_upper = std::pow(kappa, 1.0 - 2.0 * n) / (2.0 * n - 1.0);
    }
    return out;
}

double inviscid_gap(int n, double nu, int p) {
    if (n < 1) throw ValidationError("inviscid_gap: need n >= 1");
    if (nu < 0.0) throw ValidationError("inviscid_gap: need nu >= 0");
    if (p != 0 && p != 1) throw ValidationError("inviscid_gap: p must be 0 or 1");
    if (nu == 0.0) return 0.0;
    if (p == 0) {
        auto f = [n, nu](double u) {
            double d = (std::exp(-2.0 * nu * u) - 1.0) * forcing_kernel(n, u);
            return d * d;
        };
        return integrate_decaying(f, 1e-12);
    }
    double kappa = std::sqrt(1.0 + nu * nu);
    auto f = [n, nu, kappa](double u) {
        double v = kappa * u;
        double k_nu = kappa / std::pow(kappa + nu * std::tanh(v), n) * forcing_kernel(n, v);
        double d = k_nu - forcing_kernel(n, u);
        return d * d;
    };
    return integrate_decaying(f, 1e-12);
}

double inviscid_gap_bound_p0(double nu) {
    return 4.0 * nu * nu / ((1.0 + nu) * (1.0 + 2.0 * nu));
}

TildeVariance tilde_variant_variance(int n, double nu) {
    if (n < 1) throw ValidationError("tilde_variant_variance: need n >= 1");
    if (nu < 0.0) throw ValidationError("tilde_variant_variance: need nu >= 0");
    TildeVariance out;
    double kappa = std::sqrt(1.0 + nu * nu);
    auto f = [n, nu, kappa](double u) {
        double v = kappa * u;
        double k = kappa * std::exp(-nu * u) / std::pow(kappa + nu * std::tanh(v), n) *
                   forcing_kernel(n, v);
        return k * k;
    };
    out.quadrature = integrate_decaying(f, 1e-12);
    // substituting v = kappa u and bounding kappa + nu tanh(v) leaves the
    // p=0 variance at viscosity nu/(2 kappa)
    double base = viscous_variance(n, nu / (2.0 * kappa), 0).quadrature;
    out.lower = kappa * std::pow(kappa + nu, -2.0 * n) * base;
    out.upper = std::pow(kappa, 1.0 - 2.0 * n) * base;
    return out;
}

}  // namespace cascade
