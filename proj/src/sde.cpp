#include "cascade/sde.hpp"

#include <algorithm>
#include <cmath>

#include "cascade/rng.hpp"

namespace cascade {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

inline double em_step(double x, double dt, double sqrt_dt, double xi) {
    double x2 = x * x;
    double diffusion = std::sqrt(std::max(0.0, 1.0 - x2 * x2));
    return clamp_unit(x - x2 * x * dt + kInvSqrt2 * diffusion * sqrt_dt * xi);
}

}  // namespace

SdePath simulate_sde(double x0, double t, double dt, std::uint64_t seed) {
    if (std::abs(x0) > 1.0) throw ValidationError("simulate_sde: need x0 in [-1, 1]");
    if (!(dt > 0.0) || dt > 1e-3) throw ValidationError("simulate_sde: need 0 < dt <= 1e-3");
    if (t < 0.0) throw ValidationError("simulate_sde: need t >= 0");
    GaussianRng rng(seed);
    long steps = std::lround(t / dt);
    double x = x0;
    double integral = 0.0;
    double sqrt_dt = std::sqrt(dt);
    for (long s = 0; s < steps; ++s) {
        double x_new = em_step(x, dt, sqrt_dt, rng.normal());
        double mid = 0.5 * (x + x_new);
        integral += mid * mid * dt;
        x = x_new;
    }
    return {x, std::exp(-0.5 * integral)};
}

FeynmanKacEstimate feynman_kac_H(const OddSeriesFunction& h0, double x, double t, long n_paths,
                                 double dt, std::uint64_t seed) {
    if (std::abs(x) > 1.0) throw ValidationError("feynman_kac_H: need x in [-1, 1]");
    if (!h0.alternating_tail_ok()) {
        throw ValidationError("feynman_kac_H: coefficient tail is not summable");
    }
    if (t == 0.0) return {h0(x), 0.0, 0};
    if (!(dt > 0.0) || dt > 1e-3) throw ValidationError("feynman_kac_H: need 0 < dt <= 1e-3");
    if (n_paths < 2) throw ValidationError("feynman_kac_H: need at least 2 paths");

    long pairs = n_paths / 2;
    long steps = std::lround(t / dt);
    double sqrt_dt = std::sqrt(dt);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < pairs; ++i) {
        GaussianRng rng(GaussianRng::substream_seed(seed, static_cast<std::uint64_t>(i)));
        double xp = x, xm = x;
        double ip = 0.0, im = 0.0;
        for (long s = 0; s < steps; ++s) {
            double xi = rng.normal();
            double xp_new = em_step(xp, dt, sqrt_dt, xi);
            double xm_new = em_step(xm, dt, sqrt_dt, -xi);
            double mp = 0.5 * (xp + xp_new);
            double mm = 0.5 * (xm + xm_new);
            ip += mp * mp * dt;
            im += mm * mm * dt;
            xp = xp_new;
            xm = xm_new;
        }
        double value = 0.5 * (h0(xp) * std::exp(-0.5 * ip) + h0(xm) * std::exp(-0.5 * im));
        sum += value;
        sum_sq += value * value;
    }
    double mean = sum / static_cast<double>(pairs);
    double var = std::max(0.0, sum_sq / static_cast<double>(pairs) - mean * mean);
    double std_error = std::sqrt(var / static_cast<double>(pairs));
    return {mean, std_error, 2 * pairs};
}

}  // namespace cascade
