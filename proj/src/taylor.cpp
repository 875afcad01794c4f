#include "cascade/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace cascade {

namespace {

using Complex = std::complex<double>;

// Iterative radix-2 forward DFT: x_n <- sum_m x_m exp(-2 pi i n m / M).
void fft_forward(std::vector<Complex>& x) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * M_PI / static_cast<double>(len);
        Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = x[i + k];
                Complex v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

double scaled_by_radius(double value, double log_r, int n) {
    if (value == 0.0) return 0.0;
    double log_out = std::log(std::abs(value)) - static_cast<double>(n) * log_r;
    if (log_out > 700.0) {
        throw NumericalError("taylor_coeffs: coefficient overflows double range");
    }
    double mag = std::exp(log_out);
    return value > 0 ? mag : -mag;
}

}  // namespace

TaylorResult taylor_coeffs_detailed(const GeneratingFunction& g, const TaylorOptions& opts) {
    if (opts.n_max < 1) throw ValidationError("taylor_coeffs: need n_max >= 1");
    const double rho = g.radius();

    double r;
    if (opts.radius_hint) {
        r = *opts.radius_hint;
        if (!(r > 0.0) || r >= rho) {
            throw ValidationError("taylor_coeffs: radius_hint outside (0, rho)");
        }
    } else if (std::isinf(rho)) {
        r = 1.0;
    } else {
        // Default stays well inside the disk; for long coefficient runs the
        // r^{-n} amplification forces the circle closer to the singularity.
        double r_default = std::min(0.9 * rho, 0.95);
        double r_floor = std::exp(-16.1 / static_cast<double>(opts.n_max));
        r = std::min(std::max(r_default, r_floor), 0.995 * rho);
    }
    const double log_r = std::log(r);

    std::size_t m = next_pow2(std::max<std::size_t>(128, 4 * static_cast<std::size_t>(opts.n_max)));
    std::vector<Complex> samples;
    double g_max = 0.0;
    double tail_max = 0.0;
    while (true) {
        samples.assign(m, Complex(0.0, 0.0));
        g_max = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
            Complex z = r * Complex(std::cos(theta), std::sin(theta));
            Complex val = g(z);
            if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
                throw NumericalError("taylor_coeffs: non-finite sample on the circle");
            }
            samples[k] = val;
            g_max = std::max(g_max, std::abs(val));
        }
        fft_forward(samples);
        const double inv_m = 1.0 / static_cast<double>(m);
        double head_max = 1e-300;
        for (int n = 0; n < opts.n_max && n < static_cast<int>(m); ++n) {
            head_max = std::max(head_max, std::abs(samples[static_cast<std::size_t>(n)]) * inv_m);
        }
        tail_max = 0.0;
        for (std::size_t n = 3 * m / 4; n < m; ++n) {
            tail_max = std::max(tail_max, std::abs(samples[n]) * inv_m);
        }
        if (tail_max <= opts.tail_tol * head_max) break;
        if (static_cast<int>(m) >= opts.max_samples) {
            throw NumericalError(
                "taylor_coeffs: aliasing tail not resolved with the sample budget "
                "(radius selection failed)");
        }
        m <<= 1;
    }

    const double inv_m = 1.0 / static_cast<double>(m);
    const double eps = std::numeric_limits<double>::epsilon();
    const double rounding = eps * g_max * std::log2(static_cast<double>(m));

    std::vector<double> coeffs(static_cast<std::size_t>(opts.n_max));
    std::vector<double> err(static_cast<std::size_t>(opts.n_max));
    for (int n = 0; n < opts.n_max; ++n) {
        double c = samples[static_cast<std::size_t>(n)].real() * inv_m;
        coeffs[static_cast<std::size_t>(n)] = scaled_by_radius(c, log_r, n);
        err[static_cast<std::size_t>(n)] = scaled_by_radius(tail_max + rounding, log_r, n);
    }

    TaylorResult out{ShellSequence(std::move(coeffs), Provenance::closed_form_sampled),
                     std::move(err), r, static_cast<int>(m)};
    return out;
}

ShellSequence taylor_coeffs(const GeneratingFunction& g, int n_max,
                            std::optional<double> radius_hint) {
    TaylorOptions opts;
    opts.n_max = n_max;
    opts.radius_hint = radius_hint;
    return taylor_coeffs_detailed(g, opts).coeffs;
}

double semigroup_compose_check(const GeneratingFunction& g0, double s, double t, int n_max) {
    GeneratingFunction two_step = apply_semigroup(apply_semigroup(g0, s), t);
    GeneratingFunction one_step = apply_semigroup(g0, s + t);
    ShellSequence a = taylor_coeffs(two_step, n_max);
    ShellSequence b = taylor_coeffs(one_step, n_max);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) worst = std::max(worst, std::abs(a.a(n) - b.a(n)));
    return worst;
}

}  // namespace cascade
