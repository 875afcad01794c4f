#include "cascade/asymptotics.hpp"

#include <cmath>

#include "cascade/errors.hpp"
#include "cascade/fit.hpp"
#include "cascade/mobius.hpp"

namespace cascade {

namespace {

bool close_to(std::complex<double> z, double x) { return std::abs(z - x) < 1e-9; }

}  // namespace

void SingularityDescriptor::validate() const {
    if (std::abs(zeta) < 1.0 - 1e-12) {
        throw ValidationError("SingularityDescriptor: |zeta| must be >= 1");
    }
    if (!(alpha > 0.0)) {
        throw ValidationError("SingularityDescriptor: alpha must be positive");
    }
    if (std::abs(amplitude) == 0.0) {
        throw ValidationError("SingularityDescriptor: amplitude must be nonzero");
    }
    if (!(wedge_eta > 0.0) || !(wedge_theta > 0.0) || wedge_theta >= M_PI / 2) {
        throw ValidationError("SingularityDescriptor: wedge outside (0, pi/2)");
    }
}

double transfer_coefficients(const SingularityDescriptor& d, int n) {
    d.validate();
    if (n < 1) throw ValidationError("transfer_coefficients: need n >= 1");
    // a_n is the z^{n-1} Taylor coefficient, so the transfer map applies at
    // m = n-1 (this also fixes the sign convention at zeta = -1: example-5
    // data is (-1)^{n+1} = (-1)^{m}).
    const int m = n - 1;
    if (m == 0 && d.alpha < 1.0) {
        throw ValidationError("transfer_coefficients: asymptotic undefined at n = 1");
    }
    double shape = std::pow(static_cast<double>(m), d.alpha - 1.0) / std::tgamma(d.alpha);
    if (std::abs(d.zeta.imag()) < 1e-14) {
        double x = d.zeta.real();
        double sign = (x < 0.0 && m % 2 == 1) ? -1.0 : 1.0;
        return sign * d.amplitude.real() * shape * std::pow(std::abs(x), -(m + d.alpha));
    }
    // conjugate pair: contributions sum to twice the real part
    std::complex<double> phase = std::pow(d.zeta, -(m + d.alpha));
    return 2.0 * (d.amplitude * phase).real() * shape;
}

SingularityDescriptor evolve_singularity(const SingularityDescriptor& d, double t) {
    d.validate();
    if (t < 0.0) throw ValidationError("evolve_singularity: need t >= 0");
    SingularityDescriptor out = d;
    if (t == 0.0) return out;
    if (close_to(d.zeta, -1.0)) {
        out.amplitude *= std::exp((2.0 * d.alpha - 1.0) * t);
        return out;
    }
    MoebiusParams p(t);
    std::complex<double> base =
        0.5 * (1.0 + d.zeta) * std::exp(t) + 0.5 * (1.0 - d.zeta) * std::exp(-t);
    if (std::abs(base) < 1e-12) {
        throw HorizonError("evolve_singularity: singularity reaches the origin at this t");
    }
    out.zeta = mobius_phi_inverse(p, d.zeta);
    out.amplitude *= std::pow(base, std::complex<double>(1.0 - 2.0 * d.alpha, 0.0));
    // keep real-axis descriptors exactly real
    if (std::abs(d.zeta.imag()) < 1e-14) {
        out.zeta = std::complex<double>(out.zeta.real(), 0.0);
        out.amplitude = std::complex<double>(out.amplitude.real(), 0.0);
    }
    return out;
}

RegimeLabel classify_from_descriptor(const SingularityDescriptor& d) {
    d.validate();
    if (std::abs(d.zeta) > 1.0 + 1e-12) {
        return RegimeLabel::conservative;  // analytic past the circle
    }
    bool at_plus = close_to(d.zeta, 1.0);
    bool at_minus = close_to(d.zeta, -1.0);
    if (!at_plus && !at_minus) {
        return RegimeLabel::conservative;  // generic on-circle point decays
    }
    double gap = d.alpha - 0.5;
    if (std::abs(gap) < 1e-12) {
        return at_plus ? RegimeLabel::dissipative_finite_rate
                       : RegimeLabel::explosive_finite_rate;
    }
    if (gap < 0.0) return RegimeLabel::conservative;
    return at_plus ? RegimeLabel::dissipative_infinite_rate
                   : RegimeLabel::explosive_infinite_rate;
}

std::vector<double> long_time_profile_coeffs(double alpha, int count) {
    if (count < 1) throw ValidationError("long_time_profile_coeffs: need count >= 1");
    std::size_t m = static_cast<std::size_t>(count);
    // (1-z)^alpha and (1+z)^{-alpha} binomial series
    std::vector<double> u(m), v(m);
    u[0] = 1.0;
    v[0] = 1.0;
    for (std::size_t k = 1; k < m; ++k) {
        double kk = static_cast<double>(k);
        u[k] = u[k - 1] * (-(alpha - kk + 1.0) / kk);
        v[k] = v[k - 1] * (-(alpha + kk - 1.0) / kk);
    }
    std::vector<double> w(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; i + j < m; ++j) w[i + j] += u[i] * v[j];
    }
    // multiply by 1/(1-z): prefix sums
    for (std::size_t i = 1; i < m; ++i) w[i] += w[i - 1];
    return w;
}

double long_time_profile(const SingularityDescriptor& d, int n) {
    d.validate();
    if (!close_to(d.zeta, -1.0)) {
        throw ValidationError("long_time_profile: descriptor must sit at zeta = -1");
    }
    if (n < 1) throw ValidationError("long_time_profile: need n >= 1");
    std::vector<double> c = long_time_profile_coeffs(d.alpha, n);
    return std::pow(2.0, 1.0 - d.alpha) * d.amplitude.real() * c[static_cast<std::size_t>(n - 1)];
}

TailEstimate fit_tail_exponent(const ShellSequence& seq, SignPattern pattern) {
    TailEstimate est;
    int lo = seq.n_max() / 2;
    std::vector<double> xs, ys;
    for (int n = lo; n <= seq.n_max(); ++n) {
        double a = seq.a(n);
        if (pattern == SignPattern::constant && a <= 0.0) {
            throw ValidationError("fit_tail_exponent: nonpositive entry under constant pattern");
        }
        double mag = std::abs(a);
        if (mag > 0.0) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(mag));
        }
    }
    if (xs.size() < 16) {
        throw ValidationError("fit_tail_exponent: need at least 16 usable tail entries");
    }
    LinearFit f = fit_linear(xs, ys);
    est.alpha_hat = 1.0 + f.slope;
    est.amplitude = std::exp(f.intercept);
    est.rms_residual = f.rms_residual;
    est.n_lo = lo;
    est.n_hi = seq.n_max();
    est.ok = f.r2 > 0.95;
    return est;
}

}  // namespace cascade
