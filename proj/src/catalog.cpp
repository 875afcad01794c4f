#include "cascade/catalog.hpp"

#include <cmath>
#include <string>

#include "cascade/generating_function.hpp"
#include "cascade/kahan.hpp"
#include "cascade/taylor.hpp"

namespace cascade {

namespace {

void check_example_args(int example_id, double t, double alpha) {
    if (example_id < 1 || example_id > 6) {
        throw ValidationError("example_id must be 1..6");
    }
    if (t < 0.0) throw ValidationError("need t >= 0");
    if (example_id == 6) {
        if (!(alpha > 1.0)) throw ValidationError("example 6 requires alpha > 1");
        double t_star = std::atanh(1.0 / alpha);
        if (t >= t_star) {
            throw HorizonError("example 6: t=" + std::to_string(t) +
                               " at or beyond t*=" + std::to_string(t_star));
        }
    }
}

}  // namespace

double central_binomial_ratio(int k) {
    if (k < 0) throw ValidationError("central_binomial_ratio: need k >= 0");
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c *= (2.0 * j - 1.0) / (2.0 * j);
    return c;
}

std::vector<double> central_binomial_ratios(int count) {
    std::vector<double> c(static_cast<std::size_t>(count));
    double v = 1.0;
    for (int k = 0; k < count; ++k) {
        c[static_cast<std::size_t>(k)] = v;
        v *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
    return c;
}

double closed_form_example(int example_id, int n, double t, double alpha) {
    check_example_args(example_id, t, alpha);
    if (n < 1) throw ValidationError("need n >= 1");
    double tau = std::tanh(t);
    switch (example_id) {
        case 1:
            return std::pow(tau, n - 1) / std::cosh(t);
        case 2: {
            // a_n(t) = e^{-t/2}/sqrt(cosh t) * sum_m c_{n-1-m} c_m tau^{n-1-m}
            std::vector<double> c = central_binomial_ratios(n);
            KahanSum sum;
            for (int m = 0; m <= n - 1; ++m) {
                sum.add(c[static_cast<std::size_t>(n - 1 - m)] * c[static_cast<std::size_t>(m)] *
                        std::pow(tau, n - 1 - m));
            }
            return std::exp(-0.5 * t) / std::sqrt(std::cosh(t)) * sum.value();
        }
        case 3:
            return std::exp(-t);
        case 4:
            return (n % 2 == 1) ? central_binomial_ratio((n - 1) / 2) : 0.0;
        case 5:
            return (n % 2 == 1 ? 1.0 : -1.0) * std::exp(t);
        case 6: {
            // a_n(t) = (-1)^{n+1} alpha q^{n-1} / (cosh t - alpha sinh t) with
            // q = (alpha cosh - sinh)/(cosh - alpha sinh); q(0) = alpha. The
            // per-mode ratio grows with t and diverges at t* = arctanh(1/alpha).
            double denom = std::cosh(t) - alpha * std::sinh(t);
            double q = (alpha * std::cosh(t) - std::sinh(t)) / denom;
            double sign = (n % 2 == 1) ? 1.0 : -1.0;
            double log_mag = std::log(alpha) + (n - 1) * std::log(q);
            if (log_mag > 700.0) {
                throw NumericalError("example 6: coefficient overflows double range");
            }
            return sign * std::exp(log_mag) / denom;
        }
        default:
            return 0.0;  // unreachable
    }
}

ShellSequence example_state(int example_id, int n_max, double t, double alpha) {
    if (n_max < 1) throw ValidationError("need n_max >= 1");
    std::vector<double> v(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        v[static_cast<std::size_t>(n - 1)] = closed_form_example(example_id, n, t, alpha);
    }
    return ShellSequence(std::move(v), Provenance::closed_form_sampled);
}

ShellSequence example_initial_state(int example_id, int n_max, double alpha) {
    return example_state(example_id, n_max, 0.0, alpha);
}

ShellSequence fixed_point_coeffs(double A, int n_max) {
    if (n_max < 1) throw ValidationError("need n_max >= 1");
    std::vector<double> v(static_cast<std::size_t>(n_max), 0.0);
    double scale = A * std::sqrt(2.0);
    double c = 1.0;
    for (int k = 0; 2 * k + 1 <= n_max; ++k) {
        v[static_cast<std::size_t>(2 * k)] = scale * c;
        c *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
    return ShellSequence(std::move(v), Provenance::closed_form_sampled);
}

double crest_index(double t) { return 0.25 * std::exp(2.0 * t); }

ShiftedMassValue shifted_mass_solution(int p, int n, double t) {
    if (p < 0) throw ValidationError("shifted_mass_solution: need p >= 0");
    if (n < 1) throw ValidationError("shifted_mass_solution: need n >= 1");
    if (t < 0.0) throw ValidationError("shifted_mass_solution: need t >= 0");

    ShiftedMassValue out;
    const int m = n - 1;  // z-power of a_n
    if (t == 0.0) {
        out.value = (n == p + 1) ? 1.0 : 0.0;
        out.beta_bound = 0.0;
        out.beta_actual = 0.0;
        return out;
    }

    GeneratingFunction g = apply_semigroup(GeneratingFunction::monomial(p), t);
    TaylorOptions topts;
    topts.n_max = n;
    TaylorResult extracted = taylor_coeffs_detailed(g, topts);
    out.value = extracted.coeffs.a(n);

    double tau = std::tanh(t);
    double cosh_t = std::cosh(t);
    double leading_sign = (p % 2 == 0) ? 1.0 : -1.0;
    int xi = p - std::min(p, m);
    int tail_pow = m - p + xi;
    double leading = leading_sign * std::pow(tau, m + p);
    double tau_tail = std::pow(tau, tail_pow);
    out.beta_actual = (out.value * cosh_t - leading) / tau_tail;
    if (m >= p) {
        out.beta_bound = std::pow(static_cast<double>(m), p) * (1.0 - std::pow(tau, 2 * p));
    } else {
        out.beta_bound = std::pow(static_cast<double>(m), p) * std::pow(tau, p - m) *
                         (1.0 - std::pow(tau, 2 * m));
    }
    // Extraction error is amplified by tau^{-tail_pow}; allow for it before
    // declaring the decomposition violated.
    double slack = 10.0 * (extracted.error_estimate[static_cast<std::size_t>(n - 1)] + 1e-14) *
                       cosh_t / tau_tail +
                   1e-12;
    if (std::abs(out.beta_actual) > out.beta_bound * (1.0 + 1e-9) + slack) {
        throw NumericalError("shifted_mass_solution: remainder exceeds its bound");
    }
    return out;
}

}  // namespace cascade
