#include "cascade/generating_function.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "cascade/extrapolate.hpp"
#include "cascade/mobius.hpp"

namespace cascade {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GeneratingFunction::GeneratingFunction(std::string name, Evaluator eval,
                                       std::vector<Complex> singularities, double trust_radius)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      singularities_(std::move(singularities)),
      trust_radius_(trust_radius) {}

GeneratingFunction GeneratingFunction::catalog(int example_id, double alpha) {
    using C = Complex;
    switch (example_id) {
        case 1:
            return GeneratingFunction("pulse", [](C) { return C(1.0, 0.0); }, {}, kInf);
        case 2:
            return GeneratingFunction(
                "sqrt_pole", [](C z) { return 1.0 / std::sqrt(1.0 - z); }, {C(1.0, 0.0)}, kInf);
        case 3:
            return GeneratingFunction(
                "geometric", [](C z) { return 1.0 / (1.0 - z); }, {C(1.0, 0.0)}, kInf);
        case 4:
            return GeneratingFunction(
                "fixed_point", [](C z) { return 1.0 / std::sqrt(1.0 - z * z); },
                {C(1.0, 0.0), C(-1.0, 0.0)}, kInf);
        case 5:
            return GeneratingFunction(
                "alternating", [](C z) { return 1.0 / (1.0 + z); }, {C(-1.0, 0.0)}, kInf);
        case 6: {
            if (!(alpha > 1.0)) {
                throw ValidationError("catalog example 6 requires alpha > 1");
            }
            return GeneratingFunction(
                "alternating_growth",
                [alpha](C z) { return alpha / (1.0 + alpha * z); }, {C(-1.0 / alpha, 0.0)},
                kInf);
        }
        default:
            throw ValidationError("catalog: example_id must be 1..6");
    }
}

GeneratingFunction GeneratingFunction::from_coefficients(ShellSequence seq) {
    double trust = kInf;
    if (seq.n_max() >= 16) trust = radius_of_convergence(seq);
    auto coeffs = seq.values();
    Evaluator eval = [coeffs](Complex z) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
        return acc;
    };
    return GeneratingFunction("coefficients", std::move(eval), {}, trust);
}

GeneratingFunction GeneratingFunction::from_evaluator(std::string name, Evaluator eval,
                                                      std::vector<Complex> singularities) {
    return GeneratingFunction(std::move(name), std::move(eval), std::move(singularities), kInf);
}

GeneratingFunction GeneratingFunction::fixed_point_family(double amplitude) {
    double a = amplitude * std::sqrt(2.0);
    return GeneratingFunction(
        "fixed_point_family",
        [a](Complex z) { return a / std::sqrt(1.0 - z * z); },
        {Complex(1.0, 0.0), Complex(-1.0, 0.0)}, kInf);
}

GeneratingFunction GeneratingFunction::monomial(int p) {
    if (p < 0) throw ValidationError("monomial: need p >= 0");
    return GeneratingFunction(
        "z^" + std::to_string(p),
        [p](Complex z) { return p == 0 ? Complex(1.0, 0.0) : std::pow(z, p); }, {}, kInf);
}

double GeneratingFunction::radius() const {
    double r = trust_radius_;
    for (const auto& zeta : singularities_) r = std::min(r, std::abs(zeta));
    return r;
}

double GeneratingFunction::horizon() const {
    double nearest = kInf;
    for (const auto& zeta : singularities_) {
        if (std::abs(zeta.imag()) < 1e-14 && zeta.real() < 0.0) {
            nearest = std::min(nearest, -zeta.real());
        }
    }
    // Coefficient-backed values know only a radius estimate; assume the
    // worst case of a negative-real singularity at that distance.
    if (singularities_.empty()) nearest = std::min(nearest, trust_radius_);
    if (nearest >= 1.0) return kInf;
    return std::atanh(nearest);
}

GeneratingFunction apply_semigroup(const GeneratingFunction& g0, double t) {
    if (t < 0.0) throw ValidationError("apply_semigroup: need t >= 0");
    if (t == 0.0) return g0;
    double horizon = g0.horizon();
    if (t >= horizon) {
        throw HorizonError("apply_semigroup: t=" + std::to_string(t) +
                           " at or beyond the horizon t*=" + std::to_string(horizon));
    }
    MoebiusParams p(t);
    for (const auto& zeta : g0.singularities()) {
        if (std::abs(zeta.imag()) < 1e-14 && zeta.real() <= 0.0 && -zeta.real() <= p.tau) {
            throw HorizonError("apply_semigroup: singularity on [-tanh(t), 0]");
        }
    }

    double inv_cosh = 1.0 / std::cosh(t);
    GeneratingFunction::Evaluator eval = [g0, p, inv_cosh](GeneratingFunction::Complex z) {
        return inv_cosh * mobius_psi(p, z) * g0(mobius_phi(p, z));
    };

    std::vector<GeneratingFunction::Complex> sings;
    sings.reserve(g0.singularities().size() + 1);
    for (const auto& zeta : g0.singularities()) sings.push_back(mobius_phi_inverse(p, zeta));
    sings.emplace_back(1.0 / p.tau, 0.0);

    GeneratingFunction out = GeneratingFunction::from_evaluator(
        "S_" + std::to_string(t) + "[" + g0.name() + "]", std::move(eval), std::move(sings));
    return out;
}

namespace {

// One Aitken delta-squared sweep; removes a single geometric error mode of
// unknown ratio (e.g. the (1+x)^{1/2} approach of a half-power expansion).
std::vector<double> aitken_sweep(const std::vector<double>& v) {
    if (v.size() < 3) return v;
    std::vector<double> w;
    w.reserve(v.size() - 2);
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
        double d1 = v[i + 1] - v[i];
        double d2 = v[i + 2] - v[i + 1];
        double denom = d2 - d1;
        if (std::abs(denom) < 1e-300) {
            w.push_back(v[i + 2]);
        } else {
            w.push_back(v[i + 2] - d2 * d2 / denom);
        }
    }
    return w;
}

}  // namespace

AbelLimit abel_decay_prefactor(const GeneratingFunction& g0) {
    AbelLimit out;
    std::vector<double> v;
    v.reserve(17);
    for (int k = 4; k <= 20; ++k) {
        double x = -1.0 + std::ldexp(1.0, -k);
        double val = g0(GeneratingFunction::Complex(x, 0.0)).real();
        if (!std::isfinite(val) || std::abs(val) > 1e12) {
            out.divergent = true;
            return out;
        }
        v.push_back(val);
    }
    // Monotone geometric growth means a genuine singularity at -1.
    bool monotone_growth = true;
    for (std::size_t i = v.size() - 6; i + 1 < v.size(); ++i) {
        if (std::abs(v[i + 1]) <= std::abs(v[i])) monotone_growth = false;
    }
    if (monotone_growth && std::abs(v.back()) > 3.0 * std::abs(v[v.size() - 6])) {
        out.divergent = true;
        return out;
    }
    std::vector<double> window(v.end() - 8, v.end());
    ExtrapolationResult rich = richardson_geometric(window, 2.0, 1e-6);
    double limit = 0.0;
    bool have_limit = false;
    if (rich.converged) {
        limit = rich.value;
        have_limit = true;
    } else {
        // Fractional-power approaches defeat the integer-power tableau; two
        // Aitken sweeps handle a geometric error of unknown ratio.
        std::vector<double> w = aitken_sweep(aitken_sweep(std::vector<double>(v.end() - 10, v.end())));
        if (w.size() >= 2 &&
            std::abs(w.back() - w[w.size() - 2]) <= 1e-6 * (1.0 + std::abs(w.back()))) {
            limit = w.back();
            have_limit = true;
        }
    }
    if (have_limit) {
        // A settled extrapolation is only trusted if the raw samples are in
        // fact approaching it (a slowly diverging power can otherwise fool
        // Aitken into reporting its finite part).
        for (std::size_t i = v.size() - 4; i + 1 < v.size(); ++i) {
            if (std::abs(v[i + 1] - limit) > std::abs(v[i] - limit) + 1e-12) {
                have_limit = false;
                break;
            }
        }
    }
    if (!have_limit) {
        out.divergent = true;
        return out;
    }
    out.g0_at_minus_one = limit;
    out.prefactor = 2.0 * limit;
    return out;
}

}  // namespace cascade
