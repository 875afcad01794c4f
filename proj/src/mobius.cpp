#include "cascade/mobius.hpp"

#include <cmath>

namespace cascade {

MoebiusParams::MoebiusParams(double time) : t(time), tau(std::tanh(time)) {
    if (!(time >= 0.0)) throw ValidationError("MoebiusParams: need t >= 0");
}

static std::complex<double> denominator(double tau, std::complex<double> z) {
    std::complex<double> d = 1.0 - z * tau;
    if (std::abs(d) < 1e-12) {
        throw NumericalError("mobius: evaluation too close to the pole z = 1/tanh(t)");
    }
    return d;
}

std::complex<double> mobius_phi(const MoebiusParams& p, std::complex<double> z) {
    return (z - p.tau) / denominator(p.tau, z);
}

std::complex<double> mobius_psi(const MoebiusParams& p, std::complex<double> z) {
    return 1.0 / denominator(p.tau, z);
}

std::complex<double> mobius_phi_inverse(const MoebiusParams& p, std::complex<double> z) {
    std::complex<double> d = 1.0 + z * p.tau;
    if (std::abs(d) < 1e-12) {
        throw NumericalError("mobius: inverse evaluation too close to the pole");
    }
    return (z + p.tau) / d;
}

}  // namespace cascade
