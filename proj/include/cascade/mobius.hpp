#pragma once

#include <complex>

#include "cascade/errors.hpp"

namespace cascade {

/// Parameters of the characteristic flow at time t: tau = tanh(t).
struct MoebiusParams {
    double t = 0.0;
    double tau = 0.0;

    explicit MoebiusParams(double time);
};

/// phi_t(z) = (z - tanh t) / (1 - z tanh t). Fixes +1 and -1, maps the unit
/// disk onto itself, and sends 0 to -tanh(t).
std::complex<double> mobius_phi(const MoebiusParams& p, std::complex<double> z);

/// psi_t(z) = 1 / (1 - z tanh t).
std::complex<double> mobius_psi(const MoebiusParams& p, std::complex<double> z);

/// Inverse flow: phi_t^{-1}(z) = (z + tanh t) / (1 + z tanh t).
std::complex<double> mobius_phi_inverse(const MoebiusParams& p, std::complex<double> z);

}  // namespace cascade
