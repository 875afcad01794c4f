#pragma once

#include <cstdint>

#include "cascade/model_b.hpp"

namespace cascade {

struct SdePath {
    double x_end = 0.0;
    double weight = 1.0;  // exp(-1/2 int_0^t X^2 ds), in (0, 1]
};

/// Euler-Maruyama path of dX = -X^3 dt + (1/sqrt 2) sqrt(1-X^4) dW with
/// post-step clamping to [-1, 1] (the boundaries are entrance boundaries;
/// excursions are O(sqrt(dt))). The weight accumulates X^2 by the midpoint
/// rule along the path.
SdePath simulate_sde(double x0, double t, double dt, std::uint64_t seed);

struct FeynmanKacEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_paths = 0;
};

/// H(x,t) = E_x[ H0(X(t)) exp(-1/2 int_0^t X^2 ds) ] by Monte Carlo with
/// antithetic increment pairing. The pairing makes the x = 0 estimate
/// exactly zero (odd H0, symmetric dynamics). t = 0 returns H0(x) with zero
/// standard error.
FeynmanKacEstimate feynman_kac_H(const OddSeriesFunction& h0, double x, double t, long n_paths,
                                 double dt, std::uint64_t seed);

}  // namespace cascade
