#pragma once

#include <optional>
#include <vector>

#include "cascade/generating_function.hpp"
#include "cascade/shell_sequence.hpp"

namespace cascade {

struct TaylorOptions {
    int n_max = 64;
    std::optional<double> radius_hint;
    double tail_tol = 1e-10;   // aliasing tail, relative to the largest coefficient
    int max_samples = 1 << 16;
};

struct TaylorResult {
    ShellSequence coeffs;  // values[i] = coefficient of z^i, i.e. a_{i+1}
    std::vector<double> error_estimate;
    double radius_used = 0.0;
    int samples_used = 0;
};

/// Taylor coefficients of G about 0 by sampling on the circle |z| = r and a
/// discrete Fourier transform. The radius is chosen inside the known
/// analyticity radius; the sample count doubles until the top quarter of the
/// DFT window (the aliasing tail) drops below tail_tol relative to the
/// largest requested coefficient. Accuracy degrades as r^{-n}; the
/// per-coefficient error estimate reports it instead of hiding it.
TaylorResult taylor_coeffs_detailed(const GeneratingFunction& g, const TaylorOptions& opts);

ShellSequence taylor_coeffs(const GeneratingFunction& g, int n_max,
                            std::optional<double> radius_hint = {});

}  // namespace cascade
