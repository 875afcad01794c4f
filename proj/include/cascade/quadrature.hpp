#pragma once

#include <functional>
#include <vector>

namespace cascade {

/// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b] to the given
/// absolute tolerance. Bisects the interval with the worst local error
/// estimate until the total is within tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_intervals = 4096);

/// Integral over [0, infinity) of a kernel that decays at least
/// exponentially: the upper limit is grown until |f(U)| < cutoff.
double integrate_decaying(const std::function<double(double)>& f, double abs_tol = 1e-12,
                          double cutoff = 1e-14);

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// Gauss-Legendre rule with q nodes; exact for polynomials of degree 2q-1.
GaussRule gauss_legendre(int q);

}  // namespace cascade
