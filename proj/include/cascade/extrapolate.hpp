#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cascade {

struct ExtrapolationResult {
    double value = 0.0;
    double error_estimate = 0.0;  // change over the last diagonal step
    bool converged = false;
};

/// Richardson tableau for samples v_k taken at geometrically shrinking steps
/// h_k = h_0 * ratio^{-k} (ratio > 1), assuming an error expansion in integer
/// powers of h.
inline ExtrapolationResult richardson_geometric(const std::vector<double>& v, double ratio,
                                                double rel_tol = 1e-9) {
    ExtrapolationResult out;
    if (v.empty()) return out;
    std::vector<std::vector<double>> t(v.size());
    t[0] = v;
    for (std::size_t j = 1; j < v.size(); ++j) {
        t[j].resize(v.size() - j);
        double p = std::pow(ratio, static_cast<double>(j));
        for (std::size_t i = 0; i + j < v.size(); ++i) {
            t[j][i] = (p * t[j - 1][i + 1] - t[j - 1][i]) / (p - 1.0);
        }
    }
    double best = t[v.size() - 1][0];
    double prev = (v.size() >= 2) ? t[v.size() - 2][0] : v[0];
    out.value = best;
    out.error_estimate = std::abs(best - prev);
    out.converged = out.error_estimate <= rel_tol * (1.0 + std::abs(best));
    return out;
}

/// Neville polynomial extrapolation of a sequence q_n to n = infinity,
/// treating the limit as the value at x = 0 of q(1/n). Suited to tails with
/// an error expansion in powers of 1/n.
inline ExtrapolationResult extrapolate_in_inverse_n(const std::vector<double>& q,
                                                    const std::vector<double>& n,
                                                    std::size_t use_last = 5) {
    ExtrapolationResult out;
    if (q.size() != n.size() || q.empty()) return out;
    std::size_t m = std::min(use_last, q.size());
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = 1.0 / n[n.size() - m + i];
        y[i] = q[q.size() - m + i];
    }
    std::vector<double> p = y;
    double prev = p[0];
    for (std::size_t j = 1; j < m; ++j) {
        prev = p[0];
        for (std::size_t i = 0; i + j < m; ++i) {
            // Neville update evaluated at x = 0
            p[i] = (x[i] * p[i + 1] - x[i + j] * p[i]) / (x[i] - x[i + j]);
        }
    }
    out.value = p[0];
    out.error_estimate = std::abs(p[0] - prev);
    out.converged = true;
    return out;
}

}  // namespace cascade
