#include "cascade/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cascade/errors.hpp"
#include "cascade/fit.hpp"

namespace cascade {

std::string to_string(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::conservative: return "conservative";
        case RegimeLabel::dissipative_finite_rate: return "dissipative_finite_rate";
        case RegimeLabel::dissipative_infinite_rate: return "dissipative_infinite_rate";
        case RegimeLabel::explosive_finite_rate: return "explosive_finite_rate";
        case RegimeLabel::explosive_infinite_rate: return "explosive_infinite_rate";
        case RegimeLabel::fixed_point: return "fixed_point";
        case RegimeLabel::unclassified: return "unclassified";
    }
    return "unclassified";
}

RegimeLabel classify_regime(const std::vector<std::pair<int, double>>& flux_trace,
                            const ClassifyOptions& opts) {
    if (static_cast<int>(flux_trace.size()) < opts.min_points) {
        throw ValidationError("classify_regime: need at least " +
                              std::to_string(opts.min_points) + " flux points");
    }
    for (std::size_t i = 1; i < flux_trace.size(); ++i) {
        if (flux_trace[i].first <= flux_trace[i - 1].first) {
            throw ValidationError("classify_regime: N values must be strictly increasing");
        }
    }

    double scale = 0.0;
    for (const auto& [N, f] : flux_trace) scale = std::max(scale, std::abs(f));
    if (scale < std::numeric_limits<double>::min()) {
        // Every block derivative vanishes identically.
        return RegimeLabel::fixed_point;
    }

    // Growth fits over the tail half of the trace.
    std::size_t tail_start = flux_trace.size() / 2;
    std::vector<double> log_n, lin_n, log_f;
    int sign_pos = 0, sign_neg = 0;
    for (std::size_t i = tail_start; i < flux_trace.size(); ++i) {
        double f = flux_trace[i].second;
        if (f > 0) ++sign_pos;
        if (f < 0) ++sign_neg;
        if (std::abs(f) > 0) {
            log_n.push_back(std::log(static_cast<double>(flux_trace[i].first)));
            lin_n.push_back(static_cast<double>(flux_trace[i].first));
            log_f.push_back(std::log(std::abs(f)));
        }
    }

    LinearFit power_fit = fit_linear(log_n, log_f);
    LinearFit exp_fit = fit_linear(lin_n, log_f);
    double tail_sign = (sign_pos >= sign_neg) ? 1.0 : -1.0;
    bool signs_consistent = (sign_pos == 0 || sign_neg == 0);

    bool exponential_growth = exp_fit.n_points >= 4 && exp_fit.slope > opts.exp_slope_min &&
                              exp_fit.r2 >= opts.min_fit_r2 && exp_fit.r2 >= power_fit.r2;
    bool polynomial_growth = !exponential_growth && power_fit.n_points >= 4 &&
                             power_fit.slope > opts.gamma_infinite &&
                             power_fit.r2 >= opts.min_fit_r2;

    if (exponential_growth || polynomial_growth) {
        if (!signs_consistent) return RegimeLabel::unclassified;
        if (tail_sign > 0) return RegimeLabel::dissipative_infinite_rate;
        // Exponential growth in N can only come from data with radius of
        // convergence < 1, i.e. from a solution with a finite blow-up time.
        return exponential_growth ? RegimeLabel::explosive_finite_rate
                                  : RegimeLabel::explosive_infinite_rate;
    }

    // A clearly growing tail that fits neither model: refuse to guess.
    if (log_f.size() >= 4) {
        double first = std::exp(log_f.front());
        double last = std::exp(log_f.back());
        if (last > 4.0 * first && power_fit.r2 < opts.min_fit_r2 &&
            exp_fit.r2 < opts.min_fit_r2) {
            return RegimeLabel::unclassified;
        }
    }

    // Bounded: extrapolate the limit as the mean over the last quarter.
    std::size_t q_start = flux_trace.size() - std::max<std::size_t>(2, flux_trace.size() / 4);
    double limit = 0.0;
    for (std::size_t i = q_start; i < flux_trace.size(); ++i) limit += flux_trace[i].second;
    limit /= static_cast<double>(flux_trace.size() - q_start);

    if (std::abs(limit) < opts.zero_tol * (1.0 + scale)) return RegimeLabel::conservative;
    return limit > 0 ? RegimeLabel::dissipative_finite_rate : RegimeLabel::explosive_finite_rate;
}

}  // namespace cascade
