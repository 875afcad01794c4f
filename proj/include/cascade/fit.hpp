#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cascade {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;            // coefficient of determination
    double rms_residual = 0.0;
    std::size_t n_points = 0;
};

inline LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit f;
    f.n_points = x.size();
    if (x.size() < 2 || x.size() != y.size()) return f;
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
        double d = y[i] - ybar;
        ss_tot += d * d;
    }
    f.rms_residual = std::sqrt(ss_res / n);
    f.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace cascade
