#pragma once

namespace cascade {

/// Compensated (Kahan) accumulator. Summation order is the caller's:
/// diagnostics sum in increasing n so results are reproducible across
/// platforms.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace cascade
