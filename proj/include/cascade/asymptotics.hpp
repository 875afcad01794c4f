#pragma once

#include <complex>
#include <vector>

#include "cascade/regime.hpp"
#include "cascade/shell_sequence.hpp"

namespace cascade {

/// Dominant behavior G(z) ~ A (zeta - z)^{-alpha} near z = zeta, analytic on
/// a notched wedge around it. For real coefficient sequences a complex zeta
/// stands for the conjugate pair; the amplitude is complex in general and
/// real on the real axis.
struct SingularityDescriptor {
    std::complex<double> zeta{1.0, 0.0};  // |zeta| >= 1
    double alpha = 0.5;                   // > 0, not in {0, -1, -2, ...}
    std::complex<double> amplitude{1.0, 0.0};
    double wedge_eta = 0.5;
    double wedge_theta = 0.785398163397448;  // pi/4

    void validate() const;
};

/// Predicted n-th Taylor coefficient (A/Gamma(alpha)) n^{alpha-1} zeta^{-(n+alpha)};
/// conjugate pairs sum to 2 Re[...] for off-axis zeta, and a negative real
/// zeta alternates as (-1)^n.
double transfer_coefficients(const SingularityDescriptor& d, int n);

/// Descriptor of S_t G for a singularity of G: location phi_t^{-1}(zeta),
/// the same alpha, amplitude times [((1+zeta)/2) e^t + ((1-zeta)/2) e^{-t}]^{1-2alpha}.
/// zeta = -1 is the fixed point of the flow: location unchanged, factor
/// e^{(2alpha-1)t}. alpha = 1/2 is marginal at both fixed points (factor 1).
SingularityDescriptor evolve_singularity(const SingularityDescriptor& d, double t);

/// Regime dictated by the singularity type: zeta = 1 dissipates (finite rate
/// exactly at alpha = 1/2), zeta = -1 explodes symmetrically, any other
/// on-circle or off-circle location is conservative.
RegimeLabel classify_from_descriptor(const SingularityDescriptor& d);

/// Taylor coefficients of (1/(1-z)) ((1-z)/(1+z))^alpha by series
/// multiplication (binomial series convolution plus a prefix sum).
std::vector<double> long_time_profile_coeffs(double alpha, int count);

/// Long-time pointwise profile for a zeta = -1 descriptor:
/// 2^{1-alpha} A C_{n-1}^alpha (the e^{(2alpha-1)t} factor lives in the
/// evolved amplitude).
double long_time_profile(const SingularityDescriptor& d, int n);

enum class SignPattern { constant, alternating };

struct TailEstimate {
    double alpha_hat = 0.0;   // 1 + fitted slope of log|a_n| vs log n
    double amplitude = 0.0;   // e^{intercept}
    double rms_residual = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    bool ok = false;  // fit quality flag; no silent extrapolation
};

/// Log-log regression of |a_n| against n over the tail half of the stored
/// range (minimum 16 usable points).
TailEstimate fit_tail_exponent(const ShellSequence& seq, SignPattern pattern);

}  // namespace cascade
