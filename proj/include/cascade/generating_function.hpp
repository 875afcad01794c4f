#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "cascade/shell_sequence.hpp"

namespace cascade {

/// G(z) = sum_{n>=0} a_{n+1} z^n. A value is an evaluator plus everything we
/// know about where it stops being analytic: a list of singular points (kept
/// through semigroup steps) and, for truncated-coefficient data, the radius
/// the polynomial can be trusted on.
///
/// Values are immutable after construction and safe to share across threads.
class GeneratingFunction {
public:
    using Complex = std::complex<double>;
    using Evaluator = std::function<Complex(Complex)>;

    /// Closed forms for the catalog examples 1..6 (6 takes the growth
    /// parameter alpha > 1).
    static GeneratingFunction catalog(int example_id, double alpha = 0.0);

    /// Truncated power series with coefficients a_{n+1}(0) = seq values.
    static GeneratingFunction from_coefficients(ShellSequence seq);

    static GeneratingFunction from_evaluator(std::string name, Evaluator eval,
                                             std::vector<Complex> singularities);

    /// The fixed-point family A*sqrt(2/(1-z^2)).
    static GeneratingFunction fixed_point_family(double amplitude);

    /// G0(z) = z^p (unit of mass on shell p+1).
    static GeneratingFunction monomial(int p);

    Complex operator()(Complex z) const { return eval_(z); }

    /// Distance from the origin to the nearest known obstruction, i.e. the
    /// usable sampling radius for coefficient extraction. +infinity when the
    /// function is entire as far as we know.
    double radius() const;

    /// Largest t such that the semigroup can be applied: arctanh of the
    /// smallest negative-real singularity modulus (capped at 1). Singular
    /// points off the negative real axis do not block the flow.
    double horizon() const;

    const std::vector<Complex>& singularities() const { return singularities_; }
    const std::string& name() const { return name_; }

private:
    GeneratingFunction(std::string name, Evaluator eval, std::vector<Complex> singularities,
                       double trust_radius);

    std::string name_;
    Evaluator eval_;
    std::vector<Complex> singularities_;
    double trust_radius_;  // +inf unless coefficient-backed
};

/// (S_t f)(z) = psi_t(z) f(phi_t(z)) / cosh(t). Exact for closed-form
/// inputs; singular points move by phi_t^{-1} and the psi pole at 1/tanh(t)
/// joins the list. Throws HorizonError for t at or past the horizon, and
/// when a recorded singularity lands on the segment [-tanh(t), 0].
GeneratingFunction apply_semigroup(const GeneratingFunction& g0, double t);

/// max_{n <= n_max} |coeff_n(S_t S_s G0) - coeff_n(S_{t+s} G0)|.
double semigroup_compose_check(const GeneratingFunction& g0, double s, double t, int n_max);

struct AbelLimit {
    bool divergent = false;
    double g0_at_minus_one = 0.0;  // G0^+(-1), meaningful when !divergent
    double prefactor = 0.0;        // 2 * G0^+(-1): the long-time amplitude of e^t a_n(t)
};

/// Richardson-extrapolated limit of G0(x) as x -> -1 from the right along
/// the real axis, evaluated at x = -1 + 2^{-k}, k = 4..20. Divergence is a
/// tagged result, not an exception: declared when values exceed 1e12 or the
/// extrapolation diagonal fails to settle (a power singularity at -1 grows
/// too slowly on this grid to trip the cap alone).
AbelLimit abel_decay_prefactor(const GeneratingFunction& g0);

}  // namespace cascade
