#pragma once

#include <vector>

#include "cascade/shell_sequence.hpp"

namespace cascade {

/// Closed-form solutions of the six exactly solvable initial conditions of
/// model A:
///   1  unit mass on shell 1: an energy-conserving outgoing pulse
///   2  a_n(0) ~ 1/sqrt(pi n): dissipative, finite rate
///   3  a_n(0) = 1: dissipative, infinite rate
///   4  odd-shell central-binomial data: a fixed point
///   5  a_n(0) = (-1)^{n+1}: explosive, blows up only at t = infinity
///   6  a_n(0) = (-1)^{n+1} alpha^n, alpha > 1: blows up at arctanh(1/alpha)
double closed_form_example(int example_id, int n, double t, double alpha = 0.0);

/// Initial data (t = 0) of the example, truncated at n_max.
ShellSequence example_initial_state(int example_id, int n_max, double alpha = 0.0);

/// Full state of the example at time t, truncated at n_max.
ShellSequence example_state(int example_id, int n_max, double t, double alpha = 0.0);

/// (2k)! / (4^k (k!)^2), computed by the stable ratio recurrence.
double central_binomial_ratio(int k);
std::vector<double> central_binomial_ratios(int count);

/// Coefficients of A*sqrt(2/(1-z^2)): entries A*sqrt(2)*central_binomial(k)
/// on shells 2k+1, zero on even shells.
ShellSequence fixed_point_coeffs(double A, int n_max);

/// Shell index cresting at time t for the example-1 pulse (~ exp(2t)/4);
/// truncations should keep n_max well past this front.
double crest_index(double t);

struct ShiftedMassValue {
    double value = 0.0;       // a_n(t) for G0(z) = z^p
    double beta_bound = 0.0;  // bound on the subleading coefficient
    double beta_actual = 0.0;
};

/// Solution with a unit of mass initially on shell p+1: the leading term is
/// the shifted pulse (-1)^p tanh^{m+p}/cosh at z-power m = n-1, and the
/// remainder coefficient beta_m is checked against its bound.
ShiftedMassValue shifted_mass_solution(int p, int n, double t);

}  // namespace cascade
