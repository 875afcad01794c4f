#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cascade/shell_sequence.hpp"

namespace cascade {

/// Action of the generator on odd monomials:
/// L x^{2n-1} = -n(n+1/2) x^{2n+1} + (n-1)(n-1/2) x^{2n-3}.
/// Returns (coefficient to x^{2n+1}, coefficient to x^{2n-3}).
std::pair<double, double> generator_apply(int n);

/// H(x) = sum_n (-1)^{n+1} b_n x^{2n-1}, odd by construction. Backed either
/// by a finite stored sequence (summed exactly) or by a coefficient
/// generator for infinite data like b_n = 1/n^2; generator-backed series
/// are summed directly where the powers decay fast and by alternating-series
/// acceleration near |x| = 1 (valid for positive, eventually decreasing
/// coefficients, which is the eq. class the artifact uses).
class OddSeriesFunction {
public:
    static OddSeriesFunction from_sequence(ShellSequence b);
    static OddSeriesFunction from_generator(std::function<double(int)> b_of_n, std::string name);

    double operator()(double x) const;
    double coeff(int n) const;  // b_n
    int stored_n_max() const { return seq_ ? seq_->n_max() : 0; }
    const std::string& name() const { return name_; }

    /// Cauchy test on partial sums of sum (-1)^n b_n over doubling windows.
    bool alternating_tail_ok(int probe_n = 4096, double tol = 1e-6) const;

private:
    std::shared_ptr<const ShellSequence> seq_;
    std::function<double(int)> gen_;
    std::string name_;
};

struct EigenPair {
    double lambda = 0.0;
    std::vector<double> p;  // p[i] = p_{i+1}; L2-normalized eigenfunction, p_1 > 0
};

/// Galerkin discretization of -L f = 1/4 ((1-x^4) f')' - (x^2/2) f on odd
/// polynomials up to degree 2 n_basis - 1 over L2[-1,1]. The basis is the
/// odd normalized Legendre family, so the weak form
///   1/4 int (1-x^4) phi' psi' + 1/2 int x^2 phi psi = lambda int phi psi
/// is an ordinary symmetric eigenproblem; matrix elements use Gauss rules
/// that integrate the polynomial integrands exactly. Entrance behavior at
/// x = +-1 is natural in the weak form (no boundary constraint imposed).
///
/// Construction also solves at 2 n_basis for a two-resolution convergence
/// estimate and throws if lambda_1 moves by more than 1e-6.
class EigenBasis {
public:
    explicit EigenBasis(int n_basis);

    int n_basis() const { return n_basis_; }
    double lambda(int k) const;        // k = 1-based, ascending
    double lambda_shift(int k) const;  // |lambda_k(n) - lambda_k(2n)|

    double phi(int k, double x) const;
    double phi_prime(int k, double x) const;
    std::complex<double> phi(int k, std::complex<double> z) const;

    /// (L + lambda_k) phi_k in L2 by exact quadrature.
    double residual_l2(int k) const;

    /// Eigencoefficients extended by the stable forward recurrence; exact
    /// scaling comes from p_1 = phi_k'(0).
    std::vector<double> p_from_recurrence(int k, int len) const;

    /// Independent route: monomial coefficients of the degree-(2n_basis-1)
    /// Galerkin polynomial, read off a complex circle.
    std::vector<double> p_from_galerkin(int k, int len) const;

    EigenPair pair(int k, int len) const;

    /// h_k = int H0 phi_k dx on a dense Gauss rule.
    double project(const OddSeriesFunction& h0, int k) const;

    /// d_k = int phi_k x^m dx (exact quadrature).
    double moment(int k, int m) const;

private:
    int n_basis_;
    std::vector<double> lambdas_;
    std::vector<double> shifts_;
    std::vector<std::vector<double>> vectors_;  // [k][j]: odd Legendre coefficients
};

/// p_{n+1} = (lambda p_n + (n-1)(n-1/2) p_{n-1}) / (n(n+1/2)), p_0 = 0,
/// p_1 = 1. For lambda in the spectrum this is the eigencoefficient
/// sequence; n p_n converges to a nonzero constant of the sign of p_1.
std::vector<double> coefficient_recurrence(double lambda, int n_max);

struct NpLimits {
    double c_odd = 0.0;   // lim (2n+1) p_{2n+1}
    double c_even = 0.0;  // lim (2n) p_{2n}
};

/// Richardson-extrapolated limits of (2n+1)p_{2n+1} and (2n)p_{2n}; throws
/// on a non-Cauchy tail.
NpLimits np_limit_estimate(const std::vector<double>& p);

struct EvolveResult {
    ShellSequence b;                  // b_n(t), n = 1..n_out
    std::vector<double> projections;  // h_k, k = 1..n_modes
    bool truncation_warning = false;  // |h_{n_modes}| not negligible
};

/// Spectral evolution b_n(t) = sum_k h_k e^{-lambda_k t} p_n^k.
EvolveResult evolve_b(const EigenBasis& basis, const OddSeriesFunction& h0, double t,
                      int n_modes, int n_out);

/// Steady state under constant forcing on shell m (m odd):
/// b_n* = sum_k d_k p_n^k / lambda_k. Even m projects to zero on the odd
/// eigenfunctions and is rejected loudly.
ShellSequence forced_steady_state_b(const EigenBasis& basis, int m, int n_max, int n_modes = 0);

/// Stationary covariance under white-noise forcing on shell m_force:
/// sum_{k,k'} d_k d_{k'} p_n^k p_m^{k'} / (lambda_k + lambda_{k'}).
double stochastic_steady_covariance_b(const EigenBasis& basis, int n, int m, int n_modes,
                                      int m_force = 1);

}  // namespace cascade
