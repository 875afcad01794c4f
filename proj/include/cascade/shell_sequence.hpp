#pragma once

#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

enum class Provenance { explicit_values, closed_form_sampled, integrated };

/// Truncated shell state (a_1, ..., a_{n_max}). Entries are 1-indexed to
/// match the mode numbering; the virtual boundary entry a_0 is always zero.
class ShellSequence {
public:
    ShellSequence() = default;
    explicit ShellSequence(std::vector<double> values,
                           Provenance provenance = Provenance::explicit_values);

    int n_max() const { return static_cast<int>(values_.size()); }
    Provenance provenance() const { return provenance_; }

    /// a_n for n in [0, n_max]; a(0) == 0 by the boundary condition.
    double a(int n) const;

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }

    static ShellSequence unit_mode(int mode, int n_max);
    static ShellSequence zeros(int n_max);

private:
    std::vector<double> values_;
    Provenance provenance_ = Provenance::explicit_values;
};

enum class CouplingKind { model_a, model_b };

/// Nearest-neighbor coupling coefficients: c_n = n for model A and
/// c_n = n(n + 1/2) for model B. Both are positive and strictly increasing.
struct CouplingFamily {
    CouplingKind kind = CouplingKind::model_a;

    double c(int n) const {
        if (n <= 0) return 0.0;
        double x = static_cast<double>(n);
        return kind == CouplingKind::model_a ? x : x * (x + 0.5);
    }

    static CouplingFamily model_a() { return {CouplingKind::model_a}; }
    static CouplingFamily model_b() { return {CouplingKind::model_b}; }
};

struct EnergyReport {
    double block_energy = 0.0;
    int M = 1;
    int N = 1;
    double flux_at_N = 0.0;
    double time = 0.0;
};

/// Sum of squares over the block M..N, accumulated in increasing n with
/// compensated summation.
double block_energy(const ShellSequence& seq, int M, int N);

/// c_N * a_N * a_{N+1}; its negative is d/dt of the half block energy over
/// modes 1..N.
double boundary_flux(const ShellSequence& seq, int N, const CouplingFamily& family);

/// sqrt(sum n^{2s} a_n^2) over the stored entries.
double sobolev_norm(const ShellSequence& seq, double s);

/// Estimate of the power-series radius of convergence of sum a_n z^n via
/// regression of log|a_n| on n over the last half of the stored range
/// (zero entries skipped). Returns +infinity for (effectively) finitely
/// supported data.
double radius_of_convergence(const ShellSequence& seq);

/// t* = arctanh(min(rho, 1)); +infinity when rho >= 1.
double blowup_horizon(double rho);

}  // namespace cascade
