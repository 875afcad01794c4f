#include "cascade/shell_sequence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cascade/fit.hpp"
#include "cascade/kahan.hpp"

namespace cascade {

ShellSequence::ShellSequence(std::vector<double> values, Provenance provenance)
    : values_(std::move(values)), provenance_(provenance) {
    if (values_.empty()) throw ValidationError("ShellSequence: need n_max >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("ShellSequence: non-finite entry at n=" +
                                  std::to_string(i + 1));
        }
    }
}

double ShellSequence::a(int n) const {
    if (n == 0) return 0.0;
    if (n < 0 || n > n_max()) {
        throw ValidationError("ShellSequence: index " + std::to_string(n) +
                              " outside 1.." + std::to_string(n_max()));
    }
    return values_[static_cast<std::size_t>(n - 1)];
}

ShellSequence ShellSequence::unit_mode(int mode, int n_max) {
    if (mode < 1 || mode > n_max) throw ValidationError("unit_mode: mode outside 1..n_max");
    std::vector<double> v(static_cast<std::size_t>(n_max), 0.0);
    v[static_cast<std::size_t>(mode - 1)] = 1.0;
    return ShellSequence(std::move(v));
}

ShellSequence ShellSequence::zeros(int n_max) {
    return ShellSequence(std::vector<double>(static_cast<std::size_t>(n_max), 0.0));
}

double block_energy(const ShellSequence& seq, int M, int N) {
    if (M < 1 || M > N) throw ValidationError("block_energy: need 1 <= M <= N");
    if (N > seq.n_max()) throw ValidationError("block_energy: N exceeds n_max");
    KahanSum sum;
    for (int n = M; n <= N; ++n) {
        double an = seq.a(n);
        sum.add(an * an);
    }
    return sum.value();
}

double boundary_flux(const ShellSequence& seq, int N, const CouplingFamily& family) {
    if (N < 1) throw ValidationError("boundary_flux: need N >= 1");
    if (N + 1 > seq.n_max()) throw ValidationError("boundary_flux: need N+1 <= n_max");
    return family.c(N) * seq.a(N) * seq.a(N + 1);
}

double sobolev_norm(const ShellSequence& seq, double s) {
    KahanSum sum;
    for (int n = 1; n <= seq.n_max(); ++n) {
        double an = seq.a(n);
        sum.add(std::pow(static_cast<double>(n), 2.0 * s) * an * an);
    }
    return std::sqrt(sum.value());
}

double radius_of_convergence(const ShellSequence& seq) {
    const double inf = std::numeric_limits<double>::infinity();
    if (seq.n_max() < 16) throw ValidationError("radius_of_convergence: need n_max >= 16");
    int lo = seq.n_max() / 2;
    std::vector<double> xs, ys;
    for (int n = lo; n <= seq.n_max(); ++n) {
        double an = std::abs(seq.a(n));
        if (an > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(an));
        }
    }
    if (xs.size() < 4) return inf;  // finitely supported (or all-zero) tail
    LinearFit f = fit_linear(xs, ys);
    // limsup |a_n|^{1/n} ~ e^{slope}; super-exponential decay reads as -inf.
    if (f.slope < -30.0) return inf;
    return std::exp(-f.slope);
}

double blowup_horizon(double rho) {
    if (rho < 0.0 || std::isnan(rho)) throw ValidationError("blowup_horizon: rho must be >= 0");
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return std::atanh(rho);
}

}  // namespace cascade
