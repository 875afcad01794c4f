#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cascade {

/// Regime taxonomy for the boundary-flux limit N -> infinity. The flux is
/// c_N a_N a_{N+1}, whose negative drives the block energy over 1..N:
/// positive flux drains energy outward (dissipation), negative flux pumps
/// energy in from infinity (explosion).
enum class RegimeLabel {
    conservative,
    dissipative_finite_rate,
    dissipative_infinite_rate,
    explosive_finite_rate,
    explosive_infinite_rate,
    fixed_point,
    unclassified,
};

std::string to_string(RegimeLabel label);

/// Conserving regimes are those whose flux limit vanishes; a fixed point is
/// the degenerate member with every block derivative exactly zero.
inline bool is_conserving(RegimeLabel label) {
    return label == RegimeLabel::conservative || label == RegimeLabel::fixed_point;
}

struct ClassifyOptions {
    double zero_tol = 1e-6;        // conservative when |limit| < zero_tol*(1+max|flux|)
    double gamma_infinite = 0.5;   // |flux| ~ N^gamma with gamma above this => infinite rate
    double exp_slope_min = 0.02;   // exponential-in-N growth detection threshold
    double min_fit_r2 = 0.8;       // below this on a growing tail => unclassified
    int min_points = 8;
};

/// Classify a flux trace (N_i, flux_i) sampled at one fixed time.
///
/// Bounded traces are classified by the extrapolated limit: ~0 conservative,
/// positive dissipative, negative explosive (a bounded nonzero limit is a
/// finite rate). Unbounded traces growing polynomially in N carry an
/// infinite rate; unbounded traces growing exponentially in N can only come
/// from data with radius of convergence < 1, i.e. a finite blow-up time, and
/// are labelled explosive_finite_rate on the negative side. An identically
/// zero trace means every block conserves exactly: fixed_point.
RegimeLabel classify_regime(const std::vector<std::pair<int, double>>& flux_trace,
                            const ClassifyOptions& opts = {});

}  // namespace cascade
