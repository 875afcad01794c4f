#include "cascade/model_b.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cascade/extrapolate.hpp"
#include "cascade/kahan.hpp"
#include "cascade/quadrature.hpp"

namespace cascade {

namespace {

// P_0..P_D at x (works for real and complex arguments)
template <typename T>
void legendre_values(int degree_max, T x, std::vector<T>& p) {
    p.resize(static_cast<std::size_t>(degree_max + 1));
    p[0] = T(1);
    if (degree_max >= 1) p[1] = x;
    for (int d = 2; d <= degree_max; ++d) {
        p[static_cast<std::size_t>(d)] = ((2.0 * d - 1.0) * x * p[static_cast<std::size_t>(d - 1)] -
                                          (d - 1.0) * p[static_cast<std::size_t>(d - 2)]) /
                                         static_cast<double>(d);
    }
}

// (1-x^2) P_d' = d (P_{d-1} - x P_d); valid for |x| < 1
void legendre_derivatives(int degree_max, double x, const std::vector<double>& p,
                          std::vector<double>& dp) {
    dp.resize(static_cast<std::size_t>(degree_max + 1));
    double one_minus = 1.0 - x * x;
    dp[0] = 0.0;
    for (int d = 1; d <= degree_max; ++d) {
        dp[static_cast<std::size_t>(d)] =
            d * (p[static_cast<std::size_t>(d - 1)] - x * p[static_cast<std::size_t>(d)]) /
            one_minus;
    }
}

double norm_factor(int degree) { return std::sqrt((2.0 * degree + 1.0) / 2.0); }

// Galerkin matrix of the (positive) form 1/4 (1-x^4) u'v' + 1/2 x^2 uv on
// the odd normalized Legendre family.
void solve_galerkin(int n_basis, std::vector<double>& lambdas,
                    std::vector<std::vector<double>>& vectors) {
    const int degree_max = 2 * n_basis - 1;
    GaussRule rule = gauss_legendre(2 * n_basis + 4);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_basis, n_basis);
    std::vector<double> p, dp, phi(static_cast<std::size_t>(n_basis)),
        dphi(static_cast<std::size_t>(n_basis));
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = rule.nodes[q];
        double w = rule.weights[q];
        legendre_values(degree_max, x, p);
        legendre_derivatives(degree_max, x, p, dp);
        for (int j = 0; j < n_basis; ++j) {
            int d = 2 * j + 1;
            double nf = norm_factor(d);
            phi[static_cast<std::size_t>(j)] = nf * p[static_cast<std::size_t>(d)];
            dphi[static_cast<std::size_t>(j)] = nf * dp[static_cast<std::size_t>(d)];
        }
        double x2 = x * x;
        double stiff = 0.25 * (1.0 - x2 * x2) * w;
        double pot = 0.5 * x2 * w;
        for (int i = 0; i < n_basis; ++i) {
            for (int j = i; j < n_basis; ++j) {
                a(i, j) += stiff * dphi[static_cast<std::size_t>(i)] *
                               dphi[static_cast<std::size_t>(j)] +
                           pot * phi[static_cast<std::size_t>(i)] *
                               phi[static_cast<std::size_t>(j)];
            }
        }
    }
    for (int i = 0; i < n_basis; ++i) {
        for (int j = 0; j < i; ++j) a(i, j) = a(j, i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen_solve: dense symmetric solve failed");
    }
    lambdas.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n_basis);
    vectors.assign(static_cast<std::size_t>(n_basis), std::vector<double>());
    for (int k = 0; k < n_basis; ++k) {
        vectors[static_cast<std::size_t>(k)].assign(solver.eigenvectors().col(k).data(),
                                                    solver.eigenvectors().col(k).data() + n_basis);
    }
}

// sum_{k>=0} (-1)^k a(k) for positive, (near-)totally-monotone a; error
// decays like (3+sqrt(8))^{-K}.
double cvz_alternating(const std::function<double(int)>& a, int terms) {
    double d = std::pow(3.0 + std::sqrt(8.0), terms);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < terms; ++k) {
        c = b - c;
        s += c * a(k);
        b = (k + terms) * (k - terms) * b / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

}  // namespace

std::pair<double, double> generator_apply(int n) {
    if (n < 1) throw ValidationError("generator_apply: need n >= 1");
    double up = -static_cast<double>(n) * (n + 0.5);
    double down = static_cast<double>(n - 1) * (n - 0.5);
    return {up, down};
}

OddSeriesFunction OddSeriesFunction::from_sequence(ShellSequence b) {
    OddSeriesFunction f;
    f.seq_ = std::make_shared<ShellSequence>(std::move(b));
    f.name_ = "sequence";
    return f;
}

OddSeriesFunction OddSeriesFunction::from_generator(std::function<double(int)> b_of_n,
                                                    std::string name) {
    OddSeriesFunction f;
    f.gen_ = std::move(b_of_n);
    f.name_ = std::move(name);
    return f;
}

double OddSeriesFunction::coeff(int n) const {
    if (n < 1) throw ValidationError("OddSeriesFunction: need n >= 1");
    if (seq_) return n <= seq_->n_max() ? seq_->a(n) : 0.0;
    return gen_(n);
}

double OddSeriesFunction::operator()(double x) const {
    if (x == 0.0) return 0.0;
    double y = std::abs(x);
    double sign = x > 0 ? 1.0 : -1.0;
    if (y > 1.0) throw ValidationError("OddSeriesFunction: |x| must be <= 1");
    if (seq_) {
        // exact finite sum, highest power first
        double y2 = y * y;
        double acc = 0.0;
        for (int n = seq_->n_max(); n >= 1; --n) {
            acc = acc * y2 + ((n % 2 == 1) ? 1.0 : -1.0) * seq_->a(n);
        }
        return sign * acc * y;
    }
    if (y <= 0.75) {
        // geometric decay: direct sum with a y^{2n} tail cap
        KahanSum acc;
        double power = y;
        for (int n = 1; n <= 400; ++n) {
            double term = ((n % 2 == 1) ? 1.0 : -1.0) * gen_(n) * power;
            acc.add(term);
            power *= y * y;
            if (std::abs(gen_(n)) * power < 1e-18) break;
        }
        return sign * acc.value();
    }
    double val = cvz_alternating([this, y](int k) { return gen_(k + 1) * std::pow(y, 2 * k + 1); },
                                 48);
    return sign * val;
}

bool OddSeriesFunction::alternating_tail_ok(int probe_n, double tol) const {
    int limit = seq_ ? seq_->n_max() : probe_n;
    double running = 0.0;
    double window_amp = 0.0;
    for (int start = 8; start < limit; start *= 2) {
        int stop = std::min(2 * start, limit);
        double lo = 0.0, hi = 0.0;
        running = 0.0;
        for (int n = start; n < stop; ++n) {
            running += ((n % 2 == 0) ? 1.0 : -1.0) * coeff(n);
            lo = std::min(lo, running);
            hi = std::max(hi, running);
        }
        window_amp = hi - lo;
    }
    return window_amp <= tol;
}

EigenBasis::EigenBasis(int n_basis) : n_basis_(n_basis) {
    if (n_basis < 8) throw ValidationError("EigenBasis: need n_basis >= 8");
    solve_galerkin(n_basis, lambdas_, vectors_);

    std::vector<double> lambdas_fine;
    std::vector<std::vector<double>> vectors_fine;
    solve_galerkin(2 * n_basis, lambdas_fine, vectors_fine);
    shifts_.resize(static_cast<std::size_t>(n_basis));
    for (int k = 0; k < n_basis; ++k) {
        shifts_[static_cast<std::size_t>(k)] =
            std::abs(lambdas_[static_cast<std::size_t>(k)] -
                     lambdas_fine[static_cast<std::size_t>(k)]);
    }
    if (shifts_[0] > 1e-6) {
        throw NumericalError("EigenBasis: lambda_1 not converged at this n_basis");
    }

    // orient every eigenfunction so p_1 = phi'(0) > 0
    for (int k = 1; k <= n_basis; ++k) {
        if (phi_prime(k, 0.0) < 0.0) {
            for (double& c : vectors_[static_cast<std::size_t>(k - 1)]) c = -c;
        }
    }
}

double EigenBasis::lambda(int k) const {
    if (k < 1 || k > n_basis_) throw ValidationError("EigenBasis: mode index out of range");
    return lambdas_[static_cast<std::size_t>(k - 1)];
}

double EigenBasis::lambda_shift(int k) const {
    if (k < 1 || k > n_basis_) throw ValidationError("EigenBasis: mode index out of range");
    return shifts_[static_cast<std::size_t>(k - 1)];
}

double EigenBasis::phi(int k, double x) const {
    if (k < 1 || k > n_basis_) throw ValidationError("EigenBasis: mode index out of range");
    std::vector<double> p;
    legendre_values(2 * n_basis_ - 1, x, p);
    const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
    double acc = 0.0;
    for (int j = 0; j < n_basis_; ++j) {
        int d = 2 * j + 1;
        acc += v[static_cast<std::size_t>(j)] * norm_factor(d) * p[static_cast<std::size_t>(d)];
    }
    return acc;
}

std::complex<double> EigenBasis::phi(int k, std::complex<double> z) const {
    if (k < 1 || k > n_basis_) throw ValidationError("EigenBasis: mode index out of range");
    std::vector<std::complex<double>> p;
    legendre_values(2 * n_basis_ - 1, z, p);
    const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < n_basis_; ++j) {
        int d = 2 * j + 1;
        acc += v[static_cast<std::size_t>(j)] * norm_factor(d) * p[static_cast<std::size_t>(d)];
    }
    return acc;
}

double EigenBasis::phi_prime(int k, double x) const {
    if (k < 1 || k > n_basis_) throw ValidationError("EigenBasis: mode index out of range");
    if (std::abs(x) >= 1.0) throw ValidationError("EigenBasis: phi_prime needs |x| < 1");
    std::vector<double> p, dp;
    legendre_values(2 * n_basis_ - 1, x, p);
    legendre_derivatives(2 * n_basis_ - 1, x, p, dp);
    const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
    double acc = 0.0;
    for (int j = 0; j < n_basis_; ++j) {
        int d = 2 * j + 1;
        acc += v[static_cast<std::size_t>(j)] * norm_factor(d) * dp[static_cast<std::size_t>(d)];
    }
    return acc;
}

double EigenBasis::residual_l2(int k) const {
    double lam = lambda(k);
    GaussRule rule = gauss_legendre(2 * n_basis_ + 6);
    std::vector<double> p, dp;
    KahanSum acc;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = rule.nodes[q];
        legendre_values(2 * n_basis_ - 1, x, p);
        legendre_derivatives(2 * n_basis_ - 1, x, p, dp);
        double f = 0.0, df = 0.0, d2f = 0.0;
        double one_minus = 1.0 - x * x;
        const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
        for (int j = 0; j < n_basis_; ++j) {
            int d = 2 * j + 1;
            double nf = norm_factor(d) * v[static_cast<std::size_t>(j)];
            double pv = p[static_cast<std::size_t>(d)];
            double pd = dp[static_cast<std::size_t>(d)];
            // Legendre ODE: (1-x^2) P'' = 2x P' - d(d+1) P
            double pdd = (2.0 * x * pd - d * (d + 1.0) * pv) / one_minus;
            f += nf * pv;
            df += nf * pd;
            d2f += nf * pdd;
        }
        double x2 = x * x;
        double lf = 0.25 * (1.0 - x2 * x2) * d2f - x2 * x * df - 0.5 * x2 * f;
        double r = lf + lam * f;
        acc.add(rule.weights[q] * r * r);
    }
    return std::sqrt(acc.value());
}

std::vector<double> coefficient_recurrence(double lambda, int n_max) {
    if (!(lambda > 0.0)) throw ValidationError("coefficient_recurrence: need lambda > 0");
    if (n_max < 1) throw ValidationError("coefficient_recurrence: need n_max >= 1");
    std::vector<double> p(static_cast<std::size_t>(n_max));
    p[0] = 1.0;
    double p_prev = 0.0;  // p_0
    for (int n = 1; n < n_max; ++n) {
        double up = static_cast<double>(n) * (n + 0.5);
        double down = static_cast<double>(n - 1) * (n - 0.5);
        double next = (lambda * p[static_cast<std::size_t>(n - 1)] + down * p_prev) / up;
        p_prev = p[static_cast<std::size_t>(n - 1)];
        p[static_cast<std::size_t>(n)] = next;
    }
    return p;
}

std::vector<double> EigenBasis::p_from_recurrence(int k, int len) const {
    std::vector<double> p = coefficient_recurrence(lambda(k), len);
    double p1 = phi_prime(k, 0.0);
    for (double& v : p) v *= p1;
    return p;
}

std::vector<double> EigenBasis::p_from_galerkin(int k, int len) const {
    // Monomial coefficients of the Galerkin polynomial off a complex circle;
    // a DFT longer than the degree has no aliasing at all. Eigenvector noise
    // eps_j rides on Legendre polynomials, whose circle values grow like
    // (r + sqrt(1+r^2))^degree, so the radius shrinks with the degree to
    // keep that amplification near 1e2. Low-order coefficients come out
    // well; high-order ones are fundamentally out of reach in doubles.
    const int degree = 2 * n_basis_ - 1;
    std::size_t m = 1;
    while (m < static_cast<std::size_t>(2 * (degree + 1))) m <<= 1;
    const double r = std::clamp(std::sinh(36.8 / degree), 0.2, 0.8);
    std::vector<double> cums(static_cast<std::size_t>(len), 0.0);
    std::vector<std::complex<double>> samples(m);
    for (std::size_t j = 0; j < m; ++j) {
        double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
        samples[j] = phi(k, std::polar(r, theta));
    }
    for (int n = 1; n <= len; ++n) {
        int power = 2 * n - 1;
        if (power > degree) break;
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            double theta = -2.0 * M_PI * power * static_cast<double>(j) / static_cast<double>(m);
            acc += samples[j] * std::polar(1.0, theta);
        }
        double c = acc.real() / static_cast<double>(m) / std::pow(r, power);
        cums[static_cast<std::size_t>(n - 1)] = ((n % 2 == 1) ? 1.0 : -1.0) * c;
    }
    return cums;
}

EigenPair EigenBasis::pair(int k, int len) const {
    return EigenPair{lambda(k), p_from_recurrence(k, len)};
}

double EigenBasis::project(const OddSeriesFunction& h0, int k) const {
    GaussRule rule = gauss_legendre(384);
    std::vector<double> p;
    KahanSum acc;
    const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = rule.nodes[q];
        legendre_values(2 * n_basis_ - 1, x, p);
        double f = 0.0;
        for (int j = 0; j < n_basis_; ++j) {
            int d = 2 * j + 1;
            f += v[static_cast<std::size_t>(j)] * norm_factor(d) * p[static_cast<std::size_t>(d)];
        }
        acc.add(rule.weights[q] * h0(x) * f);
    }
    return acc.value();
}

double EigenBasis::moment(int k, int m) const {
    GaussRule rule = gauss_legendre(n_basis_ + m / 2 + 4);
    std::vector<double> p;
    KahanSum acc;
    const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = rule.nodes[q];
        legendre_values(2 * n_basis_ - 1, x, p);
        double f = 0.0;
        for (int j = 0; j < n_basis_; ++j) {
            int d = 2 * j + 1;
            f += v[static_cast<std::size_t>(j)] * norm_factor(d) * p[static_cast<std::size_t>(d)];
        }
        acc.add(rule.weights[q] * std::pow(x, m) * f);
    }
    return acc.value();
}

NpLimits np_limit_estimate(const std::vector<double>& p) {
    if (p.size() < 64) throw ValidationError("np_limit_estimate: need at least 64 entries");
    std::vector<double> q_odd, n_odd, q_even, n_even;
    for (std::size_t i = 0; i < p.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        double weighted = n * p[i];
        if (n % 2 == 1) {
            q_odd.push_back(weighted);
            n_odd.push_back(n);
        } else {
            q_even.push_back(weighted);
            n_even.push_back(n);
        }
    }
    auto check_cauchy = [](const std::vector<double>& q) {
        double scale = 1.0 + std::abs(q.back());
        for (std::size_t i = 3 * q.size() / 4; i + 1 < q.size(); ++i) {
            if (std::abs(q[i + 1] - q[i]) > 0.05 * scale) {
                throw NumericalError("np_limit_estimate: non-Cauchy tail");
            }
        }
    };
    check_cauchy(q_odd);
    check_cauchy(q_even);
    NpLimits out;
    out.c_odd = extrapolate_in_inverse_n(q_odd, n_odd, 5).value;
    out.c_even = extrapolate_in_inverse_n(q_even, n_even, 5).value;
    return out;
}

EvolveResult evolve_b(const EigenBasis& basis, const OddSeriesFunction& h0, double t,
                      int n_modes, int n_out) {
    if (n_modes < 1 || n_modes > basis.n_basis()) {
        throw ValidationError("evolve_b: n_modes outside 1..n_basis");
    }
    if (t < 0.0) throw ValidationError("evolve_b: need t >= 0");
    if (!h0.alternating_tail_ok()) {
        throw ValidationError("evolve_b: initial data fails the alternating-sum condition");
    }
    EvolveResult out;
    out.projections.resize(static_cast<std::size_t>(n_modes));
    double h_max = 0.0;
    for (int k = 1; k <= n_modes; ++k) {
        out.projections[static_cast<std::size_t>(k - 1)] = basis.project(h0, k);
        h_max = std::max(h_max, std::abs(out.projections[static_cast<std::size_t>(k - 1)]));
    }
    out.truncation_warning =
        std::abs(out.projections.back()) > 1e-8 * std::max(h_max, 1e-300);

    std::vector<double> b(static_cast<std::size_t>(n_out), 0.0);
    for (int k = 1; k <= n_modes; ++k) {
        double weight = out.projections[static_cast<std::size_t>(k - 1)] *
                        std::exp(-basis.lambda(k) * t);
        std::vector<double> p = basis.p_from_recurrence(k, n_out);
        for (int n = 0; n < n_out; ++n) b[static_cast<std::size_t>(n)] += weight * p[static_cast<std::size_t>(n)];
    }
    out.b = ShellSequence(std::move(b), Provenance::closed_form_sampled);
    return out;
}

ShellSequence forced_steady_state_b(const EigenBasis& basis, int m, int n_max, int n_modes) {
    if (m < 1) throw ValidationError("forced_steady_state_b: need m >= 1");
    // Spectral sums have an optimal truncation: past ~16 modes the huge
    // mid-range eigencoefficients amplify projection noise faster than the
    // true d_k decay. Verified against long forced integrations.
    if (n_modes <= 0) n_modes = std::min(16, basis.n_basis() / 2);
    n_modes = std::min(n_modes, basis.n_basis());
    std::vector<double> d(static_cast<std::size_t>(n_modes));
    double d_max = 0.0;
    for (int k = 1; k <= n_modes; ++k) {
        d[static_cast<std::size_t>(k - 1)] = basis.moment(k, m);
        d_max = std::max(d_max, std::abs(d[static_cast<std::size_t>(k - 1)]));
    }
    if (d_max < 1e-12) {
        throw ValidationError(
            "forced_steady_state_b: zero projection (even m has no odd component)");
    }
    // The spectral sum is clean only for small n (noise in d_k is amplified
    // by the mid-range eigencoefficient growth), but the steady state also
    // satisfies the forced stationary recurrence
    //   0 = c_{n-1} b_{n-1} - c_n b_{n+1} + 1_{n=m},
    // which determines every entry from the low-n seeds. Sum spectrally for
    // the seeds, extend by stationarity: the (1/n)-type tail then comes out
    // to near machine precision.
    int n_seed = std::min(n_max, std::max(2, m + 1));
    std::vector<double> b(static_cast<std::size_t>(n_max), 0.0);
    for (int k = 1; k <= n_modes; ++k) {
        double weight = d[static_cast<std::size_t>(k - 1)] / basis.lambda(k);
        std::vector<double> p = basis.p_from_recurrence(k, n_seed);
        for (int n = 0; n < n_seed; ++n) {
            b[static_cast<std::size_t>(n)] += weight * p[static_cast<std::size_t>(n)];
        }
    }
    for (int n = 1; n + 1 <= n_max; ++n) {
        if (n + 1 <= n_seed) continue;
        double c_lo = static_cast<double>(n - 1) * (n - 0.5);
        double c_hi = static_cast<double>(n) * (n + 0.5);
        double prev = (n >= 2) ? b[static_cast<std::size_t>(n - 2)] : 0.0;
        double forced = (n == m) ? 1.0 : 0.0;
        b[static_cast<std::size_t>(n)] = (c_lo * prev + forced) / c_hi;
    }
    return ShellSequence(std::move(b), Provenance::closed_form_sampled);
}

double stochastic_steady_covariance_b(const EigenBasis& basis, int n, int m, int n_modes,
                                      int m_force) {
    if (n < 1 || m < 1) throw ValidationError("stochastic_steady_covariance_b: need n, m >= 1");
    if (n > m) std::swap(n, m);  // symmetric, and bitwise so
    if (n_modes < 1 || n_modes > basis.n_basis()) {
        throw ValidationError("stochastic_steady_covariance_b: n_modes outside 1..n_basis");
    }
    int len = std::max(n, m);
    std::vector<double> d(static_cast<std::size_t>(n_modes));
    std::vector<double> pn(static_cast<std::size_t>(n_modes)), pm(static_cast<std::size_t>(n_modes));
    for (int k = 1; k <= n_modes; ++k) {
        d[static_cast<std::size_t>(k - 1)] = basis.moment(k, m_force);
        std::vector<double> p = basis.p_from_recurrence(k, len);
        pn[static_cast<std::size_t>(k - 1)] = p[static_cast<std::size_t>(n - 1)];
        pm[static_cast<std::size_t>(k - 1)] = p[static_cast<std::size_t>(m - 1)];
    }
    KahanSum acc;
    for (int k = 0; k < n_modes; ++k) {
        for (int kp = 0; kp < n_modes; ++kp) {
            acc.add(d[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(kp)] *
                    pn[static_cast<std::size_t>(k)] * pm[static_cast<std::size_t>(kp)] /
                    (basis.lambda(k + 1) + basis.lambda(kp + 1)));
        }
    }
    return acc.value();
}

}  // namespace cascade
