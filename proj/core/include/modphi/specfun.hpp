#pragma once

#include <complex>

namespace modphi {

using Complex = std::complex<double>;

/// Truncation policy shared by the series evaluators.
struct PrecisionPolicy {
    double rel_tol = 1e-12;
    int max_terms = 10000;
};

namespace specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209;
/// zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin).
inline constexpr double zeta_prime_minus_one = -0.16542114370045092921391966;

/// Principal branch of log Gamma. For Re z < 0.5 the value is obtained by
/// shifting up with log Gamma(z) = log Gamma(z+m) - sum log(z+k); the sum
/// accumulates principal logs, never re-branching along the path.
Complex log_gamma(Complex z);

/// Modified Bessel function of the first kind by its Taylor expansion,
/// nu >= -1/2, z >= 0.
double bessel_i(double nu, double z, const PrecisionPolicy& prec = {});

/// log G(z) for the Barnes G-function, normalized by G(1) = 1 and
/// G(z+1) = Gamma(z) G(z). Recursion-shift to Re z >= 20 plus the
/// asymptotic expansion of log G(1+x); the shift accumulates log_gamma
/// terms so the determination stays continuous.
Complex barnes_g_log(Complex z);

/// Gauss 2F1(a, b; 1; x) for real x in [0, 1), by the defining series.
/// Symmetric in (a, b) exactly; equals 1 when a = 0 or b = 0 or x = 0.
Complex hyp2f1_c1(Complex a, Complex b, double x, const PrecisionPolicy& prec = {});

/// Cosine integral Ci(t) = gamma + log t + int_0^t (cos u - 1)/u du, t > 0.
/// Power series for t <= 8, Lentz continued fraction for E1(it) beyond.
double cosine_integral(double t);

/// Dickman-de Bruijn rho: rho = 1 on [0,1], u rho'(u) = -rho(u-1) beyond.
/// Backed by a uniform memo grid (step 1/2048, RK4 with on-grid delay
/// stages) with linear interpolation; the table is built once and is
/// immutable afterwards, safe for concurrent readers.
double dickman_rho(double u);

/// Riemann zeta on the real axis, sigma > 1, by Euler-Maclaurin.
double zeta_real(double sigma, const PrecisionPolicy& prec = {});

/// zeta(sigma + it), sigma > 1, same Euler-Maclaurin path as zeta_real
/// (zeta_complex(sigma, 0) and zeta_real(sigma) share the code path).
Complex zeta_complex(double sigma, double t, const PrecisionPolicy& prec = {});

/// Tail sum_{k > j} k^{-s} for real s > 1 and integer j >= 1, by the same
/// Euler-Maclaurin expansion that backs zeta_real. Exposed for the
/// zeta-distribution pair sums.
double zeta_tail(double s, double j);

}  // namespace specfun
}  // namespace modphi
