#pragma once

// Test-only reference implementations, independent of the library paths
// they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

// log Gamma by the Stirling series with recursion shifts to Re z >= 32.
inline Complex stirling_log_gamma(Complex z) {
    Complex shift(0.0, 0.0);
    while (z.real() < 32.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static const double b2k[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                 1.0 / 1188, -691.0 / 360360, 7.0 / 156};
    Complex s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI);
    Complex zp = z;
    for (double c : b2k) {
        s += c / zp;
        zp *= z * z;
    }
    return s - shift;
}

// Bessel I by direct long-double summation of the Taylor series.
inline long double bessel_i_longdouble(long double nu, long double z, int terms = 200) {
    long double sum = 0.0L;
    long double term = std::exp(nu * std::log(z / 2.0L) - std::lgamma(nu + 1.0L));
    for (int m = 0; m < terms; ++m) {
        sum += term;
        term *= (z * z / 4.0L) / ((m + 1.0L) * (nu + m + 1.0L));
    }
    return sum;
}

// Gauss 2F1(a,b;1;x) by direct long-double-precision complex summation.
inline Complex hyp2f1_direct(Complex a, Complex b, double x, int terms = 200) {
    std::complex<long double> term(1.0L, 0.0L), sum(0.0L, 0.0L);
    std::complex<long double> al(a.real(), a.imag()), bl(b.real(), b.imag());
    for (int m = 0; m < terms; ++m) {
        sum += term;
        term *= (al + (long double)m) * (bl + (long double)m) * (long double)x /
                ((long double)(m + 1) * (long double)(m + 1));
    }
    return Complex(double(sum.real()), double(sum.imag()));
}

// Adaptive Simpson quadrature (plain, recursive).
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol, int depth = 24) {
    auto s = [&](double x0, double x2) {
        double x1 = 0.5 * (x0 + x2);
        return (f(x0) + 4.0 * f(x1) + f(x2)) * (x2 - x0) / 6.0;
    };
    std::function<double(double, double, double, int)> rec =
        [&](double x0, double x2, double whole, int d) -> double {
        double x1 = 0.5 * (x0 + x2);
        double left = s(x0, x1), right = s(x1, x2);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(x0, x1, left, d - 1) + rec(x1, x2, right, d - 1);
    };
    return rec(a, b, s(a, b), depth);
}

// Ci(t) = gamma + log t + int_0^t (cos u - 1)/u du by quadrature.
inline double ci_quadrature(double t) {
    const double gamma = 0.5772156649015328606;
    auto f = [](double u) {
        if (u < 1e-8) return -u / 2.0;
        return (std::cos(u) - 1.0) / u;
    };
    return gamma + std::log(t) + simpson(f, 0.0, t, 1e-14);
}

// Dickman rho by RK4 at ten times the library's step (1/20480 half-grid).
class DickmanFine {
  public:
    explicit DickmanFine(double umax = 12.0) {
        per_ = 20480;
        h_ = 2.0 / per_;
        n_ = int((umax - 1.0) * per_);
        v_.assign(n_ + 1, 0.0);
        for (int i = 0; i <= per_; ++i) v_[i] = 1.0 - std::log(1.0 + double(i) / per_);
        auto hist = [&](int i) {
            int j = i - per_;
            return j <= 0 ? 1.0 : v_[j];
        };
        for (int i = per_ - 1; i + 2 <= n_; ++i) {
            double u = 1.0 + double(i) / per_;
            double k1 = -hist(i) / u;
            double k2 = -hist(i + 1) / (u + h_ / 2.0);
            double k4 = -hist(i + 2) / (u + h_);
            v_[i + 2] = v_[i] + h_ / 6.0 * (k1 + 4.0 * k2 + k4);
        }
    }
    double operator()(double u) const {
        if (u <= 1.0) return 1.0;
        double x = (u - 1.0) * per_;
        int i = int(x);
        if (i >= n_) return v_[n_];
        double f = x - i;
        return v_[i] * (1.0 - f) + v_[i + 1] * f;
    }

  private:
    int per_, n_;
    double h_;
    std::vector<double> v_;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return (std::uint64_t)((unsigned __int128)a * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r2 = 1;
        a %= m;
        while (e) {
            if (e & 1) r2 = mulmod(r2, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r2;
    };
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace oracles
