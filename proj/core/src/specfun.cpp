#include "modphi/specfun.hpp"

#include "modphi/errors.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace modphi::specfun {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Lanczos, g = 7, 9 terms.
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

Complex log_gamma_lanczos(Complex z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    Complex x = lanczos_c[0];
    for (int k = 1; k < 9; ++k) x += lanczos_c[k] / (z + double(k));
    Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    int m = int(std::ceil(0.5 - z.real()));
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) acc += std::log(z + double(k));
    return log_gamma_lanczos(z + double(m)) - acc;
}

double bessel_i(double nu, double z, const PrecisionPolicy& prec) {
    if (nu < -0.5) throw std::domain_error("bessel_i: nu < -1/2 unsupported");
    if (z < 0.0) throw std::domain_error("bessel_i: z < 0");
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    // term_m = (z/2)^(nu+2m) / (m! Gamma(nu+m+1))
    double term = std::exp(nu * std::log(z / 2.0) - std::lgamma(nu + 1.0));
    double sum = term;
    double q = z * z / 4.0;
    for (int m = 1; m <= prec.max_terms; ++m) {
        term *= q / (m * (nu + m));
        sum += term;
        if (std::abs(term) < prec.rel_tol * std::abs(sum)) return sum;
    }
    throw nonconvergence_error("bessel_i: series did not converge");
}

namespace {

// log G(1+x) for Re x >= 19, |Im x| moderate.
Complex barnes_g_log1p_asymptotic(Complex x) {
    Complex lx = std::log(x);
    Complex x2 = x * x;
    Complex s = 0.5 * x2 * lx - 0.75 * x2 + 0.5 * x * std::log(2.0 * pi) -
                lx / 12.0 + zeta_prime_minus_one;
    // + sum_{k>=1} B_{2k+2} / (2k (2k+1) (2k+2) x^{2k})
    static constexpr double b[] = {
        1.0 / 30, -1.0 / 42, 1.0 / 30, -5.0 / 66, 691.0 / 2730, -7.0 / 6,
    };  // B4, B6, B8, B10, B12, B14
    Complex xp = x2;
    for (int k = 1; k <= 6; ++k) {
        double denom = double(2 * k) * double(2 * k + 1) * double(2 * k + 2);
        s += b[k - 1] / (denom * xp);
        xp *= x2;
    }
    return s;
}

}  // namespace

Complex barnes_g_log(Complex z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("barnes_g_log: pole at nonpositive integer");
    int m = 0;
    if (z.real() < 20.0) m = int(std::ceil(20.0 - z.real()));
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) acc += log_gamma(z + double(k));
    return barnes_g_log1p_asymptotic(z + double(m) - 1.0) - acc;
}

Complex hyp2f1_c1(Complex a, Complex b, double x, const PrecisionPolicy& prec) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("hyp2f1_c1: x outside [0,1)");
    Complex term = 1.0, sum = 1.0;
    for (int m = 0; m < prec.max_terms; ++m) {
        term *= (a + double(m)) * (b + double(m)) * x /
                (double(m + 1) * double(m + 1));
        sum += term;
        if (std::abs(term) < prec.rel_tol * std::abs(sum) * (1.0 - x)) return sum;
    }
    throw nonconvergence_error("hyp2f1_c1: series did not converge");
}

double cosine_integral(double t) {
    if (!(t > 0.0)) throw std::domain_error("cosine_integral: t <= 0");
    if (t <= 8.0) {
        // gamma + log t + sum_{k>=1} (-1)^k t^{2k} / (2k (2k)!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -t * t / ((2.0 * k - 1.0) * (2.0 * k));
            double add = term / (2.0 * k);
            sum += add;
            if (std::abs(add) < 1e-17 * (std::abs(sum) + 1.0)) break;
        }
        return euler_gamma + std::log(t) + sum;
    }
    // Ci(t) = -Re E1(it); E1(z) by modified Lentz continued fraction.
    Complex z(0.0, t);
    Complex bf = z + 1.0;
    Complex c = 1.0 / 1e-30, d = 1.0 / bf, h = d;
    for (int i = 1; i <= 200; ++i) {
        double an = -double(i) * double(i);
        bf += 2.0;
        d = an * d + bf;
        if (std::abs(d) < 1e-30) d = 1e-30;
        c = bf + an / c;
        if (std::abs(c) < 1e-30) c = 1e-30;
        d = 1.0 / d;
        Complex delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    Complex e1 = h * std::exp(-z);
    return -e1.real();
}

namespace {

// Dickman memo: values at u = 1 + i/2048 for i = 0..GRID_N.  Two interleaved
// RK4 streams of step 1/1024 keep every delay stage (u-1, u-1+h/2, u-1+h)
// on the stored grid, so no interpolation enters the integration itself.
constexpr double rho_h = 1.0 / 1024.0;
constexpr int rho_per_unit = 2048;         // nodes per unit of u at spacing h/2
constexpr double rho_umax = 40.0;
constexpr int rho_grid_n = int((rho_umax - 1.0) * rho_per_unit);

const std::vector<double>& dickman_table() {
    static const std::vector<double> table = [] {
        std::vector<double> v(rho_grid_n + 1, 0.0);
        auto u_of = [](int i) { return 1.0 + double(i) / rho_per_unit; };
        // closed form rho(u) = 1 - log u on [1, 2]
        int two = rho_per_unit;
        for (int i = 0; i <= two; ++i) v[i] = 1.0 - std::log(u_of(i));
        auto hist = [&](int i) {
            // rho at u_of(i) - 1; index shift exactly rho_per_unit
            int j = i - rho_per_unit;
            return j <= 0 ? 1.0 : v[j];
        };
        // advance both streams (even/odd offsets) by h = 2 grid units
        for (int i = two - 1; i + 2 <= rho_grid_n; ++i) {
            double u = u_of(i), y = v[i];
            double k1 = -hist(i) / u;
            double um = u + rho_h / 2.0, rm = hist(i + 1);
            double k2 = -rm / um;
            double k3 = k2;  // f depends on (u, rho(u-1)) only, not on y
            double u1 = u + rho_h;
            double k4 = -hist(i + 2) / u1;
            v[i + 2] = y + rho_h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return v;
    }();
    return table;
}

}  // namespace

double dickman_rho(double u) {
    if (u < 0.0) throw std::domain_error("dickman_rho: u < 0");
    if (u <= 1.0) return 1.0;
    if (u >= rho_umax) return 0.0;  // rho(40) ~ 1e-46, below double noise here
    const auto& tab = dickman_table();
    double x = (u - 1.0) * rho_per_unit;
    int i = int(x);
    if (i >= rho_grid_n) return tab[rho_grid_n];
    double frac = x - i;
    return tab[i] * (1.0 - frac) + tab[i + 1] * frac;
}

namespace {

// Euler-Maclaurin tail sum_{k>j} k^{-s}, complex s with Re s > 1, integer j.
Complex zeta_tail_em(Complex s, double j) {
    Complex jp = std::pow(Complex(j, 0.0), -s);  // j^{-s}
    Complex tail = j * jp / (s - 1.0) - 0.5 * jp;
    // Bernoulli correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * j^{1-s-2k}
    static constexpr double b2k_fact[] = {
        1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600, 1.0 / 47900160,
    };
    Complex poch = s;            // s (s+1) ... rising
    Complex jpow = jp / j;       // j^{-s-1}
    for (int k = 1; k <= 5; ++k) {
        tail += b2k_fact[k - 1] * poch * jpow;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        jpow /= j * j;
    }
    return tail;
}

Complex zeta_em(Complex s, const PrecisionPolicy& prec) {
    if (s.real() <= 1.0) throw std::domain_error("zeta: sigma <= 1");
    (void)prec;
    int n = std::max(24, int(std::abs(s.imag())) + 16);
    Complex sum = 0.0;
    for (int k = n; k >= 1; --k) sum += std::pow(Complex(double(k), 0.0), -s);
    return sum + zeta_tail_em(s, double(n));
}

}  // namespace

double zeta_real(double sigma, const PrecisionPolicy& prec) {
    return zeta_em(Complex(sigma, 0.0), prec).real();
}

Complex zeta_complex(double sigma, double t, const PrecisionPolicy& prec) {
    return zeta_em(Complex(sigma, t), prec);
}

double zeta_tail(double s, double j) {
    if (s <= 1.0) throw std::domain_error("zeta_tail: s <= 1");
    if (j < 8.0) {
        double sum = 0.0;
        for (int k = int(j) + 1; k <= int(j) + 8; ++k) sum += std::pow(double(k), -s);
        return sum + zeta_tail_em(Complex(s, 0.0), j + 8.0).real();
    }
    return zeta_tail_em(Complex(s, 0.0), j).real();
}

}  // namespace modphi::specfun
