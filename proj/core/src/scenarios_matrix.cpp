#include "modphi/scenarios_matrix.hpp"

#include "modphi/arith.hpp"
#include "modphi/errors.hpp"
#include "modphi/quadrature.hpp"
#include "modphi/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace modphi::scenarios {

namespace {

constexpr double pi = std::numbers::pi;
using engine::CharFn;
using engine::Complex;
using engine::Mat2;
using engine::Vec2;

Eigen::MatrixXcd complex_ginibre(int n, SplitRng& rng) {
    Eigen::MatrixXcd g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return g;
}

Eigen::MatrixXcd haar_unitary(int n, SplitRng& rng) {
    Eigen::MatrixXcd g = complex_ginibre(n, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        Complex r = R(j, j);
        double m = std::abs(r);
        Q.col(j) *= m > 0.0 ? r / m : Complex(1.0, 0.0);
    }
    return Q;
}

Eigen::MatrixXcd haar_special_orthogonal(int size, SplitRng& rng) {
    Eigen::MatrixXd g(size, size);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd R = qr.matrixQR();
    for (int j = 0; j < size; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    if (Q.determinant() < 0.0) Q.col(size - 1) *= -1.0;  // reflection fix
    return Q.cast<Complex>();
}

// Modified Gram-Schmidt over quaternion column pairs (w, -J conj(w)).
Eigen::MatrixXcd haar_symplectic(int n, SplitRng& rng) {
    int size = 2 * n;
    Eigen::MatrixXcd J = symplectic_form(n);
    Eigen::MatrixXcd W(size, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd g(size);
        for (int i = 0; i < size; ++i) g(i) = Complex(rng.gaussian(), rng.gaussian());
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                Eigen::VectorXcd wi = W.col(i);
                Eigen::VectorXcd wj = J * wi.conjugate();
                g -= wi * (wi.dot(g));
                g -= wj * (wj.dot(g));
            }
        }
        W.col(j) = g / g.norm();
    }
    Eigen::MatrixXcd Q(size, size);
    Q.leftCols(n) = W;
    Q.rightCols(n) = -J * W.conjugate();
    return Q;
}

}  // namespace

Eigen::MatrixXcd symplectic_form(int n) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        J(i, n + i) = 1.0;
        J(n + i, i) = -1.0;
    }
    return J;
}

Eigen::MatrixXcd haar_sample(GroupLabel group, SplitRng& rng) {
    int size = group.matrix_size();
    if (size < 1 || size > 512)
        throw capacity_error("haar_sample: matrix size above 512");
    switch (group.family) {
        case GroupFamily::U: return haar_unitary(group.n, rng);
        case GroupFamily::SO: return haar_special_orthogonal(size, rng);
        case GroupFamily::USp: return haar_symplectic(group.n, rng);
    }
    throw std::domain_error("haar_sample: unknown family");
}

Vec2 log_det_one_minus(const Eigen::MatrixXcd& g, GroupFamily family) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(g, /*computeU=*/false);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < g.rows(); ++j) {
        Complex one_minus = 1.0 - schur.matrixT()(j, j);
        if (std::abs(one_minus) < 1e-14) one_minus = Complex(1e-14, 0.0);
        acc += std::log(one_minus);  // principal per eigenvalue = Taylor branch
    }
    if (family == GroupFamily::U) return {acc.real(), acc.imag()};
    return {acc.real(), 0.0};
}

Complex phi_u(double t1, double t2) {
    using specfun::barnes_g_log;
    Complex i(0.0, 1.0);
    Complex a = barnes_g_log(1.0 + (i * t1 - t2) / 2.0);
    Complex b = barnes_g_log(1.0 + (i * t1 + t2) / 2.0);
    Complex c = barnes_g_log(1.0 + i * t1);
    return std::exp(a + b - c);
}

Complex phi_usp(double t) {
    using specfun::barnes_g_log;
    return std::exp(barnes_g_log(Complex(1.5, 0.0)) -
                    barnes_g_log(Complex(1.5, t)));
}

Complex phi_so(double t) {
    using specfun::barnes_g_log;
    return std::exp(barnes_g_log(Complex(0.5, 0.0)) -
                    barnes_g_log(Complex(0.5, t)));
}

namespace {

double alpha_n(GroupFamily family, double n) {
    switch (family) {
        case GroupFamily::U: return 0.0;
        case GroupFamily::USp: return 0.5 * std::log(pi * n / 2.0);
        case GroupFamily::SO: return 0.5 * std::log(8.0 * pi / n);
    }
    return 0.0;
}

Mat2 scaling_of(GroupFamily family, double n) {
    if (family == GroupFamily::U)
        return Mat2::isotropic(std::sqrt(std::log(n) / 2.0));
    return Mat2::scalar(std::sqrt(std::log(n / 2.0)));
}

}  // namespace

Scenario ks_scenario(GroupFamily family, const std::vector<double>& ns) {
    for (double n : ns) {
        if (family == GroupFamily::U && !(n >= 8))
            throw std::domain_error("ks_scenario: U needs n >= 8");
        if (family != GroupFamily::U && !(n >= 4))
            throw std::domain_error("ks_scenario: SO/USp need n >= 4");
    }
    Scenario s;
    s.name = family == GroupFamily::U ? "rmt-u" : family == GroupFamily::SO ? "rmt-so" : "rmt-usp";
    s.dim = family == GroupFamily::U ? 2 : 1;
    s.index_set = ns;
    s.scaling.dim = s.dim;
    s.scaling.a_of = [family](double n) { return scaling_of(family, n); };
    s.reference = family == GroupFamily::U ? engine::gaussian_complex_law()
                                           : engine::gaussian_real_law();
    s.discrete = false;
    // asymptotic surrogate phi(A_n^* t) Phi_G(t), quoted valid for |t| <= n^{1/6}
    s.charfn_of = [family](double n) {
        CharFn c;
        c.dim = family == GroupFamily::U ? 2 : 1;
        Mat2 A = scaling_of(family, n);
        c.eval = [family, A](Vec2 t) {
            Vec2 at = A.apply_transpose(t);
            Complex gauss =
                std::exp(Complex(-0.5 * (at.x * at.x + at.y * at.y), 0.0));
            Complex phig = family == GroupFamily::U   ? phi_u(t.x, t.y)
                           : family == GroupFamily::SO ? phi_so(t.x)
                                                       : phi_usp(t.x);
            return gauss * phig;
        };
        return c;
    };
    s.sampler = [family](double n, SplitRng& rng) {
        GroupLabel label{family, int(n)};
        auto g = haar_sample(label, rng);
        Vec2 v = log_det_one_minus(g, family);
        double a = alpha_n(family, n);
        return Vec2{v.x - a, v.y};
    };
    // in the rescaled variable |phi_n(Sigma_n^* t)| = e^{-|t|^2/2} |Phi_G(t/A_n)|;
    // the smallest index gives the largest Phi argument
    double nmin = ns.front();
    s.domination_h = [family, nmin](double) {
        Mat2 A = scaling_of(family, nmin);
        double ascale = std::abs(A.a);
        return [family, ascale](double r) {
            double arg = r / ascale;
            double phig;
            if (family == GroupFamily::U)
                phig = std::max(std::abs(phi_u(arg, 0.0)), std::abs(phi_u(0.0, arg)));
            else
                phig = std::abs(family == GroupFamily::SO ? phi_so(arg) : phi_usp(arg));
            return 1.25 * std::exp(-0.5 * r * r) * phig;
        };
    };
    return s;
}

Complex biased_so_exact_product(int n, double t) {
    using specfun::log_gamma;
    Complex it(0.0, t);
    Complex logs = 2.0 * n * (1.0 + it) * std::log(2.0);
    for (int j = 1; j <= n; ++j) {
        logs += log_gamma(Complex(double(j + n - 1), 0.0));
        logs += log_gamma(Complex(double(j) + 0.5, t));
        logs -= log_gamma(Complex(double(j) - 0.5, 0.0));
        logs -= log_gamma(Complex(double(j + n), t));
    }
    return std::exp(logs);
}

Scenario biased_so_scenario(const std::vector<double>& ns) {
    for (double n : ns)
        if (!(n >= 2 && n <= 256))
            throw capacity_error("biased_so_scenario: n in [2, 256]");
    Scenario s;
    s.name = "rmt-biased";
    s.dim = 1;
    s.index_set = ns;
    s.scaling.dim = 1;
    s.scaling.a_of = [](double n) {
        return Mat2::scalar(std::sqrt(std::log(n / 2.0)));
    };
    s.reference = engine::gaussian_real_law();
    s.discrete = false;
    s.charfn_of = [](double n) {
        CharFn c;
        c.dim = 1;
        int nn = int(n);
        double shift = 0.5 * std::log(32.0 * pi * n);
        c.eval = [nn, shift](Vec2 t) {
            Complex ey = 0.5 * biased_so_exact_product(nn, t.x);
            return ey * std::exp(Complex(0.0, -t.x * shift));
        };
        return c;
    };
    // importance weighting over Haar SO(2n): weight (1/2) det(1 - g)
    s.weighted_sampler = [](double n, SplitRng& rng, Vec2* out) {
        GroupLabel label{GroupFamily::SO, int(n)};
        auto g = haar_sample(label, rng);
        Vec2 v = log_det_one_minus(g, GroupFamily::SO);
        double w = 0.5 * std::exp(v.x);
        *out = Vec2{v.x - 0.5 * std::log(32.0 * pi * n), 0.0};
        return w;
    };
    return s;
}

namespace {

struct ZetaPrimeTable {
    std::vector<long long> primes;
    std::vector<double> sqrt_inv;  // 1/sqrt(p)
    std::vector<double> inv;       // 1/p
};

std::shared_ptr<const ZetaPrimeTable> zeta_primes(long long x) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const ZetaPrimeTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
    }
    auto tab = std::make_shared<ZetaPrimeTable>();
    tab->primes = arith::sieve_primes(x);
    for (long long p : tab->primes) {
        tab->sqrt_inv.push_back(1.0 / std::sqrt(double(p)));
        tab->inv.push_back(1.0 / double(p));
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[x] = tab;
    return tab;
}

}  // namespace

Scenario stochastic_zeta_scenario(const std::vector<double>& xs) {
    long long cap = capacity_limit(100000);
    for (double x : xs)
        if (!(x >= 10) || (long long)x > cap)
            throw capacity_error("stochastic_zeta_scenario: x outside [10, capacity]");
    Scenario s;
    s.name = "stochastic-zeta";
    s.dim = 2;
    s.index_set = xs;
    s.scaling.dim = 2;
    s.scaling.a_of = [](double x) {
        return Mat2::isotropic(std::sqrt(std::log(std::log(x)) / 2.0));
    };
    s.reference = engine::gaussian_complex_law();
    s.discrete = false;
    s.charfn_of = [](double x) {
        CharFn c;
        c.dim = 2;
        auto tab = zeta_primes((long long)x);
        c.eval = [tab](Vec2 t) {
            Complex i(0.0, 1.0);
            Complex a = (i * t.x + t.y) / 2.0, b = (i * t.x - t.y) / 2.0;
            Complex logs(0.0);
            for (double ip : tab->inv)
                logs += std::log(specfun::hyp2f1_c1(a, b, ip));
            return std::exp(logs);
        };
        double loglog = std::log(std::log(x));
        c.decay_bound = [loglog](double r) {
            return 1.1 * std::exp(-loglog * r * r / 16.0);
        };
        return c;
    };
    s.sampler = [](double x, SplitRng& rng) {
        auto tab = zeta_primes((long long)x);
        Complex acc(0.0);
        for (double si : tab->sqrt_inv) {
            double th = rng.uniform(0.0, 2.0 * pi);
            Complex y(std::cos(th), std::sin(th));
            acc -= std::log(1.0 - y * si);  // |y/sqrt p| < 1: principal branch
        }
        return Vec2{acc.real(), acc.imag()};
    };
    // |phi_n(Sigma_n^* t)| <= c exp(-(log log n)|Sigma_n^* t|^2 / 16)
    //                       = c exp(-|t|^2 / 8)
    s.domination_h = [](double) {
        return [](double r) { return 1.1 * std::exp(-r * r / 8.0); };
    };
    return s;
}

KsPhiValue ks_conjecture_phi(double t1, double t2) {
    KsPhiValue out;
    Complex i(0.0, 1.0);
    Complex a = (i * t1 + t2) / 2.0, b = (i * t1 - t2) / 2.0;
    Complex ab = a * b;
    Complex logs(0.0);
    long long P = 10000;
    auto add_range = [&](long long lo, long long hi) {
        auto primes = arith::sieve_primes(hi);
        for (long long p : primes) {
            if (p <= lo) continue;
            double ip = 1.0 / double(p);
            logs += std::log(specfun::hyp2f1_c1(a, b, ip)) +
                    ab * std::log1p(-ip);
        }
    };
    add_range(1, P);
    // regularized terms are 1 + c2/p^2 + O(p^{-3}) with c2 = -ab(a-1)(b-1)/4;
    // grow P until the prime-tail estimate clears 1e-8
    double coeff = std::abs(ab * (a - 1.0) * (b - 1.0)) / 4.0 + std::abs(ab) * 0.2;
    auto tail_at = [&](long long p) {
        return coeff * 1.3 / (double(p) * std::log(double(p)));
    };
    out.truncation_bound = tail_at(P);
    for (int round = 0; round < 12 && out.truncation_bound >= 1e-8; ++round) {
        add_range(P, 2 * P);
        P *= 2;
        out.truncation_bound = tail_at(P);
    }
    if (out.truncation_bound >= 1e-8)
        throw nonconvergence_error("ks_conjecture_phi: truncation target not met");
    out.primes_used = P;
    out.value = phi_u(t1, t2) * std::exp(logs);
    return out;
}

}  // namespace modphi::scenarios
