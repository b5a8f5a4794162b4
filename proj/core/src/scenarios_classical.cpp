#include "modphi/scenarios_classical.hpp"

#include "modphi/errors.hpp"
#include "modphi/quadrature.hpp"
#include "modphi/specfun.hpp"

#include <cmath>
#include <numbers>

namespace modphi::scenarios {

namespace {

constexpr double pi = std::numbers::pi;
using engine::CharFn;
using engine::Complex;
using engine::Mat2;
using engine::Region;
using engine::Vec2;

// Chambers-Mallows-Stuck draw of the symmetric standard stable law with
// characteristic function exp(-|t|^p).
double sample_stable(double p, SplitRng& rng) {
    double V = rng.uniform(-pi / 2.0, pi / 2.0);
    if (p == 1.0) return std::tan(V);
    double W = rng.exponential();
    double s = std::sin(p * V) / std::pow(std::cos(V), 1.0 / p);
    double r = std::pow(std::cos((1.0 - p) * V) / W, (1.0 - p) / p);
    return s * r;
}

// P[a < S_p < b] for the standard symmetric stable law, by the kernel
// inversion formula (closed forms at p = 1, 2).
double stable_interval_prob(double p, double a, double b) {
    if (p == 1.0) return (std::atan(b) - std::atan(a)) / pi;
    if (p == 2.0) {
        auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
        double s = std::sqrt(2.0);  // variance 2
        return Phi(b / s) - Phi(a / s);
    }
    double T = std::pow(45.0, 1.0 / p);
    auto f = [&](double t) {
        double kern;
        if (t < 1e-8)
            kern = b - a;
        else
            kern = (std::sin(b * t) - std::sin(a * t)) / t;
        return std::exp(-std::pow(t, p)) * kern;
    };
    int panels = 2000 + int((std::abs(a) + std::abs(b)) * T);
    return quadrature::integrate(f, 0.0, T, 1e-11, 1e-10, panels).value / pi;
}

}  // namespace

Scenario stable_scenario(double p, StableIncrement increment,
                         const std::vector<double>& ns,
                         const std::function<double(double)>& b_of) {
    if (!(p > 0.0 && p <= 2.0)) throw std::domain_error("stable_scenario: p outside (0,2]");
    if (increment == StableIncrement::cauchy && p != 1.0)
        throw std::domain_error("stable_scenario: cauchy increments require p = 1");
    if (increment == StableIncrement::uniform_symmetric && p != 2.0)
        throw std::domain_error("stable_scenario: uniform increments require p = 2");

    std::function<double(double)> bn = b_of;
    if (!bn) {
        if (increment == StableIncrement::uniform_symmetric)
            bn = [](double n) { return std::sqrt(n / 6.0); };  // Var = 1/3
        else
            bn = [p](double n) { return std::pow(n, 1.0 / p); };
    }

    Scenario s;
    s.name = "stable";
    s.dim = 1;
    s.index_set = ns;
    s.scaling.dim = 1;
    s.scaling.a_of = [bn](double n) { return Mat2::scalar(bn(n)); };
    s.reference = engine::stable_law(p);
    s.discrete = false;

    switch (increment) {
        case StableIncrement::exact_stable:
        case StableIncrement::cauchy: {
            s.charfn_of = [p](double n) {
                CharFn c;
                c.dim = 1;
                c.eval = [p, n](Vec2 t) {
                    return Complex(std::exp(-n * std::pow(std::abs(t.x), p)), 0.0);
                };
                c.decay_bound = [p, n](double r) {
                    return std::exp(-n * std::pow(r, p));
                };
                return c;
            };
            s.exact_prob = [p](double n, const Region& B) {
                double scale = std::pow(n, 1.0 / p);  // X_1+..+X_n ~ scale * S_p
                return stable_interval_prob(p, B.p[0] / scale, B.p[1] / scale);
            };
            s.sampler = [p](double n, SplitRng& rng) {
                return Vec2{std::pow(n, 1.0 / p) * sample_stable(p, rng), 0.0};
            };
            break;
        }
        case StableIncrement::uniform_symmetric: {
            s.charfn_of = [](double n) {
                CharFn c;
                c.dim = 1;
                c.eval = [n](Vec2 t) {
                    if (std::abs(t.x) < 1e-12) return Complex(1.0, 0.0);
                    double base = std::sin(t.x) / t.x;
                    return Complex(std::pow(std::abs(base), n) *
                                       (base < 0.0 && (long long)(n) % 2 ? -1.0 : 1.0),
                                   0.0);
                };
                c.decay_bound = [n](double r) {
                    return std::pow(1.0 / (1.0 + 0.1 * r * r), n / 2.0);
                };
                return c;
            };
            s.sampler = [](double n, SplitRng& rng) {
                double sum = 0.0;
                for (long long i = 0; i < (long long)n; ++i)
                    sum += rng.uniform(-1.0, 1.0);
                return Vec2{sum, 0.0};
            };
            break;
        }
    }
    return s;
}

double winding_charfn(double log_u, double t) {
    if (!(log_u > 0.0)) throw std::domain_error("winding_charfn: need u > 1");
    // phi = sqrt(pi/2) z^{1/2} e^{-z} (I_{(|t|-1)/2}(z) + I_{(|t|+1)/2}(z)),
    // z = 1/(4u); evaluated through logs so huge u cannot underflow.
    double log_z = -log_u - std::log(4.0);
    double z = log_z > -700.0 ? std::exp(log_z) : 0.0;
    double at = std::abs(t);
    double nu_a = (at - 1.0) / 2.0, nu_b = (at + 1.0) / 2.0;
    double zsq4 = log_z > -350.0 ? std::exp(2.0 * log_z) / 4.0 : 0.0;
    auto log_bessel = [&](double nu) {
        // log I_nu(z) = nu log(z/2) - lgamma(nu+1) + log(correction series)
        double corr = 1.0, term = 1.0;
        for (int m = 1; m <= 400; ++m) {
            term *= zsq4 / (m * (nu + m));
            corr += term;
            if (std::abs(term) < 1e-16 * corr) break;
        }
        return nu * (log_z - std::log(2.0)) - std::lgamma(nu + 1.0) + std::log(corr);
    };
    double la = log_bessel(nu_a), lb = log_bessel(nu_b);
    double lmax = std::max(la, lb);
    double lsum = lmax + std::log(std::exp(la - lmax) + std::exp(lb - lmax));
    double lphi = 0.5 * std::log(pi / 2.0) + 0.5 * log_z - z + lsum;
    return lphi > -745.0 ? std::exp(lphi) : 0.0;
}

Scenario winding_scenario(const std::vector<double>& log_us) {
    for (double lu : log_us)
        if (!(lu > 1.0)) throw std::domain_error("winding_scenario: need log u > 1");
    Scenario s;
    s.name = "winding";
    s.dim = 1;
    s.index_set = log_us;
    s.scaling.dim = 1;
    s.scaling.a_of = [](double log_u) { return Mat2::scalar(log_u / 2.0); };
    s.reference = engine::cauchy_law();
    s.discrete = false;
    s.charfn_of = [](double log_u) {
        CharFn c;
        c.dim = 1;
        c.eval = [log_u](Vec2 t) { return Complex(winding_charfn(log_u, t.x), 0.0); };
        // dominant Bessel term: |phi| <= e sqrt(2 pi) (z/2)^{r/2} / Gamma((r+1)/2),
        // decreasing and integrable in r; evaluated in logs
        c.decay_bound = [log_u](double r) {
            double log_z = -log_u - std::log(4.0);
            double z = log_z > -700.0 ? std::exp(log_z) : 0.0;
            double lt = 0.5 * std::log(2.0 * pi) + 1.0 - z +
                        0.5 * r * (log_z - std::log(2.0)) -
                        std::lgamma((r + 1.0) / 2.0);
            return lt > -745.0 ? std::exp(lt) : 0.0;
        };
        return c;
    };
    // B_k exp(-|t|/k): B_k = sqrt(pi/2) * max I_nu(z), nu in [-1/2, (k+1)/2],
    // z <= 1: the max sits at nu = -1/2, z = 1
    s.domination_h = [](double k) {
        double Bk = std::sqrt(pi / 2.0) *
                    std::sqrt(2.0 / (pi * 1.0)) * std::cosh(1.0);
        return [Bk, k](double r) { return Bk * std::exp(-r / k); };
    };
    return s;
}

namespace {

// Exact pmf-window probability P[X in B] for X = (P - lambda)/lambda^{1/3}.
double poisson_window_prob(double lambda, double lo, double hi) {
    double l3 = std::cbrt(lambda);
    double klo = lambda + lo * l3, khi = lambda + hi * l3;
    long long k0 = (long long)std::floor(klo) + 1;  // strict lower edge
    long long k1 = (long long)std::ceil(khi) - 1;   // strict upper edge
    if (double(k1) == khi) --k1;
    if (k0 < 0) k0 = 0;
    double loglam = std::log(lambda);
    double sum = 0.0;
    for (long long k = k0; k <= k1; ++k) {
        double lp = double(k) * loglam - lambda - std::lgamma(double(k) + 1.0);
        sum += std::exp(lp);
    }
    return sum;
}

// cycle-count block sampler tables: per index n, pmf of the number of
// successes among Bernoulli(1/j) for j in dyadic blocks of [1, n]
struct CycleBlocks {
    std::vector<std::vector<double>> cdf;  // per block, cumulative pmf
};

CycleBlocks build_cycle_blocks(long long n) {
    CycleBlocks out;
    long long lo = 1;
    while (lo <= n) {
        long long hi = std::min(n, lo * 2 - 1);
        std::vector<double> pmf{1.0};
        pmf.reserve(64);
        for (long long j = lo; j <= hi; ++j) {
            double p = 1.0 / double(j);
            pmf.push_back(0.0);
            for (std::size_t t = pmf.size() - 1; t > 0; --t)
                pmf[t] = pmf[t] * (1.0 - p) + pmf[t - 1] * p;
            pmf[0] *= 1.0 - p;
            if (pmf.size() > 96) pmf.resize(96);  // mass beyond is ~1e-100
        }
        std::vector<double> cdf(pmf.size());
        double acc = 0.0;
        for (std::size_t t = 0; t < pmf.size(); ++t) {
            acc += pmf[t];
            cdf[t] = acc;
        }
        out.cdf.push_back(std::move(cdf));
        lo = hi + 1;
    }
    return out;
}

// pmf of the total cycle count (Poisson-binomial over j <= n), truncated
std::vector<double> cycle_count_pmf(long long n) {
    std::size_t K = 256;
    std::vector<double> pmf(K, 0.0);
    pmf[0] = 1.0;
    std::size_t used = 1;
    for (long long j = 1; j <= n; ++j) {
        double p = 1.0 / double(j);
        std::size_t top = std::min(K - 1, used);
        for (std::size_t t = top; t > 0; --t)
            pmf[t] = pmf[t] * (1.0 - p) + pmf[t - 1] * p;
        pmf[0] *= 1.0 - p;
        used = std::min(K - 1, used + 1);
    }
    return pmf;
}

}  // namespace

Scenario poisson_scenario(const std::vector<double>& lambdas, PoissonVariant variant) {
    Scenario s;
    s.dim = 1;
    s.index_set = lambdas;
    s.scaling.dim = 1;
    s.reference = engine::gaussian_real_law();
    s.discrete = true;

    if (variant == PoissonVariant::poisson) {
        for (double l : lambdas)
            if (!(l >= 10.0)) throw std::domain_error("poisson_scenario: lambda >= 10");
        s.name = "poisson";
        s.scaling.a_of = [](double l) { return Mat2::scalar(std::pow(l, 1.0 / 6.0)); };
        s.charfn_of = [](double l) {
            CharFn c;
            c.dim = 1;
            double l3 = std::cbrt(l);
            c.eval = [l, l3](Vec2 t) {
                // e^{-i t lambda^{2/3}} exp(lambda (e^{i t / lambda^{1/3}} - 1))
                Complex inner = std::exp(Complex(0.0, t.x / l3)) - 1.0;
                return std::exp(Complex(0.0, -t.x * l3 * l3) + l * inner);
            };
            return c;
        };
        s.exact_prob = [](double l, const Region& B) {
            return poisson_window_prob(l, B.p[0], B.p[1]);
        };
        s.sampler = [](double l, SplitRng& rng) {
            double x = (double(rng.poisson(l)) - l) / std::cbrt(l);
            return Vec2{x, 0.0};
        };
        // |phi(Sigma t)| = exp(lambda(cos(t/sqrt(lambda)) - 1)) <= e^{-t^2/4}
        // for t^2 <= 6 lambda, which covers |t| <= lambda^{1/4} comfortably
        s.domination_h = [](double) {
            return [](double r) { return std::exp(-r * r / 4.0); };
        };
        return s;
    }

    s.name = "cycles";
    for (double n : lambdas)
        if (!(n >= 3.0)) throw std::domain_error("poisson_scenario: cycles needs n >= 3");
    auto lambda_of = [](double n) { return std::log(n); };
    s.scaling.a_of = [lambda_of](double n) {
        return Mat2::scalar(std::pow(lambda_of(n), 1.0 / 6.0));
    };
    s.charfn_of = [lambda_of](double n) {
        CharFn c;
        c.dim = 1;
        long long nn = (long long)n;
        double l = lambda_of(n), l3 = std::cbrt(l);
        c.eval = [nn, l, l3](Vec2 t) {
            // prod_j (j - 1 + e^{iv}) / j at v = t / lambda^{1/3}, centered
            double v = t.x / l3;
            Complex e = std::exp(Complex(0.0, v));
            Complex logs(0.0);
            for (long long j = 1; j <= nn; ++j)
                logs += std::log((double(j - 1) + e) / double(j));
            return std::exp(logs - Complex(0.0, v * l));
        };
        return c;
    };
    s.exact_prob = [lambda_of](double n, const Region& B) {
        auto pmf = cycle_count_pmf((long long)n);
        double l = lambda_of(n), l3 = std::cbrt(l);
        double klo = l + B.p[0] * l3, khi = l + B.p[1] * l3;
        double sum = 0.0;
        for (std::size_t k = 0; k < pmf.size(); ++k)
            if (double(k) > klo && double(k) < khi) sum += pmf[k];
        return sum;
    };
    // block tables are per-index; cache the largest handful
    s.sampler = [lambda_of](double n, SplitRng& rng) {
        static thread_local long long cached_n = -1;
        static thread_local CycleBlocks blocks;
        long long nn = (long long)n;
        if (cached_n != nn) {
            blocks = build_cycle_blocks(nn);
            cached_n = nn;
        }
        long long total = 0;
        for (const auto& cdf : blocks.cdf) {
            double u = rng.next_double();
            std::size_t t = 0;
            while (t + 1 < cdf.size() && u > cdf[t]) ++t;
            total += (long long)t;
        }
        double l = lambda_of(n);
        return Vec2{(double(total) - l) / std::cbrt(l), 0.0};
    };
    return s;
}

Scenario gamma_shift_scenario(const std::vector<double>& ns, double c) {
    if (c < 0.0) throw std::domain_error("gamma_shift_scenario: c < 0");
    Scenario s;
    s.name = "gamma-shift";
    s.dim = 1;
    s.index_set = ns;
    s.scaling.dim = 1;
    s.scaling.a_of = [](double n) { return Mat2::scalar(n); };
    s.reference = engine::exp_sum_law();
    s.discrete = false;
    s.charfn_of = [](double n) {
        CharFn cf;
        cf.dim = 1;
        cf.eval = [n](Vec2 t) {
            Complex d = 1.0 - Complex(0.0, n * t.x);
            return 1.0 / (d * d);
        };
        cf.decay_bound = [n](double r) { return 1.0 / (1.0 + n * n * r * r); };
        return cf;
    };
    s.exact_prob = [](double n, const Region& B) {
        // X = n(E1+E2); P[a < X < b] from the Gamma(2,1) CDF 1 - e^{-x}(1+x)
        auto cdf = [](double x) {
            return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x) * (1.0 + x);
        };
        return cdf(B.p[1] / n) - cdf(B.p[0] / n);
    };
    s.sampler = [](double n, SplitRng& rng) {
        return Vec2{n * (rng.exponential() + rng.exponential()), 0.0};
    };
    if (c > 0.0)
        return engine::shift_mean(s, {c, 0.0}, [c](double n) { return Vec2{c * n, 0.0}; });
    return s;
}

}  // namespace modphi::scenarios
