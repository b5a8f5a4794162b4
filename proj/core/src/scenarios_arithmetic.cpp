#include "modphi/scenarios_arithmetic.hpp"

#include "modphi/arith.hpp"
#include "modphi/errors.hpp"
#include "modphi/parallel.hpp"
#include "modphi/quadrature.hpp"
#include "modphi/specfun.hpp"

#include <algorithm>
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
using engine::Region;
using engine::Vec2;
using specfun::euler_gamma;

// ---------------------------------------------------------------- Dedekind

struct DedekindData {
    std::vector<double> values;  // s(d,c) over Omega_N, sorted
    long long count = 0;
};

std::shared_ptr<const DedekindData> dedekind_values(long long N) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const DedekindData>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    long long cap = capacity_limit(10000);
    if (N > cap)
        throw capacity_error("dedekind_scenario: N above capacity " + std::to_string(cap));
    auto data = std::make_shared<DedekindData>();
    data->count = arith::enumerate_coprime_pairs(N, [&](arith::CoprimePair pc) {
        data->values.push_back(arith::dedekind_sum(pc.d, pc.c).to_double());
    });
    std::sort(data->values.begin(), data->values.end());
    std::lock_guard<std::mutex> lock(mu);
    cache[N] = data;
    return data;
}

double default_tau(double N) { return std::pow(std::log(N), 0.25); }

}  // namespace

Scenario dedekind_scenario(const std::vector<double>& ns,
                           const std::vector<double>& taus) {
    if (!taus.empty() && taus.size() != ns.size())
        throw std::domain_error("dedekind_scenario: taus must pair with ns");
    std::map<double, double> tau_map;
    for (std::size_t i = 0; i < ns.size(); ++i)
        tau_map[ns[i]] = taus.empty() ? default_tau(ns[i]) : taus[i];
    auto tau_of = [tau_map](double n) {
        auto it = tau_map.find(n);
        return it != tau_map.end() ? it->second : default_tau(n);
    };

    Scenario s;
    s.name = "dedekind";
    s.dim = 1;
    s.index_set = ns;
    s.scaling.dim = 1;
    s.scaling.a_of = [tau_of](double n) {
        return Mat2::scalar(std::log(n) / (2.0 * pi * tau_of(n)));
    };
    s.reference = engine::cauchy_law();
    s.discrete = true;
    s.charfn_of = [tau_of](double n) {
        CharFn c;
        c.dim = 1;
        auto data = dedekind_values((long long)n);
        double tau = tau_of(n);
        c.eval = [data, tau](Vec2 t) {
            double re = 0.0, im = 0.0;
            for (double v : data->values) {
                re += std::cos(t.x * v / tau);
                im += std::sin(t.x * v / tau);
            }
            return Complex(re / double(data->count), im / double(data->count));
        };
        return c;
    };
    s.exact_prob = [tau_of](double n, const Region& B) {
        auto data = dedekind_values((long long)n);
        double tau = tau_of(n);
        // half-open bin [a tau, b tau) on the exact values
        auto lo = std::lower_bound(data->values.begin(), data->values.end(),
                                   B.p[0] * tau);
        auto hi = std::lower_bound(data->values.begin(), data->values.end(),
                                   B.p[1] * tau);
        return double(hi - lo) / double(data->count);
    };
    s.sampler = [tau_of](double n, SplitRng& rng) {
        auto data = dedekind_values((long long)n);
        std::size_t i = std::size_t(rng.next_double() * double(data->count));
        if (i >= data->values.size()) i = data->values.size() - 1;
        return Vec2{data->values[i] / tau_of(n), 0.0};
    };
    return s;
}

VardiCheck vardi_bound_check(long long N, const std::vector<double>& t_grid) {
    auto data = dedekind_values(N);
    VardiCheck out;
    double n13 = std::pow(double(N), -1.0 / 3.0);
    for (double t : t_grid) {
        if (!(t > 0.0 && t <= 0.25))
            throw std::domain_error("vardi_bound_check: t outside (0, 1/4]");
        double re = 0.0, im = 0.0;
        for (double v : data->values) {
            re += std::cos(2.0 * pi * t * v);
            im += std::sin(2.0 * pi * t * v);
        }
        double mod = std::hypot(re, im) / double(data->count);
        double c_needed = (mod - n13) * std::pow(double(N), t);
        out.fitted_c = std::max(out.fitted_c, c_needed);
        out.worst_ratio =
            std::max(out.worst_ratio, mod / (std::pow(double(N), -t) + n13));
    }
    out.fitted_c = std::max(out.fitted_c, 0.0);
    return out;
}

// ---------------------------------------------------------- zeta distribution

namespace {

// sum over all pairs k, n >= 1 with alpha < k/n < beta of (k n)^{-sigma},
// Euler-Maclaurin accelerated; rigorous error estimate returned.
struct PairSum {
    double value = 0.0;
    double error_bound = 0.0;
};

// count of k <= x as the largest admissible index for strict k < beta n
long long strict_upper_index(double beta, long long n) {
    double bn = beta * double(n);
    double fl = std::floor(bn);
    long long k = (long long)fl;
    if (fl == bn) --k;  // k = beta n excluded
    return k;
}

long long lower_index(double alpha, long long n) {
    // largest k <= alpha n (excluded from the open interval)
    return (long long)std::floor(alpha * double(n));
}

PairSum pair_sum_all(double alpha, double beta, double sigma) {
    if (!(sigma > 1.0)) throw std::domain_error("pair_sum_all: sigma <= 1");
    if (!(0.0 < alpha && alpha < beta)) throw std::domain_error("pair_sum_all: bad interval");
    PairSum out;
    long long M = 2'000'000;
    double zr = specfun::zeta_real(sigma);
    double prefix[65];
    prefix[0] = 0.0;
    for (int k = 1; k <= 64; ++k)
        prefix[k] = prefix[k - 1] + std::pow(double(k), -sigma);
    auto partial = [&](long long j) {  // sum_{k<=j} k^{-sigma}
        if (j <= 0) return 0.0;
        if (j <= 64) return prefix[j];
        return zr - specfun::zeta_tail(sigma, double(j));
    };
    double direct = 0.0;
    for (long long n = 1; n <= M; ++n) {
        long long k2 = strict_upper_index(beta, n);
        long long k1 = lower_index(alpha, n);
        if (k2 <= k1) continue;
        double Tn = partial(k2) - partial(k1);
        direct += std::pow(double(n), -sigma) * Tn;
    }
    // analytic tail over n > M with k1 ~ alpha n, k2 ~ beta n
    double t1 = specfun::zeta_tail(2.0 * sigma - 1.0, double(M));
    double t2 = specfun::zeta_tail(2.0 * sigma, double(M));
    double main = (std::pow(alpha, 1.0 - sigma) - std::pow(beta, 1.0 - sigma)) /
                  (sigma - 1.0) * t1;
    double half = -0.5 * (std::pow(alpha, -sigma) - std::pow(beta, -sigma)) * t2;
    out.value = direct + main + half;
    // fractional-part wobble of the floor boundaries is O(k^{-sigma}) per n
    out.error_bound =
        (std::pow(alpha, -sigma) + std::pow(beta, -sigma)) * (2.0 + sigma) * t2;
    return out;
}

}  // namespace

double coprime_pair_sum(double alpha, double beta, double sigma) {
    auto ps = pair_sum_all(alpha, beta, sigma);
    double z2s = specfun::zeta_real(2.0 * sigma);
    if (ps.error_bound > 1e-6 * std::max(ps.value, 1e-300))
        throw nonconvergence_error("coprime_pair_sum: tail bound above budget");
    return ps.value / z2s;
}

Scenario zeta_dist_scenario(const std::vector<double>& sigmas) {
    for (double s : sigmas)
        if (!(s > 1.0 && s <= 2.0))
            throw std::domain_error("zeta_dist_scenario: sigma outside (1, 2]");
    Scenario s;
    s.name = "zeta-dist";
    s.dim = 1;
    s.index_set = sigmas;
    s.scaling.dim = 1;
    s.scaling.a_of = [](double sg) { return Mat2::scalar(1.0 / (sg - 1.0)); };
    s.reference = engine::laplace_law();
    s.discrete = true;
    s.charfn_of = [](double sg) {
        CharFn c;
        c.dim = 1;
        double z = specfun::zeta_real(sg);
        c.eval = [sg, z](Vec2 t) {
            Complex num = specfun::zeta_complex(sg, t.x);
            return Complex(std::norm(num) / (z * z), 0.0);
        };
        return c;
    };
    s.exact_prob = [](double sg, const Region& B) {
        // Y = log(n/k): alpha < k/n < beta with alpha = e^{-b}, beta = e^{-a}
        double z = specfun::zeta_real(sg);
        auto ps = pair_sum_all(std::exp(-B.p[1]), std::exp(-B.p[0]), sg);
        if (ps.error_bound > 1e-8 * std::max(ps.value, 1e-300) * 10.0 + 1e-12)
            throw nonconvergence_error("zeta_dist exact_prob: truncation tail above budget");
        return ps.value / (z * z);
    };
    s.sampler = [](double sg, SplitRng& rng) {
        double z = specfun::zeta_real(sg);
        auto draw = [&]() -> double {  // returns log(k) for k ~ mu^sigma support
            double u = rng.next_double();
            double target = (1.0 - u) * z;  // want smallest m with tail(m) <= target
            if (specfun::zeta_tail(sg, 1.0) > target) {
                // binary search over m in [1, 2^62]
                double lo = 1.0, hi = 4.6e18;
                if (specfun::zeta_tail(sg, hi) > target) return std::log(hi);
                while (hi - lo > 0.5) {
                    double mid = std::floor((lo + hi) / 2.0);
                    if (specfun::zeta_tail(sg, mid) <= target)
                        hi = mid;
                    else
                        lo = mid;
                }
                return std::log(hi);
            }
            return 0.0;  // m = 1
        };
        double lk = draw(), ln = draw();
        return Vec2{ln - lk, 0.0};
    };
    return s;
}

// ------------------------------------------------------------- squarefree

namespace {

struct PrimeTable {
    std::vector<long long> primes;
    std::vector<double> logs;
};

std::shared_ptr<const PrimeTable> primes_upto(long long x) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const PrimeTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
    }
    auto tab = std::make_shared<PrimeTable>();
    tab->primes = arith::sieve_primes(x);
    tab->logs.reserve(tab->primes.size());
    for (long long p : tab->primes) tab->logs.push_back(std::log(double(p)));
    std::lock_guard<std::mutex> lock(mu);
    cache[x] = tab;
    return tab;
}

// inverse-transform binomial draw, exact, for small m q
long long binomial_small(long long m, double q, SplitRng& rng) {
    if (m <= 0 || q <= 0.0) return 0;
    double u = rng.next_double();
    double p = std::exp(double(m) * std::log1p(-q));  // P[0]
    double cdf = p;
    long long k = 0;
    while (u > cdf && k < m) {
        p *= double(m - k) / double(k + 1) * q / (1.0 - q);
        ++k;
        cdf += p;
    }
    return k;
}

// lattice pmf by inversion of a 2pi-periodic even characteristic function
double lattice_interval_prob(const std::function<double(double)>& charfn_real,
                             double a, double b) {
    long long m0 = (long long)std::floor(a) + 1;
    long long m1 = (long long)std::ceil(b) - 1;
    if (double(m0) == a) ++m0;  // open interval
    if (double(m1) == b) --m1;
    if (m0 > m1) return 0.0;
    int nodes = 1 << 13;
    double prob = 0.0;
    std::vector<double> phis(std::size_t(nodes), 0.0);
    for (int i = 0; i < nodes; ++i) phis[std::size_t(i)] = charfn_real(pi * (i + 0.5) / nodes);
    for (long long m = m0; m <= m1; ++m) {
        double acc = 0.0;
        for (int i = 0; i < nodes; ++i)
            acc += phis[std::size_t(i)] * std::cos(double(m) * pi * (i + 0.5) / nodes);
        prob += acc / nodes;  // (1/pi) int_0^pi phi cos(m theta) dtheta
    }
    return std::max(0.0, prob);
}

}  // namespace

double squarefree_limit_charfn(double t) {
    double at = std::abs(t);
    if (at == 0.0) return 1.0;
    if (at <= 1e-3) {
        auto f = [at](double v) {
            if (v < 1e-14) return at * at * v / 4.0;
            double s = std::sin(at * v / 2.0);
            return s * s / v;
        };
        double I = quadrature::integrate(f, 0.0, 1.0, 1e-14, 1e-12, 2000).value;
        return std::exp(-4.0 * I);
    }
    return std::exp(-2.0 * euler_gamma - 2.0 * std::log(at) +
                    2.0 * specfun::cosine_integral(at));
}

Scenario squarefree_scenario(const std::vector<double>& xs,
                             const SquarefreeOptions& opt) {
    Scenario s;
    s.dim = 1;
    s.index_set = xs;
    s.scaling.dim = 1;
    s.reference = engine::squarefree_phi_law();

    switch (opt.variant) {
        case SquarefreeVariant::symmetrized: {
            s.name = "squarefree";
            s.discrete = true;
            long long cap = capacity_limit(100000);
            for (double x : xs)
                if ((long long)x > cap)
                    throw capacity_error("squarefree_scenario: x above capacity");
            s.scaling.a_of = [](double x) {
                auto tab = primes_upto((long long)x);
                return Mat2::scalar(tab->logs.back());
            };
            s.charfn_of = [](double x) {
                CharFn c;
                c.dim = 1;
                auto tab = primes_upto((long long)x);
                c.eval = [tab](Vec2 t) {
                    double logsum = 0.0;
                    for (std::size_t i = 0; i < tab->primes.size(); ++i) {
                        double p = double(tab->primes[i]);
                        double w = 4.0 * p / ((p + 1.0) * (p + 1.0));
                        double sn = std::sin(0.5 * t.x * tab->logs[i]);
                        logsum += std::log1p(-w * sn * sn);
                    }
                    return Complex(std::exp(logsum), 0.0);
                };
                return c;
            };
            s.sampler = [](double x, SplitRng& rng) {
                auto tab = primes_upto((long long)x);
                double sum = 0.0;
                for (std::size_t i = 0; i < tab->primes.size(); ++i) {
                    double p = double(tab->primes[i]);
                    double q = p / ((p + 1.0) * (p + 1.0));
                    double u = rng.next_double();
                    if (u < q)
                        sum += tab->logs[i];
                    else if (u < 2.0 * q)
                        sum -= tab->logs[i];
                }
                return Vec2{sum, 0.0};
            };
            return s;
        }
        case SquarefreeVariant::one_sided: {
            s.name = "squarefree-one-sided";
            s.discrete = true;
            s.scaling.a_of = [](double x) {
                auto tab = primes_upto((long long)x);
                return Mat2::scalar(tab->logs.back());
            };
            s.charfn_of = [](double x) {
                CharFn c;
                c.dim = 1;
                auto tab = primes_upto((long long)x);
                c.eval = [tab](Vec2 t) {
                    Complex logsum(0.0);
                    for (std::size_t i = 0; i < tab->primes.size(); ++i) {
                        double p = double(tab->primes[i]);
                        Complex term =
                            (p + std::exp(Complex(0.0, t.x * tab->logs[i]))) / (p + 1.0);
                        logsum += std::log(term);
                    }
                    return std::exp(logsum);
                };
                return c;
            };
            s.exact_prob = [](double x, const Region& B) {
                // zeta_n >= 0 with atoms at log of squarefree integers:
                // P[B] = (1/Z_x) sum_{e^{a} < k < e^{b}, k squarefree} 1/k
                auto tab = primes_upto((long long)x);
                double Zlog = 0.0;
                for (long long p : tab->primes) Zlog += std::log1p(1.0 / double(p));
                double lo = std::exp(B.p[0]), hi = std::exp(B.p[1]);
                if (B.p[0] <= 0.0) lo = 1.0;  // include the empty product, log 1 = 0
                double sum = 0.0;
                for (long long k = (long long)std::ceil(lo); double(k) < hi; ++k) {
                    if (!arith::mobius_squared(k)) continue;
                    long long rest = k;
                    for (long long p : tab->primes) {
                        while (rest % p == 0) rest /= p;
                        if (rest == 1) break;
                    }
                    if (rest != 1) continue;  // a prime factor above x
                    sum += 1.0 / double(k);
                }
                return sum * std::exp(-Zlog);
            };
            s.sampler = [](double x, SplitRng& rng) {
                auto tab = primes_upto((long long)x);
                double sum = 0.0;
                for (std::size_t i = 0; i < tab->primes.size(); ++i) {
                    double p = double(tab->primes[i]);
                    if (rng.next_double() < 1.0 / (p + 1.0)) sum += tab->logs[i];
                }
                return Vec2{sum, 0.0};
            };
            return s;
        }
        case SquarefreeVariant::fq: {
            s.name = "squarefree-fq";
            s.discrete = true;
            long long q = opt.q;
            if (q < 2) throw std::domain_error("squarefree_scenario: q >= 2");
            for (double n : xs)
                if (n < 1 || n > 62)
                    throw capacity_error("squarefree_scenario: fq degree cap is 62");
            s.scaling.a_of = [](double n) { return Mat2::scalar(n); };
            auto charfn_real = [q](long long n, double t) {
                double logsum = 0.0;
                for (int j = 1; j <= int(n); ++j) {
                    double m = std::pow(double(q), j);
                    double w = 4.0 * m / ((m + 1.0) * (m + 1.0));
                    double sn = std::sin(0.5 * double(j) * t);
                    double cnt = double(arith::count_irreducible(q, j));
                    logsum += cnt * std::log1p(-w * sn * sn);
                }
                return std::exp(logsum);
            };
            s.charfn_of = [charfn_real](double n) {
                CharFn c;
                c.dim = 1;
                long long nn = (long long)n;
                c.eval = [charfn_real, nn](Vec2 t) {
                    return Complex(charfn_real(nn, t.x), 0.0);
                };
                return c;
            };
            s.exact_prob = [charfn_real](double n, const Region& B) {
                long long nn = (long long)n;
                return lattice_interval_prob(
                    [&](double th) { return charfn_real(nn, th); }, B.p[0], B.p[1]);
            };
            s.sampler = [q](double n, SplitRng& rng) {
                long long total = 0;
                for (int j = 1; j <= int(n); ++j) {
                    double m = std::pow(double(q), j);
                    double pq = m / ((m + 1.0) * (m + 1.0));
                    long long cnt = arith::count_irreducible(q, j);
                    long long contrib = 0;
                    for (int copy = 0; copy < 2; ++copy) {
                        long long plus = binomial_small(cnt, pq, rng);
                        long long minus =
                            binomial_small(cnt - plus, pq / (1.0 - pq), rng);
                        long long sgn = copy == 0 ? 1 : -1;
                        contrib += sgn * (plus - minus);
                    }
                    total += (long long)j * contrib;
                }
                return Vec2{double(total), 0.0};
            };
            return s;
        }
        case SquarefreeVariant::lattice: {
            s.name = "squarefree-lattice";
            s.discrete = true;
            for (double n : xs)
                if (n < 2 || n > 2000)
                    throw capacity_error("squarefree_scenario: lattice cap is 2000");
            s.scaling.a_of = [](double n) { return Mat2::scalar(n); };
            auto charfn_real = [](long long n, double t) {
                double prod = 1.0;
                for (long long j = 2; j <= n; ++j) {
                    double w = (2.0 / double(j)) * (1.0 - 1.0 / double(j));
                    prod *= 1.0 - w * (1.0 - std::cos(double(j) * t));
                }
                return prod;
            };
            s.charfn_of = [charfn_real](double n) {
                CharFn c;
                c.dim = 1;
                long long nn = (long long)n;
                c.eval = [charfn_real, nn](Vec2 t) {
                    return Complex(charfn_real(nn, t.x), 0.0);
                };
                return c;
            };
            s.exact_prob = [charfn_real](double n, const Region& B) {
                long long nn = (long long)n;
                return lattice_interval_prob(
                    [&](double th) { return charfn_real(nn, th); }, B.p[0], B.p[1]);
            };
            s.sampler = [](double n, SplitRng& rng) {
                long long sum = 0;
                for (long long j = 1; j <= (long long)n; ++j) {
                    if (rng.next_double() < 1.0 / double(j)) sum += j;
                    if (rng.next_double() < 1.0 / double(j)) sum -= j;
                }
                return Vec2{double(sum), 0.0};
            };
            return s;
        }
    }
    throw std::domain_error("squarefree_scenario: unknown variant");
}

EtaConstant eta_constant() {
    EtaConstant out;
    // route 1: (1/pi) int_0^inf phi(t) dt with an analytic tail beyond T
    double T = 20000.0;
    double I = quadrature::integrate([](double t) { return squarefree_limit_charfn(t); },
                                     1e-9, 8.0, 1e-12, 1e-11, 4000)
                   .value;
    double lo = 8.0;
    while (lo < T) {
        double hi = std::min(T, lo + 4.0);
        I += quadrature::integrate(
                 [](double t) { return squarefree_limit_charfn(t); }, lo, hi, 1e-13,
                 1e-11, 200)
                 .value;
        lo = hi;
    }
    double tail = std::exp(-2.0 * euler_gamma) *
                  (1.0 / T + 2.0 * std::cos(T) / (T * T * T) + 1.0 / (3.0 * T * T * T));
    out.value = (I + tail) / pi;
    // route 2: e^{-2 gamma} (1 + int_1^40 rho^2)
    double R = quadrature::integrate(
                   [](double u) {
                       double r = specfun::dickman_rho(u);
                       return r * r;
                   },
                   1.0, 40.0, 1e-12, 1e-10, 4000)
                   .value;
    out.rho_route = std::exp(-2.0 * euler_gamma) * (1.0 + R);
    out.residual = std::abs(out.value - out.rho_route);
    if (out.residual > 1e-4)
        throw nonconvergence_error("eta_constant: the two routes disagree above 1e-4");
    return out;
}

OneSidedLimit one_sided_limit(double a, long long x, long long samples,
                              std::uint64_t seed, int workers) {
    if (!(a > 0.0)) throw std::domain_error("one_sided_limit: a <= 0");
    OneSidedLimit out;
    double ea = std::exp(a);
    double msum = 0.0;
    for (long long k = 1; double(k) < ea; ++k)
        if (arith::mobius_squared(k)) msum += 1.0 / double(k);
    out.constant = specfun::zeta_real(2.0) * std::exp(-euler_gamma) * msum;

    auto tab = primes_upto(x);
    double logx = tab->logs.back();
    double Zlog = 0.0;
    for (long long p : tab->primes) Zlog += std::log1p(1.0 / double(p));
    // exact (log x) P[zeta_n < a]: atoms at squarefree k < e^a
    double esum = 0.0;
    for (long long k = 1; double(k) < ea; ++k) {
        if (!arith::mobius_squared(k)) continue;
        if (double(k) > double(x)) {
            long long rest = k;
            for (long long p : tab->primes) {
                while (rest % p == 0) rest /= p;
                if (rest == 1) break;
            }
            if (rest != 1) continue;
        }
        esum += 1.0 / double(k);
    }
    out.exact_at_x = logx * esum * std::exp(-Zlog);

    auto acc = mc_run(samples, seed, workers,
                      [&](std::uint64_t block, long long cnt, McAccumulator& o) {
                          SplitRng rng(seed, block);
                          for (long long i = 0; i < cnt; ++i) {
                              double sum = 0.0;
                              for (std::size_t j = 0; j < tab->primes.size(); ++j) {
                                  double p = double(tab->primes[j]);
                                  if (rng.next_double() < 1.0 / (p + 1.0))
                                      sum += tab->logs[j];
                              }
                              o.sum += sum < a ? 1.0 : 0.0;
                              o.count += 1;
                          }
                      });
    double phat = acc.sum / double(acc.count);
    out.mc_estimate = logx * phat;
    out.mc_stderr = logx * std::sqrt(phat * (1.0 - phat) / double(acc.count));
    return out;
}

}  // namespace modphi::scenarios

// squarefree reference law lives here, next to the charfn it wraps
namespace modphi::engine {

ReferenceLaw squarefree_phi_law() {
    ReferenceLaw law;
    law.name = "squarefree-phi";
    law.phi.dim = 1;
    law.phi.eval = [](Vec2 t) {
        return Complex(scenarios::squarefree_limit_charfn(t.x), 0.0);
    };
    // phi <= min(1, e^{2 max Ci - 2 gamma} / t^2); max Ci ~ 0.4720
    law.phi.decay_bound = [](double r) {
        double c = std::exp(2.0 * 0.473 - 2.0 * specfun::euler_gamma);
        return std::min(1.0, c / (r * r));
    };
    law.density = [](Vec2 x) {
        static const double eta = [] {
            return scenarios::eta_constant().value;
        }();
        if (x.x == 0.0) return eta;
        // (1/pi) int_0^inf phi(t) cos(xt) dt, chunked, with a t^{-2} tail bound
        double T = 50000.0;
        double I = quadrature::integrate(
                       [&](double t) {
                           return scenarios::squarefree_limit_charfn(t) *
                                  std::cos(x.x * t);
                       },
                       1e-9, 8.0, 1e-12, 1e-11, 4000)
                       .value;
        double lo = 8.0;
        double chunk = 4.0 / (1.0 + std::abs(x.x));
        while (lo < T) {
            double hi = std::min(T, lo + chunk);
            I += quadrature::integrate(
                     [&](double t) {
                         return scenarios::squarefree_limit_charfn(t) *
                                std::cos(x.x * t);
                     },
                     lo, hi, 1e-13, 1e-11, 100)
                     .value;
            lo = hi;
        }
        return I / std::numbers::pi;
    };
    return law;
}

}  // namespace modphi::engine
