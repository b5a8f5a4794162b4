#include "modphi/arith.hpp"

#include "modphi/errors.hpp"
#include "modphi/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace modphi::arith {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    __int128 g = gcd128(den, o.den);
    __int128 l = den / g * o.den;
    return Rational(num * (o.den / g) + o.num * (den / g), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    __int128 g1 = gcd128(num, o.den), g2 = gcd128(o.num, den);
    return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

bool Rational::operator<(const Rational& o) const {
    return num * o.den < o.num * den;
}

double Rational::to_double() const { return double(num) / double(den); }

std::string Rational::to_string() const {
    auto i128_str = [](__int128 v) {
        if (v == 0) return std::string("0");
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v) {
            s.push_back(char('0' + int(v % 10)));
            v /= 10;
        }
        if (neg) s.push_back('-');
        return std::string(s.rbegin(), s.rend());
    };
    return i128_str(num) + "/" + i128_str(den);
}

std::vector<long long> sieve_primes(long long limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit < 2");
    long long cap = capacity_limit(100'000'000LL);
    if (limit > cap)
        throw capacity_error("sieve_primes: limit above capacity " + std::to_string(cap));
    std::vector<bool> comp(std::size_t(limit) + 1, false);
    std::vector<long long> primes;
    primes.reserve(std::size_t(limit > 16 ? double(limit) / (std::log(double(limit)) - 1.1)
                                          : 8));
    for (long long i = 2; i <= limit; ++i) {
        if (!comp[std::size_t(i)]) {
            primes.push_back(i);
            for (long long j = i * i; j <= limit; j += i) comp[std::size_t(j)] = true;
        }
    }
    return primes;
}

int mobius_squared(long long n) {
    if (n < 1) throw std::domain_error("mobius_squared: n < 1");
    if (n % 4 == 0) return 0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
        }
    }
    return 1;
}

Rational dedekind_sum(long long d, long long c) {
    if (!(0 < d && d < c) || std::gcd(d, c) != 1)
        throw std::domain_error("dedekind_sum: need 0 < d < c with gcd(d,c) = 1");
    // reciprocity: s(d,c) + s(c,d) = -1/4 + (d^2 + c^2 + 1)/(12 d c),
    // with s(c mod d, d) = s(c, d); recursion bottoms out at s(0, 1) = 0.
    Rational s(0);
    long long sign = 1;
    while (d > 0) {
        __int128 dd = d, cc = c;
        Rational recip(dd * dd + cc * cc + 1, __int128(12) * dd * cc);
        Rational step = recip - Rational(1, 4);
        s = s + (sign > 0 ? step : -step);
        long long r = c % d;
        c = d;
        d = r;
        sign = -sign;
    }
    return s;
}

Rational dedekind_sum_bruteforce(long long d, long long c) {
    if (!(0 < d && d < c) || std::gcd(d, c) != 1)
        throw std::domain_error("dedekind_sum_bruteforce: bad arguments");
    if (c > 100'000)
        throw capacity_error("dedekind_sum_bruteforce: c above oracle cap 1e5");
    // ((k/c)) ((kd/c)) with ((x)) = x - floor(x) - 1/2, 0 at integers.
    // k/c is never an integer for 0 < k < c; kd/c is an integer iff c | kd,
    // impossible under gcd(d,c)=1 for 0 < k < c.
    Rational s(0);
    for (long long k = 1; k < c; ++k) {
        long long r1 = k % c;
        long long r2 = (k * d) % c;
        // ((r/c)) = (2r - c) / (2c) for 0 < r < c
        Rational a(2 * r1 - c, 2 * c);
        Rational b(2 * r2 - c, 2 * c);
        s = s + a * b;
    }
    return s;
}

long long enumerate_coprime_pairs(long long N,
                                  const std::function<void(CoprimePair)>& sink) {
    if (N < 3) throw std::domain_error("enumerate_coprime_pairs: N < 3");
    long long cap = capacity_limit(100'000LL);
    if (N > cap)
        throw capacity_error("enumerate_coprime_pairs: N above capacity " +
                             std::to_string(cap));
    long long count = 0;
    for (long long c = 2; c < N; ++c) {
        for (long long d = 1; d < c; ++d) {
            if (std::gcd(d, c) == 1) {
                if (sink) sink({d, c});
                ++count;
            }
        }
    }
    return count;
}

long long count_irreducible(long long q, int j) {
    if (q < 2 || j < 1) throw std::domain_error("count_irreducible: q >= 2, j >= 1");
    if (j > 62) throw std::overflow_error("count_irreducible: j > 62");
    // mu over divisors of j from j's factorization
    int jj = j;
    int pf[8];
    int npf = 0;
    for (int p = 2; p * p <= jj; ++p) {
        if (jj % p == 0) {
            pf[npf++] = p;
            while (jj % p == 0) jj /= p;
        }
    }
    if (jj > 1) pf[npf++] = jj;
    auto qpow = [&](int e) -> unsigned __int128 {
        unsigned __int128 r = 1;
        for (int i = 0; i < e; ++i) {
            r *= (unsigned __int128)q;
            if (r > (unsigned __int128)1 << 126)
                throw std::overflow_error("count_irreducible: q^j overflow");
        }
        return r;
    };
    __int128 total = 0;
    for (int mask = 0; mask < (1 << npf); ++mask) {
        int d = 1, bits = 0;
        for (int i = 0; i < npf; ++i)
            if (mask & (1 << i)) {
                d *= pf[i];
                ++bits;
            }
        if (j % d != 0) continue;
        __int128 term = (__int128)qpow(j / d);
        total += (bits % 2 == 0) ? term : -term;
    }
    __int128 res = total / j;
    if (res > (__int128)0x7fffffffffffffffLL)
        throw std::overflow_error("count_irreducible: result above 64-bit range");
    return (long long)res;
}

PrimeSumComparison prime_sum_vs_integral(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime,
                                         double y, double x) {
    if (!(y >= 2.0) || !(x > y)) throw std::domain_error("prime_sum_vs_integral: need 2 <= y < x");
    long long xi = (long long)std::floor(x);
    auto primes = sieve_primes(xi);
    double ps = 0.0;
    for (long long p : primes)
        if (double(p) >= y) ps += f(double(p));
    using quadrature::integrate;
    double integral =
        integrate([&](double u) { return f(u) / std::log(u); }, y, x, 1e-12, 1e-10, 8000)
            .value;
    double env =
        x * std::abs(f(x)) / (std::log(x) * std::log(x)) +
        y * std::abs(f(y)) / (std::log(y) * std::log(y)) +
        integrate([&](double u) { return std::abs(fprime(u)) * u / (std::log(u) * std::log(u)); },
                  y, x, 1e-12, 1e-10, 8000)
            .value;
    return {ps, integral, ps - integral, env};
}

}  // namespace modphi::arith
