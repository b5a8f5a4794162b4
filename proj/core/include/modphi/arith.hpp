#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace modphi::arith {

/// Exact rational on 128-bit integers, always reduced, den > 0.
/// Wide enough for every Dedekind-sum recursion with c <= 1e6.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(__int128 n, __int128 d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;

    double to_double() const;
    std::string to_string() const;
};

struct CoprimePair {
    long long d;  // 0 < d < c
    long long c;
};

/// Primes in [2, limit], ascending. Capacity-guarded (default 1e8,
/// raisable via MODPHI_CAPACITY).
std::vector<long long> sieve_primes(long long limit);

/// mu^2(n): 1 iff n is squarefree.
int mobius_squared(long long n);

/// Dedekind sum s(d,c) = sum_{0<k<c} ((k/c))((kd/c)) by the reciprocity
/// recursion in exact rational arithmetic, O(log c).
Rational dedekind_sum(long long d, long long c);

/// Direct O(c) summation of the defining sum; test oracle, c <= 1e5.
Rational dedekind_sum_bruteforce(long long d, long long c);

/// Streams every (d, c) with 0 < d < c < N, gcd(d,c) = 1, exactly once,
/// ascending in c then d. Returns the count (= sum of phi(c), c < N).
long long enumerate_coprime_pairs(long long N,
                                  const std::function<void(CoprimePair)>& sink);

/// Number of monic irreducible polynomials of degree j over F_q:
/// (1/j) sum_{d|j} mu(d) q^{j/d}, exact.
long long count_irreducible(long long q, int j);

struct PrimeSumComparison {
    double prime_sum;       // sum over primes in [y, x] of f(p)
    double integral;        // int_y^x f(u) du / log u
    double discrepancy;     // prime_sum - integral
    double error_envelope;  // x|f(x)|/log^2 x + y|f(y)|/log^2 y + int |f'| u/log^2 u
};

/// Both sides of the prime-sum vs integral comparison with its error
/// envelope (exponent 2 in the logarithm weights).
PrimeSumComparison prime_sum_vs_integral(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime,
                                         double y, double x);

}  // namespace modphi::arith
