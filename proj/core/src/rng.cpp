#include "modphi/rng.hpp"

#include <cmath>

namespace modphi {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t st = seed ^ (0xa0761d6478bd642fULL * (stream + 1));
    for (auto& s : s_) s = splitmix64(st);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
}  // namespace

std::uint64_t SplitRng::next_u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double SplitRng::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double SplitRng::gaussian() {
    if (spare_) {
        double v = *spare_;
        spare_.reset();
        return v;
    }
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    return u * m;
}

double SplitRng::exponential() {
    double u;
    do u = next_double();
    while (u <= 0.0);
    return -std::log(u);
}

long long SplitRng::poisson(double lambda) {
    if (lambda < 10.0) {
        double L = std::exp(-lambda), p = 1.0;
        long long k = -1;
        do {
            ++k;
            p *= next_double();
        } while (p > L);
        return k;
    }
    // PTRD (Hoermann 1993), exact transformed rejection for lambda >= 10.
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u, v = next_double();
        if (v <= 0.86 * vr) {
            u = v / vr - 0.43;
            return (long long)std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u +
                                         lambda + 0.445);
        }
        if (v >= vr) {
            u = next_double() - 0.5;
        } else {
            u = v / vr - 0.93;
            u = (u < 0 ? -0.5 : 0.5) - u;
            v = next_double() * vr;
        }
        double us = 0.5 - std::abs(u);
        if (us < 0.013 && v > us) continue;
        double k = std::floor((2.0 * a / us + b) * u + lambda + 0.445);
        v = v * inv_alpha / (a / (us * us) + b);
        if (k >= 10.0) {
            if (std::log(v * slam) <=
                (k + 0.5) * std::log(lambda / k) - lambda -
                    0.5 * std::log(2.0 * M_PI) + k -
                    (1.0 / 12.0 - 1.0 / (360.0 * k * k)) / k)
                return (long long)k;
        } else if (k >= 0.0) {
            if (std::log(v) <= k * loglam - lambda - std::lgamma(k + 1.0))
                return (long long)k;
        }
    }
}

}  // namespace modphi
