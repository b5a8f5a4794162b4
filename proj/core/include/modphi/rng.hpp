#pragma once

#include <cstdint>
#include <optional>

namespace modphi {

/// Counter-splittable PRNG: xoshiro256++ seeded through splitmix64 from a
/// (seed, stream) pair. Streams with distinct ids are independent for
/// Monte Carlo purposes, and every drawing algorithm here is fixed by this
/// header, so results are reproducible bit-for-bit for a given (seed,
/// stream) regardless of platform rounding of std:: distributions.
class SplitRng {
  public:
    SplitRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// uniform on [0, 1)
    double next_double();
    /// uniform on (lo, hi)
    double uniform(double lo, double hi);
    /// standard normal (Marsaglia polar, one spare cached)
    double gaussian();
    /// exponential with mean 1
    double exponential();
    /// Poisson; inversion for lambda < 10, PTRD otherwise (exact for all lambda)
    long long poisson(double lambda);
    /// true with probability p
    bool bernoulli(double p) { return next_double() < p; }

  private:
    std::uint64_t s_[4];
    std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace modphi
