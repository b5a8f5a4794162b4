#pragma once

#include <stdexcept>
#include <string>

namespace modphi {

/// Raised when an input exceeds a configured enumeration/sieve cap.
/// Caps can be raised with the MODPHI_CAPACITY environment variable.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a series or iteration fails to reach the requested
/// tolerance within its term budget.
struct nonconvergence_error : std::runtime_error {
    explicit nonconvergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the band-limited sandwich when the epsilon ladder bottoms
/// out before the gap target is met. Carries the best gap achieved.
struct tuning_error : std::runtime_error {
    tuning_error(const std::string& what, double gap)
        : std::runtime_error(what), achieved_gap(gap) {}
    double achieved_gap;
};

/// Raised by local_limit when the requested probability backend is not
/// available for the scenario (e.g. analytic inversion of an atomic law).
struct method_unavailable_error : std::runtime_error {
    explicit method_unavailable_error(const std::string& what) : std::runtime_error(what) {}
};

inline long long capacity_limit(long long default_cap) {
    if (const char* env = std::getenv("MODPHI_CAPACITY")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return default_cap;
}

}  // namespace modphi
