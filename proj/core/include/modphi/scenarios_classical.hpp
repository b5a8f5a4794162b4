#pragma once

#include "modphi/engine.hpp"

#include <vector>

namespace modphi::scenarios {

using engine::Scenario;

enum class StableIncrement { exact_stable, uniform_symmetric, cauchy };

/// Sums of iid symmetric increments in the domain of attraction of the
/// stable law exp(-|t|^p). b_of overrides the normalizing sequence b_n
/// (defaults: n^{1/p} for exact-stable/cauchy, sqrt(n/6) for
/// uniform-symmetric, whose variance 1/3 targets exp(-t^2)).
Scenario stable_scenario(double p, StableIncrement increment,
                         const std::vector<double>& ns,
                         const std::function<double(double)>& b_of = {});

/// E[exp(i t theta_u)] for the winding angle at time u = exp(log_u),
/// evaluated in the log domain so that log u up to ~1e8 is fine.
double winding_charfn(double log_u, double t);

/// Winding-number scenario; indices are log u values (> 1).
Scenario winding_scenario(const std::vector<double>& log_us);

enum class PoissonVariant { poisson, permutation_cycles };

/// Relaxed Poisson: X = (P - lambda)/lambda^{1/3}, A = lambda^{1/6}.
/// The permutation variant uses the cycle count of a uniform permutation
/// of n letters with lambda = log n (indices are the n values).
Scenario poisson_scenario(const std::vector<double>& lambdas,
                          PoissonVariant variant = PoissonVariant::poisson);

/// X_n = n (E1 + E2) with exact Gamma(2,1) probabilities; c > 0 applies
/// the mean shift alpha_n = c n.
Scenario gamma_shift_scenario(const std::vector<double>& ns, double c);

}  // namespace modphi::scenarios
