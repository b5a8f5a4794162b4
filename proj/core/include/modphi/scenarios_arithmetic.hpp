#pragma once

#include "modphi/engine.hpp"

#include <vector>

namespace modphi::scenarios {

using engine::Scenario;

/// Dedekind-sum study on Omega_N = {(d,c) : 0 < d < c < N, gcd = 1} with
/// X_N = s(d,c), scaled by A_N = log N / (2 pi tau_N). taus pairs with ns;
/// when empty the default tau_N = (log N)^{1/4} is used.
Scenario dedekind_scenario(const std::vector<double>& ns,
                           const std::vector<double>& taus = {});

struct VardiCheck {
    double fitted_c = 0.0;     // smallest C with |phi_N(2 pi t)| <= C N^{-|t|} + N^{-1/3}
    double worst_ratio = 0.0;  // max |phi_N(2 pi t)| / (fitted bound)
};

/// Exact |phi_N(2 pi t)| by enumeration against the Vardi-type envelope,
/// t in (0, 1/4].
VardiCheck vardi_bound_check(long long N, const std::vector<double>& t_grid);

/// Symmetrized zeta-distribution study: Y = X1 - X2 with X ~ mu^sigma,
/// indices are sigma values in (1, 2]; A = 1/(sigma - 1).
Scenario zeta_dist_scenario(const std::vector<double>& sigmas);

/// sum over k/n in (alpha, beta), gcd(k,n) = 1, of (kn)^{-sigma}, to ~1e-8
/// relative accuracy via Euler-Maclaurin acceleration (fine down to
/// sigma = 1.001).
double coprime_pair_sum(double alpha, double beta, double sigma);

/// Limit characteristic function of the squarefree model:
/// exp(-4 int_0^1 sin^2(tv/2) dv/v); quadrature form for tiny |t|,
/// cosine-integral closed form otherwise.
double squarefree_limit_charfn(double t);

enum class SquarefreeVariant { symmetrized, one_sided, fq, lattice };

struct SquarefreeOptions {
    SquarefreeVariant variant = SquarefreeVariant::symmetrized;
    long long q = 2;  // fq variant only
};

/// The squarefree random model and its counterexample variants.
/// Indices: prime cutoff x (symmetrized/one-sided), degree cap n (fq),
/// summand count n (lattice).
Scenario squarefree_scenario(const std::vector<double>& xs,
                             const SquarefreeOptions& opt = {});

struct EtaConstant {
    double value = 0.0;      // (1/2pi) int phi
    double residual = 0.0;   // |phi route - rho route|
    double rho_route = 0.0;  // e^{-2 gamma} int rho^2
};

/// eta = (1/2pi) int phi(t) dt = e^{-2 gamma} int rho(u)^2 du, computed
/// both ways; throws when the routes disagree by more than 1e-4.
EtaConstant eta_constant();

struct OneSidedLimit {
    double constant = 0.0;     // zeta(2) e^{-gamma} sum_{k < e^a} mu^2(k)/k
    double exact_at_x = 0.0;   // (log x) P[zeta_n < a] by exact summation
    double mc_estimate = 0.0;  // same by sampling nu_p
    double mc_stderr = 0.0;
};

OneSidedLimit one_sided_limit(double a, long long x = 10000,
                              long long samples = 200000,
                              std::uint64_t seed = 0, int workers = 0);

}  // namespace modphi::scenarios
