#pragma once

#include "modphi/engine.hpp"

#include <Eigen/Dense>

#include <vector>

namespace modphi::scenarios {

using engine::Scenario;

enum class GroupFamily { U, SO, USp };

struct GroupLabel {
    GroupFamily family = GroupFamily::U;
    int n = 1;  // matrix size is n for U, 2n for SO and USp
    int matrix_size() const { return family == GroupFamily::U ? n : 2 * n; }
};

/// Haar-distributed sample: complex Ginibre QR with phase normalization (U),
/// real Ginibre QR with sign normalization and a determinant reflection fix
/// (SO), quaternion Gram-Schmidt on the 2n x 2n complex embedding (USp).
Eigen::MatrixXcd haar_sample(GroupLabel group, SplitRng& rng);

/// The symplectic form J (0, I; -I, 0) used by the USp embedding.
Eigen::MatrixXcd symplectic_form(int n);

/// log det(1 - g) with the Taylor determination at z = 1: the sum of
/// principal log(1 - lambda) over eigenvalues. Real part only is
/// meaningful for SO/USp; both parts for U.
engine::Vec2 log_det_one_minus(const Eigen::MatrixXcd& g, GroupFamily family);

/// Keating-Snaith limiting functions Phi_G in terms of Barnes G.
engine::Complex phi_u(double t1, double t2);
engine::Complex phi_usp(double t);
engine::Complex phi_so(double t);

/// Characteristic-polynomial scenario for a classical compact family:
/// X_n = log det(1 - g_n) - alpha_n with the alpha_n/A_n tables; the
/// characteristic function is the asymptotic surrogate
/// phi(A_n^* t) Phi_G(t), quoted valid for |t| <= n^{1/6}.
Scenario ks_scenario(GroupFamily family, const std::vector<double>& ns);

/// Size-biased SO(2n) ensemble nu_n = (1/2) det(1 - g) d mu_n, by
/// importance weighting over Haar samples; the characteristic function is
/// the exact finite-n Gamma product.
Scenario biased_so_scenario(const std::vector<double>& ns);

/// 2 E[e^{i t Y_n}] for Y_n = log det(1 - g_n) under Haar SO(2n):
/// 2^{2n(1+it)} prod_j Gamma(j+n-1) Gamma(j+it+1/2) / (Gamma(j-1/2) Gamma(j+it+n)).
engine::Complex biased_so_exact_product(int n, double t);

/// Stochastic zeta model: X_n = -sum_{p <= x} log(1 - Y_p / sqrt p) with
/// Y_p uniform on the circle; d = 2, prime-product characteristic function
/// of Gauss 2F1 factors, A_n = sqrt(log log n / 2) I.
Scenario stochastic_zeta_scenario(const std::vector<double>& xs);

struct KsPhiValue {
    engine::Complex value;
    double truncation_bound = 0.0;
    long long primes_used = 0;
};

/// The conjectural limiting function Phi(t1,t2): Phi_U times the
/// regularized prime product of (1-1/p)^{ab} 2F1(a,b;1;1/p) with
/// a = (i t1 + t2)/2, b = (i t1 - t2)/2; the product is grown until the
/// tail estimate drops below 1e-8.
KsPhiValue ks_conjecture_phi(double t1, double t2);

}  // namespace modphi::scenarios
