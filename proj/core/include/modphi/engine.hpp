#pragma once

#include "modphi/fourier.hpp"
#include "modphi/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace modphi::engine {

using fourier::CharFn;
using fourier::Complex;
using fourier::Region;
using fourier::Vec2;

/// dim x dim matrix, dim <= 2; for dim = 1 only a is meaningful and the
/// matrix acts as the scalar a.
struct Mat2 {
    int dim = 1;
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 scalar(double v) { return {1, v, 0.0, 0.0, 1.0}; }
    static Mat2 diag(double x, double y) { return {2, x, 0.0, 0.0, y}; }
    static Mat2 anti_diag(double x, double y) { return {2, 0.0, x, y, 0.0}; }
    static Mat2 isotropic(double v) { return {2, v, 0.0, 0.0, v}; }

    Vec2 apply(Vec2 v) const;
    Vec2 apply_transpose(Vec2 v) const;
    Mat2 inverse() const;
    Mat2 times(const Mat2& o) const;  // this * o as maps: apply o first
    double det() const { return dim == 1 ? a : a * d - b * c; }
    double abs_det() const { return std::abs(det()); }
    double op_norm() const;  // largest singular value
};

/// The scaling maps n -> A_n with inverses Sigma_n = A_n^{-1}.
struct ScalingSeq {
    int dim = 1;
    std::function<Mat2(double)> a_of;

    Mat2 a(double n) const { return a_of(n); }
    Mat2 sigma(double n) const { return a_of(n).inverse(); }
    double det_a(double n) const { return a_of(n).abs_det(); }
    /// checks A Sigma = I to 1e-12 and that |Sigma| decreases along ns
    void validate(const std::vector<double>& ns) const;
};

/// Limit law: integrable characteristic function with its density.
struct ReferenceLaw {
    std::string name;
    CharFn phi;
    std::function<double(Vec2)> density;  // closed form or pinned by tests
    double density_at(Vec2 x) const { return density(x); }
};

ReferenceLaw gaussian_real_law();
ReferenceLaw gaussian_complex_law();  // standard bivariate normal on C ~ R^2
ReferenceLaw cauchy_law();
ReferenceLaw laplace_law();
ReferenceLaw stable_law(double p);
ReferenceLaw squarefree_phi_law();
ReferenceLaw exp_sum_law();  // phi(t) = 1/(1-it)^2, density x e^{-x} on [0,inf)

/// A mod-phi convergence study: indexed characteristic functions with a
/// scaling sequence and a reference law, plus optional exact-probability
/// and sampling backends and an optional domination envelope per cutoff k.
struct Scenario {
    std::string name;
    int dim = 1;
    std::vector<double> index_set;
    std::function<CharFn(double)> charfn_of;
    ScalingSeq scaling;
    ReferenceLaw reference;
    /// exact P[X_n in region]; empty when unavailable
    std::function<double(double, const Region&)> exact_prob;
    /// draws X_n; empty when unavailable
    std::function<Vec2(double, SplitRng&)> sampler;
    /// importance weight attached to the last sampler draw (1 when absent)
    std::function<double(double, SplitRng&, Vec2*)> weighted_sampler;
    /// k -> integrable radial envelope h with |phi_n(Sigma_n^* t)| <= h(|t|)
    /// on {|Sigma_n^* t| <= k}
    std::function<std::function<double(double)>(double)> domination_h;
    bool discrete = false;

    Complex charfn(double n, Vec2 t) const { return charfn_of(n).eval(t); }
};

enum class Method { exact, analytic, monte_carlo };

std::string method_name(Method m);

struct LocalLimitReport {
    double index = 0.0;
    Region region;
    double scaled_probability = 0.0;
    double predicted_limit = 0.0;
    Method method = Method::exact;
    std::optional<double> std_error;  // monte-carlo only
    std::optional<long long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> effective_samples;  // weighted Monte Carlo only
};

struct McParams {
    long long samples = 100000;
    std::uint64_t seed = 0;
    int workers = 0;  // 0 = hardware concurrency
};

/// |det A_n| P[X_n in B] with the reference prediction (d mu / dm)(0) m(B).
LocalLimitReport local_limit(const Scenario& scn, double n, const Region& region,
                             Method method, const McParams& mc = {});

struct H2Result {
    std::vector<double> deviations;  // sup_t |phi_n(Sigma_n^* t) - phi(t)| per n
    bool improving = false;
};

/// H2 diagnostic on a fixed t grid (continuous convergence at 0 checked as
/// uniform convergence on the grid).
H2Result check_h2(const Scenario& scn, const std::vector<double>& ns,
                  const std::vector<Vec2>& t_grid);

struct DominationResult {
    bool holds = false;
    double worst_ratio = 0.0;  // max |phi_n(Sigma_n^* t)| / h(|t|)
};

DominationResult check_h3_domination(const Scenario& scn, double k,
                                     const std::vector<double>& ns,
                                     const std::vector<Vec2>& t_grid);

struct IntegralTrend {
    std::vector<double> values;
    bool improving = false;
};

/// H3': |det A_n| int_{eps <= |t| <= k} |phi_n(t)| dt per n.
IntegralTrend check_h3prime(const Scenario& scn, double eps, double k,
                            const std::vector<double>& ns);

/// H4': int_{a <= |t|, |Sigma_n^* t| <= eps} |phi_n(Sigma_n^* t)| dt per n,
/// with the reference tail int_{|t| >= a} |phi| for calibration.
struct H4Result {
    std::vector<double> values;
    double reference_tail = 0.0;
};

H4Result check_h4prime(const Scenario& scn, double a, double eps,
                       const std::vector<double>& ns);

/// Mean shift: Y_n = X_n - alpha_n, psi(t) = phi(t) e^{-i t . alpha},
/// density recentered at alpha. alpha_n must calibrate: Sigma_n alpha_n ->
/// alpha along the index set (checked; throws on drift).
Scenario shift_mean(const Scenario& scn, Vec2 alpha,
                    const std::function<Vec2(double)>& alpha_n);

/// Balancedness: max over the surface {|(T_n Sigma_n)^* t| = 1} of
/// |Sigma_n^* t|, searched over a fixed 720-direction grid; holds iff the
/// max stays <= c_max over ns. Always holds in d = 1.
struct BalancednessResult {
    bool holds = false;
    double witness = 0.0;  // the max found (a valid C when holds)
    Vec2 violating_t;
};

BalancednessResult balancedness_check(const std::function<Mat2(double)>& sigma_n,
                                      const std::function<Mat2(double)>& t_n,
                                      const std::vector<double>& ns, double c_max);

/// Linear change of variable: the scenario of T_n^{-1} X_n with scaling
/// Sigma_n T_n and prediction scale |det A_n| / |det T_n|. Requires
/// T_n^{-1} -> 0 and Sigma_n T_n -> 0 numerically, and the balancedness
/// check unless override is set.
Scenario linear_change(const Scenario& scn, const std::function<Mat2(double)>& t_n,
                       bool override_balancedness = false);

/// Monotone-trend flag: values nonincreasing within `slack` relative
/// cushion and strictly improved (or negligible) at the end.
bool trend_improving(const std::vector<double>& values, double slack = 0.10);

}  // namespace modphi::engine
