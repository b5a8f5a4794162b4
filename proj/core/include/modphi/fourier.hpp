#pragma once

#include "modphi/specfun.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace modphi::fourier {

using Complex = std::complex<double>;

/// Point in R^d, d <= 2; y is ignored when d = 1.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    double norm() const;
};

/// Characteristic function of a probability law on R^dim.
/// eval(0) = 1, |eval(t)| <= 1, eval(-t) = conj(eval(t)).
/// decay_bound, when present, is a decreasing integrable envelope of
/// |eval| as a function of |t| and drives truncation of inversion
/// integrals; without it the integration range doubles until stable.
struct CharFn {
    int dim = 1;
    std::function<Complex(Vec2)> eval;
    std::optional<std::function<double(double)>> decay_bound;
};

/// Bounded Jordan-measurable region: an interval (d=1), an axis box or a
/// disc (d=2).
struct Region {
    enum class Kind { interval, box, disc };
    Kind kind = Kind::interval;
    double p[4] = {0, 0, 0, 0};  // interval: a,b | box: x0,x1,y0,y1 | disc: cx,cy,r

    static Region interval(double a, double b);
    static Region box(double x0, double x1, double y0, double y1);
    static Region disc(double cx, double cy, double r);

    int dim() const { return kind == Kind::interval ? 1 : 2; }
    double measure() const;
    /// half-open convention on interval/box edges; disc is open
    bool contains(Vec2 v) const;
    std::string describe() const;
};

struct InversionPolicy {
    double abs_tol = 1e-10;
    double imag_budget = 1e-9;  // allowed imaginary residue before erroring
    int max_doublings = 20;
};

/// Density of the law with characteristic function phi at x, by Fourier
/// inversion. Throws nonconvergence_error when no decay bound is given
/// and the doubling truncation fails to settle.
double density_at(const CharFn& phi, Vec2 x, const InversionPolicy& pol = {});

/// P[X in region] by a single inversion integral against the region's
/// Fourier kernel (interval/box/disc).
double interval_probability(const CharFn& phi, const Region& region,
                            const InversionPolicy& pol = {});

/// c_p = (1/2pi) int exp(-|t|^p) dt on R, 0 < p <= 2, by quadrature.
double stable_constant(double p);

/// Trigonometric polynomial on period [-period/2, period/2), stored by its
/// complex coefficients for frequencies 2*pi*j/period, |j| <= degree.
struct TrigPoly {
    double period = 1.0;
    int degree = 0;
    std::vector<Complex> coeff;  // size 2*degree+1, index j + degree

    double eval(double x) const;
    /// largest |frequency| present: 2*pi*degree/period
    double freq_radius() const;
};

/// Uniform approximation of a continuous periodic target:
/// raw truncated Fourier sum when the sampled spectrum is already
/// band-limited (exact for pure harmonics), Jackson-damped (positive
/// kernel) summation with growing degree otherwise. Uniform error is
/// checked on a dense grid; throws nonconvergence_error at the degree cap.
TrigPoly trig_poly_approx(const std::function<double(double)>& target,
                          double period, double tol, int max_degree = 1 << 20);

/// The band-limited sandwich g2 <= f <= g1 with compactly supported
/// Fourier transforms and small gap integral.
struct BandLimitedPair {
    int dim = 1;
    // uniform output grid over [-window, window]^dim
    double window = 0.0;
    std::vector<double> grid;  // axis nodes
    std::vector<double> f_values;
    std::vector<double> g1_values;  // row-major for dim = 2
    std::vector<double> g2_values;
    double fourier_support_radius = 0.0;
    double gap_integral = 0.0;  // int (g1 - g2), interior grid + analytic far bound
    /// evaluators valid on all of R^dim
    std::function<double(Vec2)> g1;
    std::function<double(Vec2)> g2;
};

/// Appendix-style construction: theta buffer above f, positive-kernel
/// trigonometric approximations of f +- theta on period 2N, times a
/// product window with compactly supported transform. f must be
/// continuous with support inside [-k+1, k-1]^dim; eta is the gap target.
/// epsilon is auto-tuned downward until the gap meets eta; throws
/// tuning_error (with the achieved gap) when the ladder bottoms out.
BandLimitedPair sandwich_approximation(const std::function<double(Vec2)>& f,
                                       int dim, double support_k, double eta,
                                       int grid_nodes = 4096);

}  // namespace modphi::fourier
