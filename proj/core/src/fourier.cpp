#include "modphi/fourier.hpp"

#include "modphi/errors.hpp"
#include "modphi/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace modphi::fourier {

namespace {
constexpr double pi = std::numbers::pi;
using quadrature::integrate_c;
}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

Region Region::interval(double a, double b) {
    Region r;
    r.kind = Kind::interval;
    r.p[0] = a;
    r.p[1] = b;
    return r;
}

Region Region::box(double x0, double x1, double y0, double y1) {
    Region r;
    r.kind = Kind::box;
    r.p[0] = x0;
    r.p[1] = x1;
    r.p[2] = y0;
    r.p[3] = y1;
    return r;
}

Region Region::disc(double cx, double cy, double rad) {
    Region r;
    r.kind = Kind::disc;
    r.p[0] = cx;
    r.p[1] = cy;
    r.p[2] = rad;
    return r;
}

double Region::measure() const {
    switch (kind) {
        case Kind::interval: return p[1] - p[0];
        case Kind::box: return (p[1] - p[0]) * (p[3] - p[2]);
        case Kind::disc: return pi * p[2] * p[2];
    }
    return 0.0;
}

bool Region::contains(Vec2 v) const {
    switch (kind) {
        case Kind::interval: return v.x >= p[0] && v.x < p[1];
        case Kind::box:
            return v.x >= p[0] && v.x < p[1] && v.y >= p[2] && v.y < p[3];
        case Kind::disc: {
            double dx = v.x - p[0], dy = v.y - p[1];
            return dx * dx + dy * dy < p[2] * p[2];
        }
    }
    return false;
}

std::string Region::describe() const {
    char buf[128];
    switch (kind) {
        case Kind::interval:
            std::snprintf(buf, sizeof buf, "(%g,%g)", p[0], p[1]);
            break;
        case Kind::box:
            std::snprintf(buf, sizeof buf, "box:%g,%g,%g,%g", p[0], p[1], p[2], p[3]);
            break;
        case Kind::disc:
            std::snprintf(buf, sizeof buf, "disc:%g,%g,%g", p[0], p[1], p[2]);
            break;
    }
    return buf;
}

namespace {

// Truncation radius from the decay bound: smallest power-of-two multiple of
// T0 whose envelope tail is below the budget.
double radius_from_envelope(const std::function<double(double)>& env,
                            double tail_budget) {
    double T = 1.0;
    for (int j = 0; j < 48; ++j) {
        if (quadrature::envelope_tail(env, T) < tail_budget) return T;
        T *= 2.0;
    }
    throw nonconvergence_error("inversion: decay bound tail never met the budget");
}

// One-dimensional integral of a conjugate-symmetric integrand over [-T, T],
// evaluated as both halves (the imaginary part doubles as a symmetry check).
Complex line_integral(const std::function<Complex(double)>& f, double lo, double hi,
                      double abs_tol, int max_panels) {
    return integrate_c(f, lo, hi, abs_tol, 1e-12, max_panels).value;
}

struct Truncated {
    Complex value;
    double radius;
};

// Integrate g over [-T,T] (d=1), with T either from the decay bound or by
// doubling increments until two successive radii agree within abs_tol.
Truncated truncate_line(const CharFn& phi, const std::function<Complex(double)>& g,
                        const InversionPolicy& pol, double scale_hint) {
    if (phi.decay_bound) {
        double T = radius_from_envelope(*phi.decay_bound, 0.1 * pol.abs_tol);
        int panels = std::max(4000, int(T * scale_hint) * 4 + 64);
        return {line_integral(g, -T, T, 0.1 * pol.abs_tol, std::min(panels, 2'000'000)),
                T};
    }
    double T = 1.0;
    Complex acc = line_integral(g, -T, T, 0.1 * pol.abs_tol, 4000);
    for (int j = 0; j < pol.max_doublings; ++j) {
        int panels = std::max(2000, int(T * scale_hint) * 2 + 64);
        panels = std::min(panels, 1'000'000);
        Complex inc = line_integral(g, T, 2.0 * T, 0.1 * pol.abs_tol, panels) +
                      line_integral(g, -2.0 * T, -T, 0.1 * pol.abs_tol, panels);
        acc += inc;
        T *= 2.0;
        if (std::abs(inc) < pol.abs_tol) return {acc, T};
    }
    throw nonconvergence_error(
        "inversion: no decay bound and the truncated integral did not settle");
}

}  // namespace

double density_at(const CharFn& phi, Vec2 x, const InversionPolicy& pol) {
    if (phi.dim == 1) {
        auto g = [&](double t) { return std::exp(Complex(0.0, -t * x.x)) * phi.eval({t, 0.0}); };
        auto [val, T] = truncate_line(phi, g, pol, std::abs(x.x) / pi + 1.0);
        (void)T;
        double dens = val.real() / (2.0 * pi);
        if (std::abs(val.imag()) / (2.0 * pi) > pol.imag_budget * std::max(1.0, std::abs(dens)))
            throw nonconvergence_error("density_at: imaginary residue above budget");
        return dens;
    }
    // d = 2: square truncation from the radial decay bound, tensor rule.
    double T;
    if (phi.decay_bound) {
        auto env2 = [&](double r) { return 2.0 * pi * r * (*phi.decay_bound)(r); };
        T = radius_from_envelope(env2, 0.1 * pol.abs_tol);
    } else {
        T = 64.0;  // doubling in two dimensions is not supported; require a bound
        throw nonconvergence_error("density_at (d=2): a decay bound is required");
    }
    auto g = [&](double t1, double t2) {
        return std::exp(Complex(0.0, -(t1 * x.x + t2 * x.y))) * phi.eval({t1, t2});
    };
    auto res = quadrature::integrate2d_c(g, -T, T, -T, T, 0.5 * pol.abs_tol);
    double dens = res.value.real() / (4.0 * pi * pi);
    if (std::abs(res.value.imag()) / (4.0 * pi * pi) >
        pol.imag_budget * std::max(1.0, std::abs(dens)))
        throw nonconvergence_error("density_at: imaginary residue above budget");
    return dens;
}

namespace {

// Fourier kernel of an interval: int_a^b e^{-itx} dx.
Complex interval_kernel(double t, double a, double b) {
    if (std::abs(t) < 1e-8) {
        double mid = 0.5 * (a + b), len = b - a;
        // (b-a) e^{-it(a+b)/2} sinc(t(b-a)/2), expanded for small t
        double u = 0.5 * t * len;
        double sinc = 1.0 - u * u / 6.0;
        return len * sinc * std::exp(Complex(0.0, -t * mid));
    }
    Complex it(0.0, t);
    return (std::exp(-it * a) - std::exp(-it * b)) / it;
}

}  // namespace

double interval_probability(const CharFn& phi, const Region& region,
                            const InversionPolicy& pol) {
    if (region.dim() != phi.dim)
        throw std::domain_error("interval_probability: region/charfn dimension mismatch");
    if (phi.dim == 1) {
        double a = region.p[0], b = region.p[1];
        auto g = [&](double t) { return phi.eval({t, 0.0}) * interval_kernel(t, a, b); };
        auto [val, T] = truncate_line(phi, g, pol,
                                      (std::abs(a) + std::abs(b)) / pi + 1.0);
        (void)T;
        double prob = val.real() / (2.0 * pi);
        if (std::abs(val.imag()) / (2.0 * pi) > pol.imag_budget * std::max(1.0, prob))
            throw nonconvergence_error("interval_probability: imaginary residue above budget");
        return prob;
    }
    double T;
    if (phi.decay_bound) {
        double scale = region.measure();
        auto env2 = [&](double r) { return scale * 2.0 * pi * r * (*phi.decay_bound)(r); };
        T = radius_from_envelope(env2, 0.1 * pol.abs_tol);
    } else {
        throw nonconvergence_error("interval_probability (d=2): a decay bound is required");
    }
    std::function<Complex(double, double)> g;
    if (region.kind == Region::Kind::box) {
        g = [&, x0 = region.p[0], x1 = region.p[1], y0 = region.p[2],
             y1 = region.p[3]](double t1, double t2) {
            return phi.eval({t1, t2}) * interval_kernel(t1, x0, x1) *
                   interval_kernel(t2, y0, y1);
        };
    } else {  // disc: kernel 2 pi r J1(r|t|)/|t| times the center phase
        g = [&, cx = region.p[0], cy = region.p[1], r = region.p[2]](double t1, double t2) {
            double tn = std::hypot(t1, t2);
            double k = tn < 1e-9 ? pi * r * r * (1.0 - tn * tn * r * r / 8.0)
                                 : 2.0 * pi * r * std::cyl_bessel_j(1, r * tn) / tn;
            return phi.eval({t1, t2}) * k * std::exp(Complex(0.0, -(t1 * cx + t2 * cy)));
        };
    }
    auto res = quadrature::integrate2d_c(g, -T, T, -T, T, 0.5 * pol.abs_tol);
    double prob = res.value.real() / (4.0 * pi * pi);
    if (std::abs(res.value.imag()) / (4.0 * pi * pi) >
        pol.imag_budget * std::max(1.0, prob))
        throw nonconvergence_error("interval_probability: imaginary residue above budget");
    return prob;
}

double stable_constant(double p) {
    if (!(p > 0.0 && p <= 2.0)) throw std::domain_error("stable_constant: p outside (0, 2]");
    double T = std::pow(45.0, 1.0 / p);  // exp(-T^p) = e^-45 < 3e-20
    auto f = [p](double t) { return std::exp(-std::pow(t, p)); };
    return quadrature::integrate(f, 0.0, T, 1e-13, 1e-12, 8000).value / pi;
}

}  // namespace modphi::fourier
