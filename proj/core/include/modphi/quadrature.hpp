#pragma once

#include <complex>
#include <functional>

namespace modphi::quadrature {

using Complex = std::complex<double>;

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
};

struct CQuadResult {
    Complex value{0.0, 0.0};
    double abs_error = 0.0;
};

/// Single Gauss-Kronrod 7-15 panel.
QuadResult gk15(const std::function<double(double)>& f, double a, double b);
CQuadResult gk15c(const std::function<Complex(double)>& f, double a, double b);

/// Adaptive GK15 on [a, b]: splits the worst panel until the summed error
/// estimate is below max(abs_tol, rel_tol * |value|) or the panel budget
/// runs out (the result of the best effort is returned either way, with
/// its error estimate).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-10,
                     int max_panels = 4000);
CQuadResult integrate_c(const std::function<Complex(double)>& f, double a, double b,
                        double abs_tol = 1e-10, double rel_tol = 1e-10,
                        int max_panels = 4000);

/// Tail integral of a nonnegative decreasing integrable envelope from T:
/// doubling increments with a geometric remainder bound.
double envelope_tail(const std::function<double(double)>& env, double T);

/// Nested adaptive tensor rule over [ax,bx] x [ay,by].
double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by, double tol = 1e-8);
CQuadResult integrate2d_c(const std::function<Complex(double, double)>& f,
                          double ax, double bx, double ay, double by,
                          double tol = 1e-8);

}  // namespace modphi::quadrature
