#include "modphi/errors.hpp"
#include "modphi/fourier.hpp"
#include "modphi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace modphi::fourier {

namespace {

constexpr double pi = std::numbers::pi;

// in-place radix-2 FFT, n a power of two; invert also divides by n
void fft(std::vector<Complex>& a, bool invert) {
    std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / double(len) * (invert ? -1.0 : 1.0);
        Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (invert)
        for (auto& x : a) x /= double(n);
}

// Jackson-type multipliers lam[|j|], |j| <= 2m-2: normalized autocorrelation
// of the Fejer triangle, so the summation kernel is |trig poly|^2 >= 0.
std::vector<double> jackson_multipliers(int m) {
    std::size_t n = 1;
    while (n < std::size_t(4 * m)) n <<= 1;
    std::vector<Complex> buf(n, Complex(0.0));
    for (int i = -(m - 1); i <= m - 1; ++i)
        buf[std::size_t((i + int(n)) % int(n))] = 1.0 - std::abs(i) / double(m);
    fft(buf, false);
    for (auto& z : buf) z = Complex(std::norm(z), 0.0);
    fft(buf, true);
    double b0 = buf[0].real();
    std::vector<double> lam(std::size_t(2 * m - 1));
    for (int j = 0; j <= 2 * m - 2; ++j)
        lam[std::size_t(j)] = buf[std::size_t(j)].real() / b0;
    return lam;
}

// Positive-kernel smoothing of periodic samples; multiplier support must
// stay below the Nyquist index (checked by the caller via M >= 4m).
std::vector<double> jackson_smooth(const std::vector<double>& samples, int m,
                                   const std::vector<double>& lam) {
    std::size_t M = samples.size();
    std::vector<Complex> a(M);
    for (std::size_t i = 0; i < M; ++i) a[i] = samples[i];
    fft(a, false);
    for (std::size_t j = 0; j < M; ++j) {
        std::size_t fj = std::min(j, M - j);
        a[j] *= fj <= std::size_t(2 * m - 2) ? lam[fj] : 0.0;
    }
    fft(a, true);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = a[i].real();
    return out;
}

inline double sinc_sq(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 3.0;
    double s = std::sin(u) / u;
    return s * s;
}

struct Pair1D {
    double N = 1.0;  // half period
    double a = 1.0;  // window parameter, h(x) = sinc^2(a x)
    int degree = 0;
    double dx = 1.0;
    std::vector<double> f, p_plus, p_minus;  // period grid x_i = -N + i dx
    double gap = 0.0;                        // int over R of (g1 - g2)
    double int_g1 = 0.0;                     // upper estimate of int g1
    double freq_radius = 0.0;

    double h(double x) const { return sinc_sq(a * x); }
    double interp(const std::vector<double>& v, double x) const {
        double per = 2.0 * N;
        double y = std::fmod(x + N, per);
        if (y < 0) y += per;
        double pos = y / dx;
        std::size_t i = std::size_t(pos);
        double fr = pos - double(i);
        std::size_t M = v.size();
        i %= M;
        return v[i] * (1.0 - fr) + v[(i + 1) % M] * fr;
    }
    double g1(double x) const { return interp(p_plus, x) * h(x); }
    double g2(double x) const { return interp(p_minus, x) * h(x); }
};

// One-dimensional core: theta buffer over f, Jackson approximations of
// f +- theta on period 2N, sinc^2 window. f >= 0 with supp in [-k+1, k-1].
Pair1D build_pair_1d(const std::function<double(double)>& f, double k, double eta) {
    double fmax = 0.0;
    for (int i = 0; i <= 4096; ++i)
        fmax = std::max(fmax, f(-k + 2.0 * k * i / 4096.0));

    if (fmax < 1e-12) {  // declared short-circuit: the zero pair
        Pair1D z;
        z.N = k + 1.0;
        z.dx = 2.0 * z.N / 1024.0;
        z.f.assign(1024, 0.0);
        z.p_plus.assign(1024, 0.0);
        z.p_minus.assign(1024, 0.0);
        return z;
    }

    double best_gap = 1e300;
    double H = std::min(0.5, eta / (10.0 * (2.0 * k - 1.0)));
    for (int ladder = 0; ladder < 6; ++ladder, H *= 0.5) {
        double eps = H * H * H * H;
        double N = 2.0 * k;
        while (N * N * eps < 1.0 && N < 2.0e4) N *= 2.0;
        double delta = 0.5 * H / (H + fmax);
        double a = std::sqrt(2.0 * delta) / k;

        auto theta = [&](double x) {
            double ax = std::abs(x);
            if (ax <= k - 1.0) return eps + H;
            if (ax >= k) return eps;
            return eps + H * (k - ax);
        };

        double m_est = 6.0 * N / H;
        int m = 256;
        while (double(m) < m_est && m < (1 << 20)) m <<= 1;

        for (int grow = 0; grow < 3; ++grow, m <<= 1) {
            if (m > (1 << 21)) break;
            std::size_t M = 4096;
            while (M < std::size_t(4) * std::size_t(m)) M <<= 1;
            double dx = 2.0 * N / double(M);

            std::vector<double> fv(M), Fp(M), Fm(M);
            for (std::size_t i = 0; i < M; ++i) {
                double x = -N + double(i) * dx;
                double fx = std::abs(x) <= k ? std::max(0.0, f(x)) : 0.0;
                double th = theta(x);
                fv[i] = fx;
                Fp[i] = fx + th;
                Fm[i] = fx - th;
            }
            auto lam = jackson_multipliers(m);
            auto pp = jackson_smooth(Fp, m, lam);
            auto pm = jackson_smooth(Fm, m, lam);

            // shift p_minus below f off the support; the margin covers
            // between-node overshoot of the band-limited p_minus
            double spill = 0.0, maxd2 = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                if (fv[i] <= 0.0) spill = std::max(spill, pm[i]);
                if (i + 1 < M && i > 0)
                    maxd2 = std::max(maxd2,
                                     std::abs(pm[i + 1] - 2.0 * pm[i] + pm[i - 1]));
            }
            double shift = std::max(0.0, spill) + maxd2 + 1e-12;
            for (auto& v : pm) v -= shift;

            bool order_ok = true;
            double period_diff = 0.0, interior = 0.0, period_g1 = 0.0,
                   interior_g1 = 0.0, l1_err = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                double x = -N + double(i) * dx;
                double hv = sinc_sq(a * x);
                if (pp[i] * hv < fv[i] || pm[i] * hv > fv[i]) {
                    order_ok = false;
                    break;
                }
                double dgi = pp[i] - pm[i];
                period_diff += dgi * dx;
                interior += dgi * hv * dx;
                period_g1 += std::abs(pp[i]) * dx;
                interior_g1 += pp[i] * hv * dx;
                l1_err += (std::abs(pp[i] - Fp[i]) + std::abs(pm[i] - Fm[i])) * dx;
            }
            if (!order_ok) continue;

            double tail_factor = pi * pi / (4.0 * (a * N) * (a * N));
            double gap = interior + period_diff * tail_factor;
            best_gap = std::min(best_gap, gap);
            if (gap <= eta) {
                Pair1D out;
                out.N = N;
                out.a = a;
                out.degree = m;
                out.dx = dx;
                out.f = std::move(fv);
                out.p_plus = std::move(pp);
                out.p_minus = std::move(pm);
                out.gap = gap;
                out.int_g1 = interior_g1 + period_g1 * tail_factor;
                out.freq_radius = pi * double(2 * m - 2) / N + 2.0 * a;
                return out;
            }
            if (l1_err < 0.4 * gap) break;  // buffer-dominated: shrink H instead
        }
    }
    throw tuning_error("sandwich_approximation: gap target not met", best_gap);
}

}  // namespace

double TrigPoly::eval(double x) const {
    Complex s(0.0);
    double w = 2.0 * pi / period;
    for (int j = -degree; j <= degree; ++j)
        s += coeff[std::size_t(j + degree)] * std::exp(Complex(0.0, w * j * x));
    return s.real();
}

double TrigPoly::freq_radius() const { return 2.0 * pi * degree / period; }

TrigPoly trig_poly_approx(const std::function<double(double)>& target,
                          double period, double tol, int max_degree) {
    if (!(tol > 0.0)) throw std::domain_error("trig_poly_approx: tol <= 0");
    // analysis coefficients relative to p(x) = sum_j c_j e^{2 pi i j x / period},
    // sampled at x_i = -period/2 + i period / M
    auto sample_coeffs = [&](std::size_t M) {
        std::vector<Complex> a(M);
        for (std::size_t i = 0; i < M; ++i)
            a[i] = target(-period / 2.0 + period * double(i) / double(M));
        fft(a, true);  // (1/M) sum_i t_i e^{-2 pi i j i / M}
        return a;
    };
    auto check = [&](const TrigPoly& p) {
        double worst = 0.0;
        int nodes = std::max(1024, 4 * p.degree + 1);
        for (int i = 0; i <= nodes; ++i) {
            double x = -period / 2.0 + period * double(i) / double(nodes);
            worst = std::max(worst, std::abs(p.eval(x) - target(x)));
        }
        return worst;
    };
    auto sign_j = [](int j) { return (j & 1) ? -1.0 : 1.0; };  // e^{i pi j}

    {  // band-limited targets reproduce exactly from the raw truncated sum
        std::size_t M = 4096;
        auto c = sample_coeffs(M);
        double cmax = 0.0;
        for (const auto& z : c) cmax = std::max(cmax, std::abs(z));
        int cutoff = 0;
        for (std::size_t j = 1; j <= M / 2; ++j) {
            double mag = std::max(std::abs(c[j]), std::abs(c[M - j]));
            if (mag > 1e-12 * std::max(1.0, cmax) + 1e-4 * tol) cutoff = int(j);
        }
        if (cutoff <= int(M / 8)) {
            TrigPoly p;
            p.period = period;
            p.degree = cutoff;
            p.coeff.assign(std::size_t(2 * cutoff + 1), Complex(0.0));
            for (int j = -cutoff; j <= cutoff; ++j)
                p.coeff[std::size_t(j + cutoff)] =
                    c[std::size_t((j + int(M)) % int(M))] * sign_j(j);
            if (check(p) <= tol) return p;
        }
    }
    for (int m = 64; m <= max_degree; m *= 2) {
        std::size_t M = 4096;
        while (M < std::size_t(8 * m)) M <<= 1;
        auto c = sample_coeffs(M);
        auto lam = jackson_multipliers(m);
        int deg = 2 * m - 2;
        TrigPoly p;
        p.period = period;
        p.degree = deg;
        p.coeff.assign(std::size_t(2 * deg + 1), Complex(0.0));
        for (int j = -deg; j <= deg; ++j)
            p.coeff[std::size_t(j + deg)] = c[std::size_t((j + int(M)) % int(M))] *
                                            lam[std::size_t(std::abs(j))] * sign_j(j);
        if (check(p) <= tol) return p;
    }
    throw nonconvergence_error("trig_poly_approx: degree cap reached");
}

BandLimitedPair sandwich_approximation(const std::function<double(Vec2)>& f,
                                       int dim, double support_k, double eta,
                                       int grid_nodes) {
    if (dim != 1 && dim != 2)
        throw std::domain_error("sandwich_approximation: dim must be 1 or 2");
    if (!(eta > 0.0)) throw std::domain_error("sandwich_approximation: eta <= 0");
    if (!(support_k > 1.0))
        throw std::domain_error("sandwich_approximation: need support_k > 1");
    double k = support_k;
    BandLimitedPair out;
    out.dim = dim;
    out.window = k;
    int G = dim == 1 ? grid_nodes : std::min(grid_nodes, 257);
    out.grid.resize(std::size_t(G));
    for (int i = 0; i < G; ++i)
        out.grid[std::size_t(i)] = -k + 2.0 * k * double(i) / double(G - 1);

    if (dim == 1) {
        // signed f: build pairs for f+ and f- and recombine
        auto fpos = [&](double x) { return std::max(0.0, f({x, 0.0})); };
        auto fneg = [&](double x) { return std::max(0.0, -f({x, 0.0})); };
        bool has_neg = false;
        for (int i = 0; i <= 512 && !has_neg; ++i)
            if (f({-k + 2.0 * k * i / 512.0, 0.0}) < -1e-12) has_neg = true;

        auto pp = std::make_shared<Pair1D>(build_pair_1d(fpos, k, has_neg ? eta / 2 : eta));
        std::shared_ptr<Pair1D> pn;
        if (has_neg) pn = std::make_shared<Pair1D>(build_pair_1d(fneg, k, eta / 2));
        if (pn) {
            out.g1 = [pp, pn](Vec2 v) { return pp->g1(v.x) - pn->g2(v.x); };
            out.g2 = [pp, pn](Vec2 v) { return pp->g2(v.x) - pn->g1(v.x); };
            out.gap_integral = pp->gap + pn->gap;
            out.fourier_support_radius = std::max(pp->freq_radius, pn->freq_radius);
        } else {
            out.g1 = [pp](Vec2 v) { return pp->g1(v.x); };
            out.g2 = [pp](Vec2 v) { return pp->g2(v.x); };
            out.gap_integral = pp->gap;
            out.fourier_support_radius = pp->freq_radius;
        }
        out.f_values.resize(std::size_t(G));
        out.g1_values.resize(std::size_t(G));
        out.g2_values.resize(std::size_t(G));
        for (int i = 0; i < G; ++i) {
            Vec2 v{out.grid[std::size_t(i)], 0.0};
            out.f_values[std::size_t(i)] = f(v);
            out.g1_values[std::size_t(i)] = out.g1(v);
            out.g2_values[std::size_t(i)] = out.g2(v);
        }
        return out;
    }

    // dim == 2: the construction is applied per axis factor of
    // f(x,y) = u(x) v(y) and recombined order-preservingly:
    //   G1 = g1u g1v,   G2 = g2u g1v + g1u g2v - g1u g1v,
    // both with compactly supported transforms; the gap integral is exactly
    // gap_u * int(g1v) + int(g1u) * gap_v.
    double f00 = f({0.0, 0.0});
    if (std::abs(f00) < 1e-12) {
        bool all_zero = true;
        for (int i = 0; i < 64 && all_zero; ++i)
            for (int j = 0; j < 64 && all_zero; ++j)
                if (std::abs(f({-k + 2.0 * k * i / 63.0, -k + 2.0 * k * j / 63.0})) > 1e-12)
                    all_zero = false;
        if (!all_zero)
            throw std::domain_error(
                "sandwich_approximation (d=2): supports f(x,y) = u(x)v(y) with f(0,0) != 0");
        f00 = 0.0;
    }
    if (f00 != 0.0) {
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                double x = -k + 2.0 * k * i / 15.0, y = -k + 2.0 * k * j / 15.0;
                double lhs = f({x, y}) * f00, rhs = f({x, 0.0}) * f({0.0, y});
                if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(lhs)))
                    throw std::domain_error(
                        "sandwich_approximation (d=2): supports f(x,y) = u(x)v(y) only");
            }
    }
    auto ufac = [&](double x) { return std::max(0.0, f({x, 0.0})); };
    auto vfac = [&, f00](double y) {
        return f00 == 0.0 ? 0.0 : std::max(0.0, f({0.0, y}) / f00);
    };
    double iu = 0.0, iv = 0.0;
    for (int i = 0; i < 2048; ++i) {
        double x = -k + 2.0 * k * (i + 0.5) / 2048.0;
        iu += ufac(x) * (2.0 * k / 2048.0);
        iv += vfac(x) * (2.0 * k / 2048.0);
    }
    double eta1 = eta / (2.0 * (iu + iv + 1.0));
    auto pu = std::make_shared<Pair1D>(build_pair_1d(ufac, k, eta1));
    auto pv = std::make_shared<Pair1D>(build_pair_1d(vfac, k, eta1));
    out.g1 = [pu, pv](Vec2 w) { return pu->g1(w.x) * pv->g1(w.y); };
    out.g2 = [pu, pv](Vec2 w) {
        double a1 = pu->g1(w.x), a2 = pu->g2(w.x);
        double b1 = pv->g1(w.y), b2 = pv->g2(w.y);
        return a2 * b1 + a1 * b2 - a1 * b1;
    };
    out.gap_integral = pu->gap * pv->int_g1 + pu->int_g1 * pv->gap;
    out.fourier_support_radius = std::hypot(pu->freq_radius, pv->freq_radius);
    out.f_values.resize(std::size_t(G) * std::size_t(G));
    out.g1_values.resize(std::size_t(G) * std::size_t(G));
    out.g2_values.resize(std::size_t(G) * std::size_t(G));
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j) {
            Vec2 w{out.grid[std::size_t(i)], out.grid[std::size_t(j)]};
            std::size_t idx = std::size_t(i) * std::size_t(G) + std::size_t(j);
            out.f_values[idx] = f(w);
            out.g1_values[idx] = out.g1(w);
            out.g2_values[idx] = out.g2(w);
        }
    return out;
}

}  // namespace modphi::fourier
