#include "modphi/engine.hpp"

#include "modphi/errors.hpp"
#include "modphi/parallel.hpp"
#include "modphi/quadrature.hpp"
#include "modphi/specfun.hpp"

#include <cmath>
#include <numbers>

namespace modphi::engine {

namespace {
constexpr double pi = std::numbers::pi;
}

Vec2 Mat2::apply(Vec2 v) const {
    if (dim == 1) return {a * v.x, 0.0};
    return {a * v.x + b * v.y, c * v.x + d * v.y};
}

Vec2 Mat2::apply_transpose(Vec2 v) const {
    if (dim == 1) return {a * v.x, 0.0};
    return {a * v.x + c * v.y, b * v.x + d * v.y};
}

Mat2 Mat2::inverse() const {
    if (dim == 1) {
        if (a == 0.0) throw std::domain_error("Mat2: singular");
        return scalar(1.0 / a);
    }
    double dt = det();
    if (dt == 0.0) throw std::domain_error("Mat2: singular");
    return {2, d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 Mat2::times(const Mat2& o) const {
    if (dim == 1 && o.dim == 1) return scalar(a * o.a);
    return {2, a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
}

double Mat2::op_norm() const {
    if (dim == 1) return std::abs(a);
    // largest singular value of a 2x2
    double e = a * a + b * b + c * c + d * d;
    double f = det();
    double disc = std::sqrt(std::max(0.0, e * e - 4.0 * f * f));
    return std::sqrt(0.5 * (e + disc));
}

void ScalingSeq::validate(const std::vector<double>& ns) const {
    double prev = 1e300;
    for (double n : ns) {
        Mat2 A = a(n), S = sigma(n);
        Mat2 I = A.times(S);
        double r = std::abs(I.a - 1.0) + (dim == 2 ? std::abs(I.b) + std::abs(I.c) +
                                                         std::abs(I.d - 1.0)
                                                   : 0.0);
        if (r > 1e-12) throw std::domain_error("ScalingSeq: A_n Sigma_n != I");
        if (std::abs(det_a(n) - A.abs_det()) > 1e-12 * (1.0 + A.abs_det()))
            throw std::domain_error("ScalingSeq: det mismatch");
        double sn = S.op_norm();
        if (sn > prev * (1.0 + 1e-9))
            throw std::domain_error("ScalingSeq: |Sigma_n| not decreasing along ns");
        prev = sn;
    }
}

namespace {

CharFn gaussian_charfn_1d() {
    CharFn c;
    c.dim = 1;
    c.eval = [](Vec2 t) { return Complex(std::exp(-0.5 * t.x * t.x), 0.0); };
    c.decay_bound = [](double r) { return std::exp(-0.5 * r * r); };
    return c;
}

}  // namespace

ReferenceLaw gaussian_real_law() {
    ReferenceLaw law;
    law.name = "gaussian-real";
    law.phi = gaussian_charfn_1d();
    law.density = [](Vec2 x) {
        return std::exp(-0.5 * x.x * x.x) / std::sqrt(2.0 * pi);
    };
    return law;
}

ReferenceLaw gaussian_complex_law() {
    ReferenceLaw law;
    law.name = "gaussian-complex";
    law.phi.dim = 2;
    law.phi.eval = [](Vec2 t) {
        return Complex(std::exp(-0.5 * (t.x * t.x + t.y * t.y)), 0.0);
    };
    law.phi.decay_bound = [](double r) { return std::exp(-0.5 * r * r); };
    law.density = [](Vec2 x) {
        return std::exp(-0.5 * (x.x * x.x + x.y * x.y)) / (2.0 * pi);
    };
    return law;
}

ReferenceLaw cauchy_law() {
    ReferenceLaw law;
    law.name = "cauchy";
    law.phi.dim = 1;
    law.phi.eval = [](Vec2 t) { return Complex(std::exp(-std::abs(t.x)), 0.0); };
    law.phi.decay_bound = [](double r) { return std::exp(-r); };
    law.density = [](Vec2 x) { return 1.0 / (pi * (1.0 + x.x * x.x)); };
    return law;
}

ReferenceLaw laplace_law() {
    ReferenceLaw law;
    law.name = "laplace";
    law.phi.dim = 1;
    law.phi.eval = [](Vec2 t) { return Complex(1.0 / (1.0 + t.x * t.x), 0.0); };
    law.phi.decay_bound = [](double r) { return 1.0 / (1.0 + r * r); };
    law.density = [](Vec2 x) { return 0.5 * std::exp(-std::abs(x.x)); };
    return law;
}

ReferenceLaw stable_law(double p) {
    if (!(p > 0.0 && p <= 2.0)) throw std::domain_error("stable_law: p outside (0,2]");
    ReferenceLaw law;
    law.name = "stable(" + std::to_string(p) + ")";
    law.phi.dim = 1;
    law.phi.eval = [p](Vec2 t) {
        return Complex(std::exp(-std::pow(std::abs(t.x), p)), 0.0);
    };
    law.phi.decay_bound = [p](double r) { return std::exp(-std::pow(r, p)); };
    law.density = [p](Vec2 x) {
        // symmetric stable density by inversion: (1/pi) int_0^inf e^{-t^p} cos(xt) dt
        double T = std::pow(45.0, 1.0 / p);
        auto f = [p, x](double t) {
            return std::exp(-std::pow(t, p)) * std::cos(x.x * t);
        };
        return quadrature::integrate(f, 0.0, T, 1e-12, 1e-10,
                                     4000 + int(std::abs(x.x)) * 64)
                   .value /
               pi;
    };
    return law;
}

// squarefree_phi_law() lives in scenarios_arithmetic.cpp next to its charfn

ReferenceLaw exp_sum_law() {
    ReferenceLaw law;
    law.name = "exp-sum";
    law.phi.dim = 1;
    law.phi.eval = [](Vec2 t) { return 1.0 / ((1.0 - Complex(0.0, t.x)) * (1.0 - Complex(0.0, t.x))); };
    law.phi.decay_bound = [](double r) { return 1.0 / (1.0 + r * r); };
    law.density = [](Vec2 x) { return x.x >= 0.0 ? x.x * std::exp(-x.x) : 0.0; };
    return law;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::analytic: return "analytic";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

LocalLimitReport local_limit(const Scenario& scn, double n, const Region& region,
                             Method method, const McParams& mc) {
    LocalLimitReport rep;
    rep.index = n;
    rep.region = region;
    rep.method = method;
    double det_a = scn.scaling.det_a(n);
    rep.predicted_limit = scn.reference.density_at({0.0, 0.0}) * region.measure();

    switch (method) {
        case Method::exact: {
            if (!scn.exact_prob)
                throw method_unavailable_error("local_limit: no exact backend for " +
                                               scn.name);
            rep.scaled_probability = det_a * scn.exact_prob(n, region);
            break;
        }
        case Method::analytic: {
            if (scn.discrete)
                throw method_unavailable_error(
                    "local_limit: analytic inversion refused for the atomic law of " +
                    scn.name);
            double p = fourier::interval_probability(scn.charfn_of(n), region);
            rep.scaled_probability = det_a * p;
            break;
        }
        case Method::monte_carlo: {
            if (!scn.sampler && !scn.weighted_sampler)
                throw method_unavailable_error("local_limit: no sampler for " + scn.name);
            if (mc.samples < 100)
                throw std::domain_error("local_limit: MC needs samples >= 100");
            bool weighted = bool(scn.weighted_sampler);
            auto acc = mc_run(
                mc.samples, mc.seed, mc.workers,
                [&](std::uint64_t block, long long cnt, McAccumulator& out) {
                    SplitRng rng(mc.seed, block);
                    for (long long i = 0; i < cnt; ++i) {
                        double w = 1.0;
                        Vec2 x;
                        if (weighted)
                            w = scn.weighted_sampler(n, rng, &x);
                        else
                            x = scn.sampler(n, rng);
                        double ind = region.contains(x) ? 1.0 : 0.0;
                        out.sum += w * ind;
                        out.sum_sq += w * w * ind;
                        out.wsum += w;
                        out.wsum_sq += w * w;
                        out.count += 1;
                    }
                });
            rep.samples = mc.samples;
            rep.seed = mc.seed;
            if (!weighted) {
                double phat = acc.sum / double(acc.count);
                rep.scaled_probability = det_a * phat;
                rep.std_error =
                    det_a * std::sqrt(phat * (1.0 - phat) / double(acc.count));
            } else {
                // self-normalized importance estimator with delta-method error:
                // se^2 = sum w_i^2 (1_B - phat)^2 / (sum w)^2, using 1_B^2 = 1_B
                double phat = acc.sum / acc.wsum;
                rep.scaled_probability = det_a * phat;
                double num = (1.0 - 2.0 * phat) * acc.sum_sq +
                             phat * phat * acc.wsum_sq;
                rep.std_error = det_a * std::sqrt(std::max(0.0, num)) / acc.wsum;
                rep.effective_samples = acc.wsum * acc.wsum / acc.wsum_sq;
            }
            break;
        }
    }
    return rep;
}

H2Result check_h2(const Scenario& scn, const std::vector<double>& ns,
                  const std::vector<Vec2>& t_grid) {
    H2Result res;
    for (double n : ns) {
        Mat2 S = scn.scaling.sigma(n);
        CharFn cf = scn.charfn_of(n);
        double worst = 0.0;
        for (const auto& t : t_grid) {
            Complex lhs = cf.eval(S.apply_transpose(t));
            Complex rhs = scn.reference.phi.eval(t);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        res.deviations.push_back(worst);
    }
    res.improving = trend_improving(res.deviations);
    return res;
}

DominationResult check_h3_domination(const Scenario& scn, double k,
                                     const std::vector<double>& ns,
                                     const std::vector<Vec2>& t_grid) {
    if (!scn.domination_h)
        throw method_unavailable_error("check_h3_domination: no envelope for " +
                                       scn.name);
    auto h = scn.domination_h(k);
    DominationResult res;
    for (double n : ns) {
        Mat2 S = scn.scaling.sigma(n);
        CharFn cf = scn.charfn_of(n);
        for (const auto& t : t_grid) {
            Vec2 st = S.apply_transpose(t);
            if (st.norm() > k) continue;
            double num = std::abs(cf.eval(st));
            double den = h(t.norm());
            if (den <= 0.0) continue;
            res.worst_ratio = std::max(res.worst_ratio, num / den);
        }
    }
    res.holds = res.worst_ratio <= 1.0 + 1e-9;
    return res;
}

IntegralTrend check_h3prime(const Scenario& scn, double eps, double k,
                            const std::vector<double>& ns) {
    if (!(0.0 < eps && eps < k)) throw std::domain_error("check_h3prime: need 0 < eps < k");
    IntegralTrend res;
    for (double n : ns) {
        CharFn cf = scn.charfn_of(n);
        double det_a = scn.scaling.det_a(n);
        double val = 0.0;
        if (scn.dim == 1) {
            auto f = [&](double t) { return std::abs(cf.eval({t, 0.0})); };
            // presplit at the oscillation scale of phi_n so narrow features
            // (atomic laws concentrate |phi_n| near lattice frequencies) are
            // seen by the error estimator
            int chunks =
                scn.discrete
                    ? std::min(4096, std::max(64, int((k - eps) * n / 4.0)))
                    : 64;
            double acc2 = 0.0;
            for (int j = 0; j < chunks; ++j) {
                double lo = eps + (k - eps) * j / chunks;
                double hi2 = eps + (k - eps) * (j + 1) / chunks;
                acc2 += quadrature::integrate(f, lo, hi2, 1e-12, 1e-9, 400).value;
            }
            val = 2.0 * acc2;
        } else {
            // polar: 64-direction trapezoid, adaptive radial
            int dirs = 64;
            for (int j = 0; j < dirs; ++j) {
                double th = 2.0 * pi * j / dirs;
                Vec2 u{std::cos(th), std::sin(th)};
                auto f = [&](double r) {
                    return r * std::abs(cf.eval({r * u.x, r * u.y}));
                };
                val += quadrature::integrate(f, eps, k, 1e-11, 1e-9, 2000).value *
                       (2.0 * pi / dirs);
            }
        }
        res.values.push_back(det_a * val);
    }
    res.improving = trend_improving(res.values);
    return res;
}

H4Result check_h4prime(const Scenario& scn, double a, double eps,
                       const std::vector<double>& ns) {
    if (!(a > 0.0 && eps > 0.0)) throw std::domain_error("check_h4prime: need a, eps > 0");
    H4Result res;
    for (double n : ns) {
        CharFn cf = scn.charfn_of(n);
        Mat2 S = scn.scaling.sigma(n);
        double val = 0.0;
        if (scn.dim == 1) {
            double s = std::abs(S.a);
            double hi = eps / s;  // |Sigma^* t| <= eps
            if (hi > a) {
                auto f = [&](double t) { return std::abs(cf.eval({S.a * t, 0.0})); };
                // chunked so that narrow recurrences of |phi_n| (lattice laws
                // concentrate near multiples of 2 pi / sigma) are not skipped
                double chunk = 4.0, lo = a, acc2 = 0.0;
                while (lo < hi) {
                    double up = std::min(hi, lo + chunk);
                    acc2 += quadrature::integrate(f, lo, up, 1e-12, 1e-9, 400).value;
                    lo = up;
                }
                val = 2.0 * acc2;
            }
        } else {
            int dirs = 64;
            for (int j = 0; j < dirs; ++j) {
                double th = 2.0 * pi * j / dirs;
                Vec2 u{std::cos(th), std::sin(th)};
                double su = S.apply_transpose(u).norm();
                double hi = su > 0.0 ? eps / su : 0.0;
                if (hi <= a) continue;
                auto f = [&](double r) {
                    Vec2 st = S.apply_transpose({r * u.x, r * u.y});
                    return r * std::abs(cf.eval(st));
                };
                val += quadrature::integrate(f, a, hi, 1e-11, 1e-9, 4000).value *
                       (2.0 * pi / dirs);
            }
        }
        res.values.push_back(val);
    }
    // reference tail int_{|t| >= a} |phi|
    if (scn.dim == 1) {
        auto f = [&](double t) { return std::abs(scn.reference.phi.eval({t, 0.0})); };
        res.reference_tail = 2.0 * quadrature::envelope_tail(f, a);
    } else {
        auto f = [&](double r) {
            return 2.0 * pi * r * std::abs(scn.reference.phi.eval({r, 0.0}));
        };
        res.reference_tail = quadrature::envelope_tail(f, a);
    }
    return res;
}

Scenario shift_mean(const Scenario& scn, Vec2 alpha,
                    const std::function<Vec2(double)>& alpha_n) {
    // calibration: Sigma_n alpha_n -> alpha along the index set
    std::vector<double> drift;
    for (double n : scn.index_set) {
        Vec2 sa = scn.scaling.sigma(n).apply(alpha_n(n));
        drift.push_back(std::hypot(sa.x - alpha.x, sa.y - alpha.y));
    }
    double final_drift = drift.empty() ? 0.0 : drift.back();
    if (final_drift > 0.05 * (1.0 + std::hypot(alpha.x, alpha.y)) ||
        !(trend_improving(drift, 0.25) || final_drift < 1e-9))
        throw std::domain_error("shift_mean: Sigma_n alpha_n does not calibrate to alpha");

    Scenario out = scn;
    out.name = scn.name + "+shift";
    auto base_charfn = scn.charfn_of;
    out.charfn_of = [base_charfn, alpha_n](double n) {
        CharFn cf = base_charfn(n);
        Vec2 an = alpha_n(n);
        auto base_eval = cf.eval;
        cf.eval = [base_eval, an](Vec2 t) {
            return base_eval(t) * std::exp(Complex(0.0, -(t.x * an.x + t.y * an.y)));
        };
        return cf;
    };
    ReferenceLaw ref = scn.reference;
    auto base_phi = scn.reference.phi.eval;
    ref.phi.eval = [base_phi, alpha](Vec2 t) {
        return base_phi(t) * std::exp(Complex(0.0, -(t.x * alpha.x + t.y * alpha.y)));
    };
    auto base_density = scn.reference.density;
    ref.density = [base_density, alpha](Vec2 x) {
        return base_density({x.x + alpha.x, x.y + alpha.y});
    };
    ref.name = scn.reference.name + "+shift";
    out.reference = ref;
    if (scn.exact_prob) {
        auto base_exact = scn.exact_prob;
        out.exact_prob = [base_exact, alpha_n](double n, const Region& B) {
            Vec2 an = alpha_n(n);
            Region shifted = B;
            switch (B.kind) {
                case Region::Kind::interval:
                    shifted.p[0] += an.x;
                    shifted.p[1] += an.x;
                    break;
                case Region::Kind::box:
                    shifted.p[0] += an.x;
                    shifted.p[1] += an.x;
                    shifted.p[2] += an.y;
                    shifted.p[3] += an.y;
                    break;
                case Region::Kind::disc:
                    shifted.p[0] += an.x;
                    shifted.p[1] += an.y;
                    break;
            }
            return base_exact(n, shifted);
        };
    }
    if (scn.sampler) {
        auto base_sampler = scn.sampler;
        out.sampler = [base_sampler, alpha_n](double n, SplitRng& rng) {
            Vec2 x = base_sampler(n, rng);
            Vec2 an = alpha_n(n);
            return Vec2{x.x - an.x, x.y - an.y};
        };
    }
    // |phi_n| is unchanged by the shift, so the domination envelope carries over
    return out;
}

BalancednessResult balancedness_check(const std::function<Mat2(double)>& sigma_n,
                                      const std::function<Mat2(double)>& t_n,
                                      const std::vector<double>& ns, double c_max) {
    BalancednessResult res;
    res.holds = true;
    for (double n : ns) {
        Mat2 S = sigma_n(n), T = t_n(n);
        if (S.dim == 1) {
            // |(T Sigma)^* t| = 1 forces |t| = 1/|T Sigma|, so the max is
            // |Sigma| / |T Sigma| = 1/|T|
            double v = 1.0 / std::abs(T.a);
            if (v > res.witness) {
                res.witness = v;
                res.violating_t = {1.0 / std::abs(T.times(S).a), 0.0};
            }
            continue;
        }
        Mat2 M = T.times(S);              // the constraint map
        Mat2 Minv_t = M.inverse();        // for (M^*)^{-1} w = (M^{-1})^* w
        for (int j = 0; j < 720; ++j) {
            double th = 2.0 * pi * j / 720.0;
            Vec2 w{std::cos(th), std::sin(th)};
            Vec2 t = Minv_t.apply_transpose(w);  // |M^* t| = 1
            double v = S.apply_transpose(t).norm();
            if (v > res.witness) {
                res.witness = v;
                res.violating_t = t;
            }
        }
    }
    res.holds = res.witness <= c_max;
    return res;
}

Scenario linear_change(const Scenario& scn, const std::function<Mat2(double)>& t_n,
                       bool override_balancedness) {
    // numeric preconditions along the index set
    double prev_tinv = 1e300, prev_st = 1e300;
    for (double n : scn.index_set) {
        double ti = t_n(n).inverse().op_norm();
        double st = scn.scaling.sigma(n).times(t_n(n)).op_norm();
        if (ti > prev_tinv * (1.0 + 1e-9) || st > prev_st * (1.0 + 1e-9))
            throw std::domain_error("linear_change: T_n^{-1} or Sigma_n T_n not decreasing");
        prev_tinv = ti;
        prev_st = st;
    }
    if (!override_balancedness) {
        auto sig = [&](double n) { return scn.scaling.sigma(n); };
        auto bal = balancedness_check(sig, t_n, scn.index_set, 1e6);
        // reject when the witness grows along the index set
        auto first = balancedness_check(sig, t_n, {scn.index_set.front()}, 1e6);
        if (!bal.holds || bal.witness > 10.0 * std::max(1.0, first.witness))
            throw std::domain_error(
                "linear_change: balancedness condition fails (override to force)");
    }

    Scenario out = scn;
    out.name = scn.name + "+linear";
    auto base_charfn = scn.charfn_of;
    out.charfn_of = [base_charfn, t_n](double n) {
        CharFn cf = base_charfn(n);
        Mat2 Tinv = t_n(n).inverse();
        auto base_eval = cf.eval;
        cf.eval = [base_eval, Tinv](Vec2 t) {
            return base_eval(Tinv.apply_transpose(t));
        };
        return cf;
    };
    auto base_a = scn.scaling.a_of;
    out.scaling.dim = scn.dim;
    out.scaling.a_of = [base_a, t_n](double n) {
        return t_n(n).inverse().times(base_a(n));  // A~ = T^{-1} A, Sigma~ = Sigma T
    };
    if (scn.exact_prob) {
        auto base_exact = scn.exact_prob;
        out.exact_prob = [base_exact, t_n, dim = scn.dim](double n, const Region& B) {
            Mat2 T = t_n(n);
            if (dim == 1 && B.kind == Region::Kind::interval) {
                double a = T.a * B.p[0], b = T.a * B.p[1];
                if (a > b) std::swap(a, b);
                return base_exact(n, Region::interval(a, b));
            }
            // axis-aligned diagonal maps keep boxes boxes
            if (B.kind == Region::Kind::box && T.b == 0.0 && T.c == 0.0) {
                double x0 = T.a * B.p[0], x1 = T.a * B.p[1];
                double y0 = T.d * B.p[2], y1 = T.d * B.p[3];
                if (x0 > x1) std::swap(x0, x1);
                if (y0 > y1) std::swap(y0, y1);
                return base_exact(n, Region::box(x0, x1, y0, y1));
            }
            if (B.kind == Region::Kind::disc && T.b == 0.0 && T.c == 0.0 &&
                T.a == T.d) {
                return base_exact(n, Region::disc(T.a * B.p[0], T.a * B.p[1],
                                                  std::abs(T.a) * B.p[2]));
            }
            throw method_unavailable_error(
                "linear_change: exact backend only maps intervals, axis boxes and "
                "isotropic discs");
        };
    }
    if (scn.sampler) {
        auto base_sampler = scn.sampler;
        out.sampler = [base_sampler, t_n](double n, SplitRng& rng) {
            Vec2 x = base_sampler(n, rng);
            return t_n(n).inverse().apply(x);
        };
    }
    return out;
}

bool trend_improving(const std::vector<double>& values, double slack) {
    if (values.size() < 2) return true;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] * (1.0 + slack) + 1e-12) return false;
    return values.back() < values.front() || values.back() <= 1e-9;
}

}  // namespace modphi::engine
