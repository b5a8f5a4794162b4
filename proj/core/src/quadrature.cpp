#include "modphi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace modphi::quadrature {

namespace {

// G7-K15 abscissae/weights on [-1, 1]; rows: node, Gauss weight, Kronrod weight.
constexpr double nw[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class T, class F>
void gk15_panel(const F& f, double a, double b, T& k15, double& err) {
    const double x0 = 0.5 * (a + b);
    const double m = b - x0;
    T y0 = f(x0);
    T g7 = nw[0][1] * y0;
    k15 = nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double mx = m * nw[i][0];
        T yi = f(x0 + mx) + f(x0 - mx);
        k15 += nw[i][2] * yi;
        g7 += nw[i][1] * yi;
    }
    g7 *= m;
    k15 *= m;
    double d = std::abs(k15 - g7);
    err = 200.0 * d;
    err *= std::sqrt(err);
    err = std::min(err, d);
    if (err == 0.0) err = std::abs(k15) * 1e-16;
}

template <class T, class F>
struct Panel {
    double a, b, err;
    T val;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class T, class F>
std::pair<T, double> adaptive(const F& f, double a, double b, double abs_tol,
                              double rel_tol, int max_panels) {
    std::priority_queue<Panel<T, F>> heap;
    T v;
    double e;
    gk15_panel<T>(f, a, b, v, e);
    heap.push({a, b, e, v});
    T total = v;
    double total_err = e;
    int panels = 1;
    while (panels < max_panels) {
        double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= target) break;
        Panel<T, F> worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval exhausted
            heap.push(worst);
            break;
        }
        T v1, v2;
        double e1, e2;
        gk15_panel<T>(f, worst.a, mid, v1, e1);
        gk15_panel<T>(f, mid, worst.b, v2, e2);
        total += (v1 + v2) - worst.val;
        total_err += (e1 + e2) - worst.err;
        heap.push({worst.a, mid, e1, v1});
        heap.push({mid, worst.b, e2, v2});
        ++panels;
    }
    // deterministic final summation: panels sorted by left endpoint
    std::vector<Panel<T, F>> all;
    all.reserve(panels);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    T sum{};
    double err_sum = 0.0;
    for (const auto& p : all) {
        sum += p.val;
        err_sum += p.err;
    }
    return {sum, err_sum};
}

}  // namespace

QuadResult gk15(const std::function<double(double)>& f, double a, double b) {
    double v, e;
    gk15_panel<double>(f, a, b, v, e);
    return {v, e};
}

CQuadResult gk15c(const std::function<Complex(double)>& f, double a, double b) {
    Complex v;
    double e;
    gk15_panel<Complex>(f, a, b, v, e);
    return {v, e};
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels) {
    auto [v, e] = adaptive<double>(f, a, b, abs_tol, rel_tol, max_panels);
    return {v, e};
}

CQuadResult integrate_c(const std::function<Complex(double)>& f, double a,
                        double b, double abs_tol, double rel_tol, int max_panels) {
    auto [v, e] = adaptive<Complex>(f, a, b, abs_tol, rel_tol, max_panels);
    return {v, e};
}

double envelope_tail(const std::function<double(double)>& env, double T) {
    double total = 0.0, prev = -1.0;
    double lo = T;
    for (int j = 0; j < 60; ++j) {
        double hi = lo * 2.0;
        double inc = integrate(env, lo, hi, 0.0, 1e-6, 200).value;
        total += inc;
        if (prev >= 0.0 && inc < 1e-9 * (total + 1e-300)) {
            double r = prev > 0.0 ? std::min(0.9, inc / prev) : 0.5;
            return total + inc * r / (1.0 - r);
        }
        if (inc <= 0.0) return total;
        prev = inc;
        lo = hi;
    }
    return total * 2.0;  // did not settle: conservative doubling
}

double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by, double tol) {
    auto outer = [&](double y) {
        return integrate([&](double x) { return f(x, y); }, ax, bx,
                         tol / (4.0 * (by - ay)), 1e-9, 400)
            .value;
    };
    return integrate(outer, ay, by, tol, 1e-9, 400).value;
}

CQuadResult integrate2d_c(const std::function<Complex(double, double)>& f,
                          double ax, double bx, double ay, double by, double tol) {
    double err_acc = 0.0;
    auto outer = [&](double y) {
        auto r = integrate_c([&](double x) { return f(x, y); }, ax, bx,
                             tol / (4.0 * (by - ay)), 1e-9, 400);
        err_acc += r.abs_error;
        return r.value;
    };
    auto res = integrate_c(outer, ay, by, tol, 1e-9, 400);
    return {res.value, res.abs_error};
}

}  // namespace modphi::quadrature
