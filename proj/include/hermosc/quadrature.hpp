#pragma once

// Quadrature building blocks shared across the library:
//  - 7/15 Gauss-Kronrod pairs on explicit panels (value + embedded error),
//  - an adaptive wrapper for generic smooth integrands,
//  - generalized Gauss-Laguerre rules for weights t^alpha e^{-t}.

#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <vector>

namespace hermosc {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss (on [-1,1]).
// Standard published constants.
struct GK15 {
    static constexpr int n = 15;
    // nodes are +-xgk[i] for i<7, plus 0
    static constexpr double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    // Gauss weights attach to xgk[1], xgk[3], xgk[5], xgk[7]
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // |K15 - G7| embedded estimate
};

// single GK15 panel on [a,b]
template <typename F>
inline QuadResult gk15_panel(F&& f, double a, double b) {
    const double hl = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * GK15::xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        resk += GK15::wgk[i] * fsum;
        if (i % 2 == 1) resg += GK15::wg[i / 2] * fsum;
    }
    const double f0 = f(c);
    resk += GK15::wgk[7] * f0;
    resg += GK15::wg[3] * f0;
    return {resk * hl, std::abs(resk - resg) * std::abs(hl)};
}

// Neumaier compensated accumulator
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

// Global-budget adaptive bisection: repeatedly split the panel with the
// largest embedded error until the total estimate meets abs_tol or the
// panel budget is exhausted. Bounded cost on endpoint singularities.
template <typename F>
inline QuadResult adaptive_gk(F&& f, double a, double b, double abs_tol, int max_panels = 1500) {
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> heap;
    {
        const QuadResult r = gk15_panel(f, a, b);
        heap.push({a, b, r.value, r.error});
    }
    double total_err = heap.top().error;
    int n_panels = 1;
    const double min_width = 1e-14 * (std::abs(a) + std::abs(b) + 1.0);
    while (total_err > abs_tol && n_panels < max_panels) {
        const Panel p = heap.top();
        if (p.b - p.a <= min_width) break;
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        const QuadResult rl = gk15_panel(f, p.a, m);
        const QuadResult rr = gk15_panel(f, m, p.b);
        total_err += rl.error + rr.error - p.error;
        heap.push({p.a, m, rl.value, rl.error});
        heap.push({m, p.b, rr.value, rr.error});
        ++n_panels;
    }
    Kahan vsum;
    double esum = 0.0;
    while (!heap.empty()) {
        vsum.add(heap.top().value);
        esum += heap.top().error;
        heap.pop();
    }
    return {vsum.total(), esum};
}

// Generalized Gauss-Laguerre rule: integrates t^alpha e^{-t} g(t) on [0,inf)
// as sum w_i g(t_i). Nodes by Newton on the L_n^{(alpha)} recurrence, weights
// by the closed form w_i = Gamma(n+alpha+1) t_i / (n! (n+1)^2 L_{n+1}(t_i)^2).
struct GaussLaguerre {
    std::vector<double> t, w;

    GaussLaguerre(int n, double alpha) {
        if (n < 1 || alpha <= -1.0) throw std::invalid_argument("GaussLaguerre: bad parameters");
        t.resize(static_cast<std::size_t>(n));
        w.resize(static_cast<std::size_t>(n));
        double z = 0.0;
        for (int i = 0; i < n; ++i) {
            // standard initial guesses, then Newton
            if (i == 0) {
                z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
            } else if (i == 1) {
                z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
            } else {
                const double ai = i - 1;
                z += ((1.0 + 2.55 * ai) / (1.9 * ai) +
                      1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
                     (z - t[static_cast<std::size_t>(i - 2)]) / (1.0 + 0.3 * alpha);
            }
            double p1 = 0.0, p2 = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                p1 = 1.0;
                p2 = 0.0;
                for (int j = 1; j <= n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j - 1.0 + alpha - z) * p2 - (j - 1.0 + alpha) * p3) / j;
                }
                const double pp = (n * p1 - (n + alpha) * p2) / z;
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) <= 1e-15 * std::abs(z)) break;
            }
            t[static_cast<std::size_t>(i)] = z;
            // L_{n+1}^{(alpha)}(z)
            double q1 = 1.0, q2 = 0.0;
            for (int j = 1; j <= n + 1; ++j) {
                const double q3 = q2;
                q2 = q1;
                q1 = ((2.0 * j - 1.0 + alpha - z) * q2 - (j - 1.0 + alpha) * q3) / j;
            }
            const double np1 = n + 1.0;
            w[static_cast<std::size_t>(i)] =
                std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(np1)) * z /
                (np1 * np1 * q1 * q1);
        }
    }
};

// cached rules for the t^{-1/6} e^{-t} weight used by the Hankel integral
// representation and the Langer amplitude kernel
inline const GaussLaguerre& laguerre16_rule(int n) {
    static const GaussLaguerre r64(64, -1.0 / 6.0);
    static const GaussLaguerre r128(128, -1.0 / 6.0);
    static const GaussLaguerre r256(256, -1.0 / 6.0);
    if (n <= 64) return r64;
    if (n <= 128) return r128;
    return r256;
}

} // namespace hermosc
