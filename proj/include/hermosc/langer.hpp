#pragma once

// Langer turning-point representation of h_n specialized to q(x) = x^2:
// the phase zeta_n in closed form, the leading term psi1, residuals against
// the recurrence evaluation, and the defect integral that controls the
// correction term.
//
// For general q the phase is zeta(x) = int_X^x (lambda - q)^{1/2} dt with
// arg zeta = -pi below the turning point and pi/2 above; q = x^2 admits the
// elementary antiderivative used here.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hermosc/bessel.hpp"
#include "hermosc/hermite.hpp"
#include "hermosc/quadrature.hpp"

namespace hermosc {

enum class ZetaBranch { below_turning, above_turning, at_turning };

struct ZetaValue {
    SpectralIndex index;
    double point;
    std::complex<double> value;
    ZetaBranch branch;

    double abs() const { return std::abs(value); }
};

// Closed-form zeta_n(x), x >= 0.
//   x <= X: zeta = -[(lambda/2) acos(x/X) - (x/2) sqrt(lambda - x^2)]   (negative real)
//   x >= X: zeta = i [(x/2) sqrt(x^2-lambda) - (lambda/2) log((x+sqrt(x^2-lambda))/X)]
inline ZetaValue zeta(const SpectralIndex& idx, double x) {
    if (x < 0.0) throw std::invalid_argument("zeta: x must be >= 0 (use parity)");
    const double lam = idx.lambda;
    const double X = idx.turning_point;
    const double delta = std::abs(x - X);
    const double u = delta / (2.0 * X);
    if (u > 0.0 && u <= 1e-3) {
        // series int_0^delta sqrt(d (2X -+ d)) dd; the closed form cancels
        // catastrophically this close to the turning point
        const double base = std::sqrt(2.0 * X) * delta * std::sqrt(delta);
        if (x < X) {
            const double s = 2.0 / 3.0 - u / 5.0 - u * u / 28.0 - u * u * u / 72.0 -
                             5.0 * u * u * u * u / 704.0;
            return {idx, x, std::complex<double>(-base * s, 0.0), ZetaBranch::below_turning};
        }
        const double s = 2.0 / 3.0 + u / 5.0 - u * u / 28.0 + u * u * u / 72.0 -
                         5.0 * u * u * u * u / 704.0;
        return {idx, x, std::complex<double>(0.0, base * s), ZetaBranch::above_turning};
    }
    if (x < X) {
        const double s = std::sqrt(std::max(lam - x * x, 0.0));
        const double v = 0.5 * lam * std::acos(std::min(x / X, 1.0)) - 0.5 * x * s;
        return {idx, x, std::complex<double>(-v, 0.0), ZetaBranch::below_turning};
    }
    if (x > X) {
        const double s = std::sqrt(std::max(x * x - lam, 0.0));
        const double v = 0.5 * x * s - 0.5 * lam * std::log((x + s) / X);
        return {idx, x, std::complex<double>(0.0, v), ZetaBranch::above_turning};
    }
    return {idx, x, std::complex<double>(0.0, 0.0), ZetaBranch::at_turning};
}

// Langer leading term of h_n. Away from the turning point,
//   x < X: psi1 = (lambda-x^2)^{-1/4} sqrt(r) Re[e^{i pi/6} H13(r)],  r = |zeta|
//   x > X: psi1 = (2 pi)^{-1/2} e^{2 i pi/3} sqrt(pi r / 2) (x^2-lambda)^{-1/4} H13(i r)
// including the L2-normalization constant that the asymptotic expansion of
// h_n carries (tail matching; the value is real up to rounding).
inline std::complex<double> psi1(const SpectralIndex& idx, double x) {
    if (x < 0.0) throw std::invalid_argument("psi1: x must be >= 0 (use parity)");
    const double X = idx.turning_point;
    if (std::abs(x - X) < 1e-8 * X)
        throw std::domain_error("psi1: turning-point window |x - X_n| < 1e-8 X_n");
    const ZetaValue zv = zeta(idx, x);
    const double r = zv.abs();
    if (zv.branch == ZetaBranch::below_turning) {
        const double amp = std::pow(idx.lambda - x * x, -0.25);
        const std::complex<double> h = bessel_h13(std::complex<double>(r, 0.0));
        const std::complex<double> rot = std::polar(1.0, std::numbers::pi / 6.0);
        return {amp * std::sqrt(r) * (rot * h).real(), 0.0};
    }
    const double amp = std::pow(x * x - idx.lambda, -0.25);
    const std::complex<double> h = bessel_h13(std::complex<double>(0.0, r));
    return std::polar(1.0, 2.0 * std::numbers::pi / 3.0) * std::sqrt(std::numbers::pi * r / 2.0) * amp * h /
           std::sqrt(2.0 * std::numbers::pi);
}

struct LangerResidualRow {
    double x = 0.0;
    double h = 0.0;          // recurrence value
    double psi1_re = 0.0;    // leading-term value
    double deviation = 0.0;  // |h - psi1| / scale
    bool dropped = false;    // violated the |x - X_n| >= X_n^{-1/3} window
};

// Relative deviations |h_n - psi1|. In the oscillatory region the deviation
// is measured against the local oscillation envelope sqrt(2/pi)(lambda-x^2)^{-1/4}
// (the size |psi1| attains at its extrema); on the monotone tail against
// |psi1| pointwise. Points inside the turning-point window are dropped with
// a flag rather than evaluated.
inline std::vector<LangerResidualRow> langer_residual(const SpectralIndex& idx,
                                                      const std::vector<double>& xs) {
    std::vector<LangerResidualRow> out;
    out.reserve(xs.size());
    const double X = idx.turning_point;
    const double window = std::pow(X, -1.0 / 3.0);
    for (double x : xs) {
        LangerResidualRow row;
        row.x = x;
        if (x < 0.0 || std::abs(x - X) < window) {
            row.dropped = true;
            out.push_back(row);
            continue;
        }
        const double h = hermite_eval(idx.n, x).value();
        const std::complex<double> p = psi1(idx, x);
        row.h = h;
        row.psi1_re = p.real();
        if (x < X) {
            const double envelope = std::sqrt(2.0 / std::numbers::pi) * std::pow(idx.lambda - x * x, -0.25);
            row.deviation = std::abs(h - p.real()) / envelope;
        } else {
            row.deviation = std::abs(h - p.real()) / std::abs(p);
        }
        out.push_back(row);
    }
    return out;
}

// For general q the correction term solves the fixed-point iteration
//   chi(x) = alpha(x) + i int_x^inf (alpha(x) beta(t) - e^{2i(zeta(t)-zeta(x))} beta(x) alpha(t))
//                       f(t) (lambda - q(t))^{1/2} chi(t) dt
// with alpha = e^{-i zeta} sqrt(pi zeta/2) H13(zeta), beta the J_{1/3}
// analogue; only its consequence (the O(1/lambda) accuracy of psi1) is
// computed here. The defect f below is the kernel of that iteration,
// specialized to q = x^2.
struct DefectSample {
    double point = 0.0;
    double defect = 0.0; // f(x)
    double weight = 0.0; // |lambda - q(x)|^{1/2}
};

// f(x) = 5/(36 zeta^2) - q''/(4 (lambda-q)^2) - 5 q'^2/(16 (lambda-q)^3), q = x^2.
// Real on both sides of the turning point (zeta^2 = -|zeta|^2 above it).
inline DefectSample defect_sample(const SpectralIndex& idx, double x) {
    const double lam = idx.lambda;
    const double d = lam - x * x;
    const ZetaValue zv = zeta(idx, x);
    const double z2 = (zv.branch == ZetaBranch::above_turning) ? -zv.abs() * zv.abs()
                                                               : zv.abs() * zv.abs();
    const double f = 5.0 / (36.0 * z2) - 2.0 / (4.0 * d * d) - 5.0 * (4.0 * x * x) / (16.0 * d * d * d);
    return {x, f, std::sqrt(std::abs(d))};
}

struct DefectIntegral {
    double value = 0.0;
    double error = 0.0;       // quadrature error + turning-point window bound
    bool converged = true;
    double window_bound = 0.0;
};

// int_{x_lo}^inf |f(t)| |lambda - q(t)|^{1/2} dt, split at the turning point
// (the I1..I4 decomposition). The |x - X| < 1e-6 X window is excluded from
// the quadrature; its contribution is bounded analytically by the
// f = O(1/(X^2 |q-lambda|)) behaviour and added to the error.
inline DefectIntegral defect_integral(const SpectralIndex& idx, double x_lo) {
    if (x_lo < 0.0) throw std::invalid_argument("defect_integral: x_lo must be >= 0");
    const double X = idx.turning_point;
    const double w = 1e-5 * X;
    auto g = [&](double t) {
        const DefectSample s = defect_sample(idx, t);
        return std::abs(s.defect) * s.weight;
    };

    DefectIntegral out;
    Kahan acc;
    double err = 0.0;
    const double tol = 1e-10;
    int depth_hits = 0;

    auto add_plain = [&](double a, double b) {
        if (b <= a) return;
        const QuadResult r = adaptive_gk(g, a, b, tol, 800);
        acc.add(r.value);
        err += r.error;
        if (r.error > 1000 * tol) ++depth_hits;
    };
    // graded piece adjacent to the turning point: substitute delta = s^2 so the
    // |lambda-q|^{-1/2} edge becomes smooth
    auto add_graded = [&](double a, double b, bool below) {
        if (b <= a) return;
        auto h = [&](double s) {
            const double delta = s * s;
            const double t = below ? X - delta : X + delta;
            return 2.0 * s * g(t);
        };
        const double slo = std::sqrt(below ? X - b : a - X);
        const double shi = std::sqrt(below ? X - a : b - X);
        const QuadResult r = adaptive_gk(h, slo, shi, tol, 800);
        acc.add(r.value);
        err += r.error;
    };

    if (x_lo < X - w) {
        const double mid = std::min(0.9 * X, X - w);
        add_plain(x_lo, std::max(x_lo, mid));
        add_graded(std::max(x_lo, mid), X - w, true);
    }
    if (x_lo < X + w) {
        add_graded(X + w, 1.1 * X + w, false);
        add_plain(1.1 * X + w, 2.0 * X);
    } else {
        add_plain(x_lo, std::max(2.0 * X, x_lo));
    }
    // tail via u = 1/t
    {
        const double t0 = std::max(2.0 * X, x_lo);
        auto h = [&](double u) { return g(1.0 / u) / (u * u); };
        const QuadResult r = adaptive_gk(h, 1e-6 / t0, 1.0 / t0, tol, 800);
        acc.add(r.value);
        err += r.error;
    }
    // analytic bound for the excluded window: |f| <= c/(X^2 |lambda-q|) there
    if (x_lo < X + w) {
        const double c = 2.0;
        out.window_bound = 4.0 * c * std::sqrt(w) / (std::sqrt(2.0) * std::pow(X, 2.5));
        err += out.window_bound;
    }
    out.value = acc.total();
    out.error = err;
    out.converged = depth_hits == 0;
    if (!out.converged)
        throw std::runtime_error("defect_integral: adaptive refinement exceeded depth budget");
    return out;
}

} // namespace hermosc
