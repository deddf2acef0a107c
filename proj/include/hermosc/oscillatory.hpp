#pragma once

// Stationary-phase machinery: the van der Corput bound with a direct
// quadrature cross-check, the comparison phase g(x), the Laguerre-type
// amplitude kernel f_m(x), and the classifier for the spectral-gap bands
// that organize the two-turning-point estimates.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hermosc/hermite.hpp"
#include "hermosc/langer.hpp"
#include "hermosc/quadrature.hpp"

namespace hermosc {

// phase derivative g(x) = sqrt(X_n^2 - x^2) - sqrt(X_m^2 - x^2) - k on [0, X_m)
inline double phase_g(double k, int m, int n, double x) {
    const double Xm2 = eigenvalue(m);
    const double Xn2 = eigenvalue(n);
    if (x < 0.0 || x * x >= Xm2) throw std::domain_error("phase_g: x outside [0, X_m)");
    return std::sqrt(Xn2 - x * x) - std::sqrt(Xm2 - x * x) - k;
}

struct PhaseProfile {
    double k;
    SpectralIndex m, n;
    double g(double x) const { return phase_g(k, m.n, n.n, x); }
};

// f_m(x) = int_0^inf e^-t t^{-1/6} (1 + it/(2 zeta_m))^{-1/6} dt, zeta_m < 0.
// Generalized Gauss-Laguerre, nodes doubled until 1e-10 agreement.
inline std::complex<double> kernel_f(const SpectralIndex& m, double x) {
    if (x < 0.0 || x >= m.turning_point)
        throw std::domain_error("kernel_f: requires 0 <= x < X_m");
    const double r = zeta(m, x).abs(); // zeta_m = -r
    std::complex<double> prev(0.0, 0.0), cur(0.0, 0.0);
    for (int nn : {64, 128, 256}) {
        const GaussLaguerre& rule = laguerre16_rule(nn);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < rule.t.size(); ++i) {
            const std::complex<double> base(1.0, -rule.t[i] / (2.0 * r));
            acc += rule.w[i] * std::pow(base, -1.0 / 6.0);
        }
        prev = cur;
        cur = acc;
        if (nn > 64 && std::abs(cur - prev) <= 1e-10 * (1.0 + std::abs(cur))) break;
    }
    return cur;
}

struct AmplitudeProfile {
    SpectralIndex m, n;
    std::complex<double> f_m(double x) const { return kernel_f(m, x); }
    std::complex<double> f_n(double x) const { return kernel_f(n, x); }
    // Psi(x) = (X_m^2-x^2)^{-1/4} (X_n^2-x^2)^{-1/4} f_m(x) conj(f_n(x))
    std::complex<double> psi(double x) const {
        const double am = std::pow(m.lambda - x * x, -0.25);
        const double an = std::pow(n.lambda - x * x, -0.25);
        return am * an * f_m(x) * std::conj(f_n(x));
    }
};

// ---------------------------------------------------------------------------
// van der Corput

struct VdcResult {
    double bound = 0.0;
    std::complex<double> direct{0.0, 0.0};
    bool holds = false; // |direct| <= bound
};

// c_1 = 3, c_2 = 8: explicit stand-ins for the textbook bound's unspecified
// constants (any valid upper constant keeps the one-sided inequality).
inline constexpr double kVdcC1 = 3.0;
inline constexpr double kVdcC2 = 8.0;

// bound = c_j lambda^{-1/j} (|psi(b)| + int_a^b |psi'|); direct quadrature of
// int_a^b e^{i lambda phi} psi. phase_dj is the j-th phase derivative (used
// for the |phi^(j)| >= 1 floor check; for j = 1 it must also be monotone).
inline VdcResult van_der_corput_bound(const std::function<double(double)>& phase,
                                      const std::function<double(double)>& phase_dj,
                                      const std::function<double(double)>& psi,
                                      const std::function<double(double)>& psi_prime,
                                      double lambda, int j, double a, double b) {
    if (j != 1 && j != 2) throw std::invalid_argument("van_der_corput_bound: j must be 1 or 2");
    if (!(lambda > 0.0) || !(b > a)) throw std::invalid_argument("van_der_corput_bound: bad interval");
    // derivative floor (and monotonicity for j = 1) checked on a grid
    const int grid = 256;
    double prev_dj = phase_dj(a);
    for (int i = 0; i <= grid; ++i) {
        const double x = a + (b - a) * i / grid;
        const double dj = phase_dj(x);
        if (std::abs(dj) < 1.0 - 1e-12)
            throw std::invalid_argument("van_der_corput_bound: |phase^(j)| >= 1 violated");
        if (j == 1 && i > 0 && (dj - prev_dj) * (phase_dj(b) - phase_dj(a)) < -1e-12)
            throw std::invalid_argument("van_der_corput_bound: phase' not monotone");
        prev_dj = dj;
    }

    VdcResult out;
    const double cj = (j == 1) ? kVdcC1 : kVdcC2;
    const double int_psip = adaptive_gk([&](double x) { return std::abs(psi_prime(x)); }, a, b, 1e-12).value;
    out.bound = cj * std::pow(lambda, -1.0 / j) * (std::abs(psi(b)) + int_psip);

    // direct value: quarter-wavelength panels against the fastest local phase
    double max_d1 = 0.0;
    if (j == 1) {
        for (int i = 0; i <= grid; ++i)
            max_d1 = std::max(max_d1, std::abs(phase_dj(a + (b - a) * i / grid)));
    } else {
        // estimate phi' by central differences of phi
        const double h = (b - a) / grid;
        for (int i = 1; i < grid; ++i) {
            const double x = a + (b - a) * i / grid;
            max_d1 = std::max(max_d1, std::abs(phase(x + h) - phase(x - h)) / (2.0 * h));
        }
        max_d1 *= 1.5; // slack for the finite grid under-estimate
    }
    const double rate = lambda * std::max(max_d1, 1e-3);
    const double panel = std::numbers::pi / (2.0 * rate);
    Kahan re, im;
    double x0 = a;
    while (x0 < b) {
        const double x1 = std::min(x0 + panel, b);
        const QuadResult pr = gk15_panel([&](double x) { return std::cos(lambda * phase(x)) * psi(x); }, x0, x1);
        const QuadResult pi_ = gk15_panel([&](double x) { return std::sin(lambda * phase(x)) * psi(x); }, x0, x1);
        re.add(pr.value);
        im.add(pi_.value);
        x0 = x1;
    }
    out.direct = {re.total(), im.total()};
    out.holds = std::abs(out.direct) <= out.bound;
    return out;
}

// ---------------------------------------------------------------------------
// band classifier

enum class CaseTag {
    negative_k,    // k < 0
    wide_gap,      // X_n >= 2 X_m
    large_k,       // k > X_m^{1/3}
    gap_below_k23, // 0 <= D < k X_m^{2/3},            D = X_n^2 - X_m^2
    gap_k23_k56,   // k X_m^{2/3} <= D < k X_m^{5/6}
    gap_k56_k1,    // k X_m^{5/6} <= D < k X_m
    gap_k1_4k,     // k X_m <= D < 4 k X_m  (near-resonant band)
    gap_above_4k,  // D >= 4 k X_m
};

inline const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::negative_k: return "negative_k";
        case CaseTag::wide_gap: return "wide_gap";
        case CaseTag::large_k: return "large_k";
        case CaseTag::gap_below_k23: return "gap_below_k23";
        case CaseTag::gap_k23_k56: return "gap_k23_k56";
        case CaseTag::gap_k56_k1: return "gap_k56_k1";
        case CaseTag::gap_k1_4k: return "gap_k1_4k";
        case CaseTag::gap_above_4k: return "gap_above_4k";
    }
    return "?";
}

// Deterministic tag; bands are half-open [lo, hi), so a boundary value
// belongs to the band having it as lower endpoint. wide_gap is closed at
// X_n = 2 X_m.
inline CaseTag case_classify(double k, int m, int n) {
    if (m > n) throw std::invalid_argument("case_classify: requires m <= n");
    if (k == 0.0) throw std::invalid_argument("case_classify: k must be nonzero");
    if (k < 0.0) return CaseTag::negative_k;
    const double Xm = turning_point(m);
    const double Xn = turning_point(n);
    if (Xn >= 2.0 * Xm) return CaseTag::wide_gap;
    if (k > std::cbrt(Xm)) return CaseTag::large_k;
    const double D = Xn * Xn - Xm * Xm;
    if (D < k * std::pow(Xm, 2.0 / 3.0)) return CaseTag::gap_below_k23;
    if (D < k * std::pow(Xm, 5.0 / 6.0)) return CaseTag::gap_k23_k56;
    if (D < k * Xm) return CaseTag::gap_k56_k1;
    if (D < 4.0 * k * Xm) return CaseTag::gap_k1_4k;
    return CaseTag::gap_above_4k;
}

} // namespace hermosc
