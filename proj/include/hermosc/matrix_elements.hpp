#pragma once

// Oscillatory matrix elements I(k, mu, m, n) = int <x>^mu e^{ikx} h_m h_n dx:
// oscillation-aware panel quadrature, the closed-form mu = 0 oracle, the
// decay-bound bookkeeping, ratio sweeps and exponent fits, the proof-region
// decomposition, and assembly of truncated perturbation matrices with their
// M_alpha norms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hermosc/hermite.hpp"
#include "hermosc/oscillatory.hpp"
#include "hermosc/quadrature.hpp"

namespace hermosc {

struct MatrixElement {
    double k = 0.0;
    double mu = 0.0;
    int m = 0, n = 0;
    std::complex<double> value{0.0, 0.0};
    double quad_error = 0.0;
    int panels = 0;
    bool precision_loss = false;
};

struct DecayBound {
    double k = 0.0, mu = 0.0;
    int m = 0, n = 0;
    double rhs = 0.0;   // (|k| v |k|^{-1}) m^{-alpha} n^{-alpha}, C omitted
    double alpha = 0.0; // 1/12 - mu/4
};

inline DecayBound decay_bound(double k, double mu, int m, int n) {
    if (k == 0.0) throw std::invalid_argument("decay_bound: k must be nonzero");
    if (mu < 0.0 || mu >= 1.0 / 3.0) throw std::invalid_argument("decay_bound: mu outside [0, 1/3)");
    if (m < 1 || n < 1) throw std::invalid_argument("decay_bound: indices must be >= 1");
    DecayBound b;
    b.k = k;
    b.mu = mu;
    b.m = m;
    b.n = n;
    b.alpha = 1.0 / 12.0 - mu / 4.0;
    b.rhs = std::max(std::abs(k), 1.0 / std::abs(k)) *
            std::pow(static_cast<double>(m), -b.alpha) * std::pow(static_cast<double>(n), -b.alpha);
    return b;
}

namespace detail_matel {

// quadrature cutoff: x_max = X_n + Delta with (2 sqrt2/3) sqrt(X_n) Delta^{3/2} = 45
// (tail envelope e^{-|zeta|} < 1e-19), clamped to Delta >= 6
inline double cutoff(double Xn) {
    const double delta = std::pow(135.0 / (2.0 * std::sqrt(2.0)), 2.0 / 3.0) / std::cbrt(Xn);
    return Xn + std::max(delta, 6.0);
}

// quarter-wavelength panel length against the local frequency
// omega(x) = sqrt((lam_m - x^2)+) + sqrt((lam_n - x^2)+) + |k|, with each
// eigenfunction's rate floored at lambda^{1/6} (the Airy transition scale at
// the turning point, where the naive rate vanishes but the function still
// varies on the lambda^{-1/6} scale)
inline double panel_len(double x, double lam_m, double lam_n, double abs_k) {
    const double gm = std::max(std::sqrt(std::abs(lam_m - x * x)), std::pow(lam_m, 1.0 / 6.0));
    const double gn = std::max(std::sqrt(std::abs(lam_n - x * x)), std::pow(lam_n, 1.0 / 6.0));
    const double om = gm + gn + abs_k;
    return std::numbers::pi / (2.0 * om);
}

// recurrence evaluation of the pair (h_m, h_n) at x >= 0, m <= n
struct PairEval {
    int m, n;
    std::vector<double> a, b; // recurrence coefficients

    PairEval(int m_, int n_) : m(m_), n(n_) {
        a.resize(static_cast<std::size_t>(n) + 1);
        b.resize(static_cast<std::size_t>(n) + 1);
        for (int k = 2; k <= n; ++k) {
            a[static_cast<std::size_t>(k)] = std::sqrt(2.0 / k);
            b[static_cast<std::size_t>(k)] = std::sqrt((k - 1.0) / k);
        }
    }

    // product h_m(x) h_n(x) (x >= 0)
    double product(double x) const {
        double log_scale = -0.5 * x * x;
        double scale = log_scale < -745.0 ? 0.0 : std::exp(log_scale);
        double pm2 = std::pow(std::numbers::pi, -0.25);
        double pm1 = std::sqrt(2.0) * x * pm2;
        double hm = (m == 1) ? pm2 * scale : (m == 2 ? pm1 * scale : 0.0);
        double hn = (n == 1) ? pm2 * scale : (n == 2 ? pm1 * scale : 0.0);
        for (int k = 2; k < n; ++k) {
            const double cur = x * a[static_cast<std::size_t>(k)] * pm1 -
                               b[static_cast<std::size_t>(k)] * pm2;
            pm2 = pm1;
            pm1 = cur;
            const double av = std::abs(pm1);
            if (av > 1e140 || (av > 0.0 && av < 1e-140)) {
                pm2 /= av;
                pm1 /= av;
                log_scale += std::log(av);
                scale = log_scale < -745.0 ? 0.0 : std::exp(log_scale);
            }
            if (k + 1 == m) hm = pm1 * scale;
            if (k + 1 == n) hn = pm1 * scale;
        }
        return hm * hn;
    }
};

struct PanelAccum {
    Kahan val;
    double err = 0.0;
};

} // namespace detail_matel

// Shared engine: integrates <x>^mu trig(kx) h_m h_n over [0, x_max] on
// quarter-wavelength panels for every (k, mu) combination at once, reusing
// one recurrence pass per node. Used by osc_integral, gram_integral and the
// ratio sweeps.
inline std::vector<MatrixElement> osc_integral_multi(const std::vector<double>& ks,
                                                     const std::vector<double>& mus,
                                                     int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("osc_integral: indices must be >= 1");
    for (double mu : mus)
        if (mu < 0.0 || mu >= 1.0 / 3.0)
            throw std::invalid_argument("osc_integral: mu outside [0, 1/3)");
    const int lo = std::min(m, n), hi = std::max(m, n);
    const double lam_m = eigenvalue(lo), lam_n = eigenvalue(hi);
    const double x_max = detail_matel::cutoff(std::sqrt(lam_n));
    double k_env = 0.0;
    for (double k : ks) k_env = std::max(k_env, std::abs(k));

    const bool even = ((m + n) % 2 == 0);
    detail_matel::PairEval pe(lo, hi);

    const std::size_t combos = ks.size() * mus.size();
    std::vector<detail_matel::PanelAccum> acc(combos);
    int panels = 0;

    double a = 0.0;
    while (a < x_max) {
        const double b = std::min(a + detail_matel::panel_len(a, lam_m, lam_n, k_env), x_max);
        // cache h_m h_n at the 15 panel nodes once per panel, then form the
        // GK sums per (k, mu) combination from the cached values
        const double hl = 0.5 * (b - a), c = 0.5 * (a + b);
        double xs[15], prod[15];
        for (int i = 0; i < 7; ++i) {
            xs[2 * i] = c - hl * GK15::xgk[i];
            xs[2 * i + 1] = c + hl * GK15::xgk[i];
        }
        xs[14] = c;
        for (int i = 0; i < 15; ++i) prod[i] = pe.product(xs[i]);
        std::size_t ci = 0;
        for (double k : ks) {
            double trig[15];
            for (int i = 0; i < 15; ++i)
                trig[i] = even ? std::cos(k * xs[i]) : std::sin(k * xs[i]);
            for (double mu : mus) {
                double resk = 0.0, resg = 0.0;
                for (int i = 0; i < 7; ++i) {
                    double pair_sum = 0.0;
                    for (int s = 0; s < 2; ++s) {
                        const int idx = 2 * i + s;
                        const double w = (mu == 0.0) ? 1.0 : std::pow(1.0 + xs[idx] * xs[idx], 0.5 * mu);
                        pair_sum += w * trig[idx] * prod[idx];
                    }
                    resk += GK15::wgk[i] * pair_sum;
                    if (i % 2 == 1) resg += GK15::wg[i / 2] * pair_sum;
                }
                const double w0 = (mu == 0.0) ? 1.0 : std::pow(1.0 + xs[14] * xs[14], 0.5 * mu);
                const double f0 = w0 * trig[14] * prod[14];
                resk += GK15::wgk[7] * f0;
                resg += GK15::wg[3] * f0;
                acc[ci].val.add(resk * hl);
                acc[ci].err += std::abs(resk - resg) * hl;
                ++ci;
            }
        }
        ++panels;
        a = b;
    }

    std::vector<MatrixElement> out;
    out.reserve(combos);
    std::size_t ci = 0;
    for (double k : ks) {
        for (double mu : mus) {
            MatrixElement e;
            e.k = k;
            e.mu = mu;
            e.m = m;
            e.n = n;
            const double half = acc[ci].val.total();
            e.value = even ? std::complex<double>(2.0 * half, 0.0)
                           : std::complex<double>(0.0, 2.0 * half);
            e.quad_error = 2.0 * acc[ci].err + 1e-19;
            e.panels = panels;
            if (k != 0.0) {
                const double tol = std::max(1e-12, 1e-10 * decay_bound(k, mu, m, n).rhs);
                e.precision_loss = e.quad_error > tol;
            } else {
                e.precision_loss = e.quad_error > 1e-10;
            }
            out.push_back(e);
            ++ci;
        }
    }
    return out;
}

// Amortized variant: every element I(k, mu, m, n) for m, n <= N at once on
// the panel grid of the worst pair (one recurrence pass per node, rank-one
// accumulation). Identical nodes and weights as the per-pair engine, sums
// reordered; used by the all-pairs verification sweeps.
struct ElementTable {
    double k = 0.0, mu = 0.0;
    int N = 0;
    std::vector<double> cos_half, sin_half; // N x N half-line integrals

    ElementTable(double k_, double mu_, int N_) : k(k_), mu(mu_), N(N_) {
        if (N < 1) throw std::invalid_argument("ElementTable: N must be >= 1");
        if (mu < 0.0 || mu >= 1.0 / 3.0) throw std::invalid_argument("ElementTable: mu outside [0, 1/3)");
        cos_half.assign(static_cast<std::size_t>(N) * N, 0.0);
        sin_half.assign(static_cast<std::size_t>(N) * N, 0.0);
        const double lam = eigenvalue(N);
        const double x_max = detail_matel::cutoff(std::sqrt(lam));
        HermiteBatch hb(N);
        std::vector<double> h(static_cast<std::size_t>(N));
        double a = 0.0;
        while (a < x_max) {
            const double b = std::min(a + detail_matel::panel_len(a, lam, lam, std::abs(k)), x_max);
            const double hl = 0.5 * (b - a), c = 0.5 * (a + b);
            for (int i = 0; i < 8; ++i) {
                const int reps = (i < 7) ? 2 : 1;
                for (int s = 0; s < reps; ++s) {
                    const double x = (i < 7) ? (s == 0 ? c - hl * GK15::xgk[i] : c + hl * GK15::xgk[i]) : c;
                    const double w = GK15::wgk[i] * hl * std::pow(1.0 + x * x, 0.5 * mu);
                    hb.fill(x, h.data());
                    const double gc = w * std::cos(k * x);
                    const double gs = w * std::sin(k * x);
                    for (int p = 0; p < N; ++p) {
                        const double hc = gc * h[static_cast<std::size_t>(p)];
                        const double hs = gs * h[static_cast<std::size_t>(p)];
                        double* crow = cos_half.data() + static_cast<std::size_t>(p) * N;
                        double* srow = sin_half.data() + static_cast<std::size_t>(p) * N;
                        // parity masks: cos couples even i+j, sin couples odd
                        for (int q = p; q < N; q += 2) crow[q] += hc * h[static_cast<std::size_t>(q)];
                        for (int q = p + 1; q < N; q += 2) srow[q] += hs * h[static_cast<std::size_t>(q)];
                    }
                }
            }
            a = b;
        }
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < p; ++q) {
                cos_half[static_cast<std::size_t>(p) * N + q] = cos_half[static_cast<std::size_t>(q) * N + p];
                sin_half[static_cast<std::size_t>(p) * N + q] = sin_half[static_cast<std::size_t>(q) * N + p];
            }
    }

    // full-line element (half-line doubled, parity-selected component)
    std::complex<double> element(int m, int n) const {
        const std::size_t idx = static_cast<std::size_t>(m - 1) * N + (n - 1);
        if ((m + n) % 2 == 0) return {2.0 * cos_half[idx], 0.0};
        return {0.0, 2.0 * sin_half[idx]};
    }
};

// I(k, mu, m, n) = int_R <x>^mu e^{ikx} h_m(x) h_n(x) dx.
// Real when m+n is even, purely imaginary when odd (parity reduction to
// [0, x_max] with the matching trig factor, doubled).
inline MatrixElement osc_integral(double k, double mu, int m, int n) {
    if (k == 0.0) throw std::invalid_argument("osc_integral: k = 0 (use gram_integral)");
    return osc_integral_multi({k}, {mu}, m, n)[0];
}

// k = 0, mu = 0 limit of the same engine: returns delta_{mn}
inline double gram_integral(int m, int n) {
    return osc_integral_multi({0.0}, {0.0}, m, n)[0].value.real();
}

// Closed-form mu = 0 oracle: for p = max(m,n)-1, q = min(m,n)-1,
//   I = sqrt(q!/p!) (ik/sqrt2)^{p-q} e^{-k^2/4} L_q^{(p-q)}(k^2/2),
// with the Laguerre value carried on (mantissa, log_scale) so large
// index gaps neither overflow nor underflow the recurrence.
inline std::complex<double> oracle_mu0(double k, int m, int n) {
    if (k == 0.0) throw std::invalid_argument("oracle_mu0: k must be nonzero");
    if (m < 1 || n < 1) throw std::invalid_argument("oracle_mu0: indices must be >= 1");
    const int p = std::max(m, n) - 1, q = std::min(m, n) - 1;
    const int a = p - q;
    const double x = 0.5 * k * k;

    // scaled recurrence for L_q^{(a)}(x)
    double lm1 = 1.0, lm2 = 0.0; // L_0, L_{-1}
    double log_scale = 0.0;
    for (int j = 1; j <= q; ++j) {
        const double cur = ((2.0 * j - 1.0 + a - x) * lm1 - (j - 1.0 + a) * lm2) / j;
        lm2 = lm1;
        lm1 = cur;
        const double av = std::abs(lm1);
        if (av > 1e140 || (av > 0.0 && av < 1e-140)) {
            lm2 /= av;
            lm1 /= av;
            log_scale += std::log(av);
        }
    }
    if (lm1 == 0.0) return {0.0, 0.0};
    const double log_mag = 0.5 * (std::lgamma(q + 1.0) - std::lgamma(p + 1.0)) +
                           a * std::log(std::abs(k) / std::sqrt(2.0)) - 0.25 * k * k +
                           std::log(std::abs(lm1)) + log_scale;
    double mag = log_mag < -745.0 ? 0.0 : std::exp(log_mag);
    if (lm1 < 0.0) mag = -mag;
    if (k < 0.0 && a % 2 == 1) mag = -mag;
    // times i^a
    switch (a % 4) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

// ---------------------------------------------------------------------------
// ratio sweeps and exponent fits

struct SweepRow {
    std::size_t input_index = 0;
    double k = 0.0, mu = 0.0;
    int m = 0, n = 0;
    std::complex<double> value{0.0, 0.0};
    double abs_value = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double quad_error = 0.0;
    int panels = 0;
    std::string case_tag;
    bool precision_loss = false;
};

struct SweepSummary {
    double sup_ratio = 0.0;
    std::map<std::pair<double, double>, double> sup_by_k_mu;
    bool any_precision_loss = false;
};

struct SweepResult {
    std::vector<SweepRow> rows; // sorted by ratio, descending
    SweepSummary summary;
};

// |I|/rhs per (k, mu, m, n) tuple; rows sorted by ratio descending.
// Element evaluations share one panel grid per pair.
inline SweepResult bound_ratio_sweep(const std::vector<double>& ks, const std::vector<double>& mus,
                                     const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& [m, n] : pairs)
        if (std::max(m, n) > 4000)
            throw std::invalid_argument("bound_ratio_sweep: max index 4000 exceeded");
    SweepResult res;
    std::size_t input_index = 0;
    for (const auto& [m, n] : pairs) {
        const auto elems = osc_integral_multi(ks, mus, m, n);
        for (const auto& e : elems) {
            SweepRow row;
            row.input_index = input_index++;
            row.k = e.k;
            row.mu = e.mu;
            row.m = e.m;
            row.n = e.n;
            row.value = e.value;
            row.abs_value = std::abs(e.value);
            const DecayBound b = decay_bound(e.k, e.mu, e.m, e.n);
            row.rhs = b.rhs;
            row.ratio = row.abs_value / row.rhs;
            row.quad_error = e.quad_error;
            row.panels = e.panels;
            row.case_tag = to_string(case_classify(e.k, std::min(m, n), std::max(m, n)));
            row.precision_loss = e.precision_loss;
            res.rows.push_back(row);

            res.summary.sup_ratio = std::max(res.summary.sup_ratio, row.ratio);
            auto& s = res.summary.sup_by_k_mu[{row.k, row.mu}];
            s = std::max(s, row.ratio);
            res.summary.any_precision_loss |= row.precision_loss;
        }
    }
    std::stable_sort(res.rows.begin(), res.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.ratio > b.ratio; });
    return res;
}

struct ExponentFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

// least-squares slope of log|I| against log m
inline ExponentFit exponent_fit(const std::vector<std::pair<int, double>>& samples) {
    if (samples.size() < 8) throw std::invalid_argument("exponent_fit: need >= 8 samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first <= samples[i - 1].first)
            throw std::invalid_argument("exponent_fit: m must be strictly increasing");
    const std::size_t N = samples.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(N), ys(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (!(samples[i].second > 0.0))
            throw std::invalid_argument("exponent_fit: |I| must be positive");
        xs[i] = std::log(static_cast<double>(samples[i].first));
        ys[i] = std::log(samples[i].second);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / N, my = sy / N;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (syy == 0.0) throw std::invalid_argument("exponent_fit: degenerate (constant) samples");
    ExponentFit out;
    out.slope = sxy / sxx;
    out.count = N;
    const double ssr = std::max(syy - out.slope * sxy, 0.0);
    out.stderr_ = std::sqrt(ssr / (N - 2.0) / sxx);
    return out;
}

// ---------------------------------------------------------------------------
// proof-region decomposition

struct RegionPartial {
    double lo = 0.0, hi = 0.0; // hi = inf encoded by infinity()
    std::complex<double> partial{0.0, 0.0};
};

struct RegionDecomposition {
    std::vector<RegionPartial> regions;
    std::complex<double> half_line{0.0, 0.0}; // independent quadrature of int_0^inf
    CaseTag tag = CaseTag::gap_below_k23;
};

// Partial integrals of int_0^inf <x>^mu e^{ikx} h_m h_n over the proof
// intervals; their sum reproduces the half-line integral by construction
// (shared panel grid split at the boundaries).
inline RegionDecomposition region_decomposition(double k, double mu, int m, int n) {
    if (m > n) throw std::invalid_argument("region_decomposition: requires m <= n");
    if (m < 13)
        throw std::invalid_argument("region_decomposition: m too small for ordered intervals (need m >= 13)");
    if (k == 0.0) throw std::invalid_argument("region_decomposition: k must be nonzero");
    if (mu < 0.0 || mu >= 1.0 / 3.0) throw std::invalid_argument("region_decomposition: mu outside [0, 1/3)");
    const double Xm = turning_point(m), Xn = turning_point(n);
    const double lam_m = eigenvalue(m), lam_n = eigenvalue(n);

    std::vector<double> bounds;
    if (Xn >= 2.0 * Xm)
        bounds = {0.0, Xm - std::pow(Xm, -1.0 / 3.0), Xm, Xn, 2.0 * Xn};
    else
        bounds = {0.0, std::pow(Xm, 2.0 / 3.0), Xm - std::cbrt(Xm), Xn, 2.0 * Xn};

    const double x_max = std::max(detail_matel::cutoff(Xn), 2.0 * Xn + 1.0);
    detail_matel::PairEval pe(m, n);

    RegionDecomposition out;
    out.tag = case_classify(k, m, n);
    out.regions.resize(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        out.regions[i].lo = bounds[i];
        out.regions[i].hi = (i + 1 < bounds.size()) ? bounds[i + 1]
                                                    : std::numeric_limits<double>::infinity();
    }

    Kahan re_all, im_all;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const double lo = bounds[i];
        const double hi = std::min((i + 1 < bounds.size()) ? bounds[i + 1] : x_max, x_max);
        if (hi <= lo) continue;
        Kahan re, im;
        double a = lo;
        while (a < hi) {
            const double b = std::min(a + detail_matel::panel_len(a, lam_m, lam_n, std::abs(k)), hi);
            const QuadResult rr = gk15_panel(
                [&](double x) {
                    return std::pow(1.0 + x * x, 0.5 * mu) * std::cos(k * x) * pe.product(x);
                },
                a, b);
            const QuadResult ri = gk15_panel(
                [&](double x) {
                    return std::pow(1.0 + x * x, 0.5 * mu) * std::sin(k * x) * pe.product(x);
                },
                a, b);
            re.add(rr.value);
            im.add(ri.value);
            a = b;
        }
        out.regions[i].partial = {re.total(), im.total()};
        re_all.add(re.total());
        im_all.add(im.total());
    }
    out.half_line = {re_all.total(), im_all.total()};
    return out;
}

// ---------------------------------------------------------------------------
// perturbation matrices

// finite cosine/sine series on T^n with real coefficients
struct FourierSeries {
    struct Term {
        std::vector<int> l; // integer multi-index
        double cos_c = 0.0;
        double sin_c = 0.0;
    };
    double constant = 0.0;
    std::vector<Term> terms;

    double eval(const std::vector<double>& theta) const {
        double v = constant;
        for (const auto& t : terms) {
            double phase = 0.0;
            for (std::size_t i = 0; i < t.l.size() && i < theta.size(); ++i)
                phase += t.l[i] * theta[i];
            v += t.cos_c * std::cos(phase) + t.sin_c * std::sin(phase);
        }
        return v;
    }
};

// finite-Fourier perturbation W(x, theta) = <x>^mu sum_k a_k(theta) sin kx + b_k(theta) cos kx
struct WSpec {
    struct Mode {
        double k = 0.0;           // nonzero frequency; may be derived from kint . nu
        std::vector<int> kint;    // optional integer phi-mode (empty when k is direct)
        FourierSeries a, b;
    };
    std::vector<Mode> modes;

    void validate() const {
        if (modes.empty()) throw std::invalid_argument("WSpec: no modes");
        for (const auto& md : modes)
            if (md.k == 0.0) throw std::invalid_argument("WSpec: k = 0 mode not allowed (odd symmetry)");
    }

    // resolve integer phi-modes against a frequency vector nu
    void resolve_k(const std::vector<double>& nu) {
        for (auto& md : modes) {
            if (md.kint.empty()) continue;
            double k = 0.0;
            for (std::size_t i = 0; i < md.kint.size() && i < nu.size(); ++i)
                k += md.kint[i] * nu[i];
            md.k = k;
        }
    }
};

struct PerturbationMatrix {
    std::vector<double> theta;
    double mu = 0.0;
    int size = 0;
    std::vector<double> entries; // row-major N x N, real symmetric

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i - 1) * size + (j - 1)]; }
};

// |A|_alpha = sup_{a,b} (ab)^alpha |A_a^b|; plus variant adds (1 + |a-b|)
inline double malpha_norm(const PerturbationMatrix& P, double alpha, bool plus = false) {
    if (alpha < 0.0) throw std::invalid_argument("malpha_norm: alpha must be >= 0");
    double sup = 0.0;
    for (int a = 1; a <= P.size; ++a)
        for (int b = 1; b <= P.size; ++b) {
            double v = std::pow(static_cast<double>(a) * b, alpha) * std::abs(P.at(a, b));
            if (plus) v *= 1.0 + std::abs(a - b);
            sup = std::max(sup, v);
        }
    return sup;
}

namespace detail_matel {

// Gauss-Hermite grid for the full-line integrals behind the S/C tables:
// nodes are the positive roots of h_{Np+1} (plus 0 when present), effective
// weights w_q = 1 / sum_{j<=Np} h_j(x_q)^2 so that
// int_R F(x) dx ~= sum_q w_q F(x_q) for F = (poly deg <= 2 Np - 1) e^{-x^2}.
struct HermiteGrid {
    std::vector<double> x, w; // positive nodes (x = 0 included when a root)

    explicit HermiteGrid(int np) {
        const int order = np + 1; // 1-based index of the root-carrying function
        HermiteBatch hb(order);
        std::vector<double> vals(static_cast<std::size_t>(order));
        const double lam = eigenvalue(order);
        const double X = std::sqrt(lam);
        auto f = [&](double t) {
            hb.fill(t, vals.data());
            return vals[static_cast<std::size_t>(order - 1)];
        };
        // scan for sign changes; grid resolves the local oscillation scale
        const bool zero_is_root = (order % 2 == 0);
        double prev_x = zero_is_root ? 1e-12 : 0.0;
        double prev_f = f(prev_x);
        double t = prev_x;
        std::vector<double> roots;
        if (zero_is_root) roots.push_back(0.0);
        while (t < X) {
            const double dens = std::max(std::sqrt(std::max(lam - t * t, 0.0)), std::pow(lam, 1.0 / 6.0));
            t = std::min(t + std::numbers::pi / (6.0 * dens), X);
            const double ft = f(t);
            if (prev_f == 0.0 || ft == 0.0 || (prev_f < 0.0) != (ft < 0.0)) {
                double lo = prev_x, hi = t, flo = prev_f;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = f(mid);
                    if (fm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((flo < 0.0) != (fm < 0.0))
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                    if (hi - lo < 1e-15 * (1.0 + mid)) break;
                }
                roots.push_back(0.5 * (lo + hi));
            }
            prev_x = t;
            prev_f = ft;
        }
        const int expected = np / 2 + (zero_is_root ? 1 : 0);
        if (static_cast<int>(roots.size()) != expected)
            throw std::runtime_error("HermiteGrid: root scan miscounted");
        x = roots;
        w.resize(x.size());
        std::vector<double> hw(static_cast<std::size_t>(np));
        HermiteBatch hb2(np);
        for (std::size_t q = 0; q < x.size(); ++q) {
            hb2.fill(x[q], hw.data());
            double s = 0.0;
            for (double v : hw) s += v * v;
            w[q] = 1.0 / s;
        }
    }
};

} // namespace detail_matel

// theta-independent tables S_k(i,j) = int <x>^mu sin(kx) h_i h_j and
// C_k(i,j) = int <x>^mu cos(kx) h_i h_j for 1 <= i, j <= N, one pair per
// mode frequency. Built once per (Lambda, mu, N) on a Gauss-Hermite grid
// with buffer nodes; write-once, then read-only.
class PerturbationTables {
  public:
    PerturbationTables(const WSpec& spec, double mu, int N, int buffer = 192)
        : spec_(spec), mu_(mu), N_(N) {
        spec_.validate();
        if (N < 1) throw std::invalid_argument("PerturbationTables: N must be >= 1");
        if (mu < 0.0 || mu >= 1.0 / 3.0)
            throw std::invalid_argument("PerturbationTables: mu outside [0, 1/3)");
        const detail_matel::HermiteGrid grid(N + buffer);
        HermiteBatch hb(N);
        std::vector<double> h(static_cast<std::size_t>(N));
        const std::size_t nn = static_cast<std::size_t>(N) * N;
        for (const auto& mode : spec_.modes) {
            std::vector<double> C(nn, 0.0), S(nn, 0.0);
            for (std::size_t q = 0; q < grid.x.size(); ++q) {
                const double x = grid.x[q];
                hb.fill(x, h.data());
                const double wgt = grid.w[q] * std::pow(1.0 + x * x, 0.5 * mu);
                const double factor = (x == 0.0) ? 1.0 : 2.0; // +-x pairing
                const double gc = factor * wgt * std::cos(mode.k * x);
                const double gs = factor * wgt * std::sin(mode.k * x);
                for (int i = 0; i < N_; ++i) {
                    const double hi_c = gc * h[static_cast<std::size_t>(i)];
                    const double hi_s = gs * h[static_cast<std::size_t>(i)];
                    double* crow = C.data() + static_cast<std::size_t>(i) * N_;
                    double* srow = S.data() + static_cast<std::size_t>(i) * N_;
                    // parity: cos couples i+j even, sin couples i+j odd
                    for (int j = i; j < N_; j += 2) crow[j] += hi_c * h[static_cast<std::size_t>(j)];
                    for (int j = i + 1; j < N_; j += 2) srow[j] += hi_s * h[static_cast<std::size_t>(j)];
                }
            }
            // mirror the upper triangles
            for (int i = 0; i < N_; ++i)
                for (int j = 0; j < i; ++j) {
                    C[static_cast<std::size_t>(i) * N_ + j] = C[static_cast<std::size_t>(j) * N_ + i];
                    S[static_cast<std::size_t>(i) * N_ + j] = S[static_cast<std::size_t>(j) * N_ + i];
                }
            cos_tables_.push_back(std::move(C));
            sin_tables_.push_back(std::move(S));
        }
    }

    int size() const { return N_; }
    double mu() const { return mu_; }
    const WSpec& spec() const { return spec_; }
    std::size_t mode_count() const { return spec_.modes.size(); }
    const std::vector<double>& sin_table(std::size_t mode) const { return sin_tables_[mode]; }
    const std::vector<double>& cos_table(std::size_t mode) const { return cos_tables_[mode]; }

    // P(theta) = sum_k a_k(theta) S_k + b_k(theta) C_k
    PerturbationMatrix assemble(const std::vector<double>& theta) const {
        PerturbationMatrix P;
        P.theta = theta;
        P.mu = mu_;
        P.size = N_;
        P.entries.assign(static_cast<std::size_t>(N_) * N_, 0.0);
        for (std::size_t mode = 0; mode < spec_.modes.size(); ++mode) {
            const double av = spec_.modes[mode].a.eval(theta);
            const double bv = spec_.modes[mode].b.eval(theta);
            const auto& S = sin_tables_[mode];
            const auto& C = cos_tables_[mode];
            for (std::size_t idx = 0; idx < P.entries.size(); ++idx)
                P.entries[idx] += av * S[idx] + bv * C[idx];
        }
        return P;
    }

    // y += scale * (a_k S_k + b_k C_k) x for every mode, complex vector x
    void apply(const std::vector<double>& theta, const std::complex<double>* x,
               std::complex<double>* y, std::complex<double> scale) const {
        for (std::size_t mode = 0; mode < spec_.modes.size(); ++mode) {
            const double av = spec_.modes[mode].a.eval(theta);
            const double bv = spec_.modes[mode].b.eval(theta);
            const auto& S = sin_tables_[mode];
            const auto& C = cos_tables_[mode];
            for (int i = 0; i < N_; ++i) {
                std::complex<double> acc(0.0, 0.0);
                const double* srow = S.data() + static_cast<std::size_t>(i) * N_;
                const double* crow = C.data() + static_cast<std::size_t>(i) * N_;
                for (int j = 0; j < N_; ++j) acc += (av * srow[j] + bv * crow[j]) * x[j];
                y[i] += scale * acc;
            }
        }
    }

  private:
    WSpec spec_;
    double mu_;
    int N_;
    std::vector<std::vector<double>> cos_tables_, sin_tables_;
};

// single-shot assembly per the module contract; callers with many theta
// evaluations should hold a PerturbationTables instance instead
inline PerturbationMatrix perturbation_matrix(const WSpec& spec, const std::vector<double>& theta,
                                              double mu, int N) {
    PerturbationTables tables(spec, mu, N);
    return tables.assemble(theta);
}

} // namespace hermosc
