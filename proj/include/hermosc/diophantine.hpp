#pragma once

// Frequency-set arithmetic: Diophantine membership up to a cutoff, Monte
// Carlo measure of the excluded resonance zones, the second Melnikov
// condition, and Fourier-coefficient decay checks.
//
// |k| is the l1 norm throughout. Membership is certified up to the finite
// cutoff K (a config value); margins at moderate K indicate asymptotic
// safety for tau-Diophantine vectors.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace hermosc {

struct DiophantineParams {
    double gamma = 0.1;
    double tau = 1.5;
    int d = 1;
    double box_lo = 1.0, box_hi = 2.0; // [A, B]^d
    int K = 200;

    void validate() const {
        if (!(gamma > 0.0)) throw std::invalid_argument("DiophantineParams: gamma must be > 0");
        if (!(tau > d - 1.0)) throw std::invalid_argument("DiophantineParams: tau must be > d-1");
        if (!(box_lo < box_hi)) throw std::invalid_argument("DiophantineParams: A < B required");
        if (d < 1 || K < 1) throw std::invalid_argument("DiophantineParams: d, K must be >= 1");
    }
};

struct MelnikovParams {
    double kappa = 1e-6;
    int K = 50;
    double box_lo = 1.0, box_hi = 2.0; // omega box, default [1,2]^n

    void validate() const {
        if (!(kappa > 0.0 && kappa < 0.25))
            throw std::invalid_argument("MelnikovParams: kappa must lie in (0, 1/4)");
        if (K < 1) throw std::invalid_argument("MelnikovParams: K must be >= 1");
    }
};

namespace detail_dioph {

// visit every k in Z^d with 0 < |k|_1 <= K
template <typename F>
inline void for_each_lattice(int d, int K, F&& visit) {
    std::vector<int> k(static_cast<std::size_t>(d), -K);
    for (;;) {
        int l1 = 0;
        for (int v : k) l1 += std::abs(v);
        if (l1 > 0 && l1 <= K) visit(k, l1);
        int i = 0;
        while (i < d) {
            if (++k[static_cast<std::size_t>(i)] <= K) break;
            k[static_cast<std::size_t>(i)] = -K;
            ++i;
        }
        if (i == d) break;
    }
}

} // namespace detail_dioph

struct DiophantineVerdict {
    bool ok = false;
    std::vector<int> worst_k;
    double worst_margin = std::numeric_limits<double>::infinity(); // |<k,nu>| |k|^tau - gamma
};

// true iff |<k, nu>| >= gamma / |k|^tau for all 0 < |k|_1 <= K
inline DiophantineVerdict is_diophantine(const std::vector<double>& nu, const DiophantineParams& p) {
    p.validate();
    if (static_cast<int>(nu.size()) != p.d)
        throw std::invalid_argument("is_diophantine: nu dimension mismatch");
    DiophantineVerdict v;
    v.ok = true;
    detail_dioph::for_each_lattice(p.d, p.K, [&](const std::vector<int>& k, int l1) {
        double dot = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i) dot += k[i] * nu[i];
        const double margin = std::abs(dot) * std::pow(static_cast<double>(l1), p.tau) - p.gamma;
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_k = k;
        }
        if (margin < 0.0) v.ok = false;
    });
    return v;
}

struct MeasureEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long excluded = 0;
    long samples = 0;
};

// Monte Carlo measure of the resonance-zone union inside [A,B]^d. Batches of
// fixed size use seed+batch_index, so the estimate is deterministic for a
// given seed regardless of scheduling. The lattice and per-k thresholds
// gamma/|k|^tau are precomputed once; half the lattice suffices (k and -k
// give the same band).
inline MeasureEstimate excluded_measure(const DiophantineParams& p, long samples,
                                        std::uint64_t seed = 0x5eed) {
    p.validate();
    if (samples < 10000) throw std::invalid_argument("excluded_measure: need >= 1e4 samples");
    std::vector<double> lattice; // flattened k vectors, d entries each
    std::vector<double> threshold;
    detail_dioph::for_each_lattice(p.d, p.K, [&](const std::vector<int>& k, int l1) {
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0) {
                if (k[i] < 0) return; // canonical half: first nonzero positive
                break;
            }
        for (int v : k) lattice.push_back(static_cast<double>(v));
        threshold.push_back(p.gamma * std::pow(static_cast<double>(l1), -p.tau));
    });
    const std::size_t nk = threshold.size();
    const std::size_t d = static_cast<std::size_t>(p.d);

    const long batch_size = 4096;
    long excluded = 0;
    std::vector<double> nu(d);
    for (long b0 = 0, batch = 0; b0 < samples; b0 += batch_size, ++batch) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(batch));
        std::uniform_real_distribution<double> uni(p.box_lo, p.box_hi);
        const long count = std::min(batch_size, samples - b0);
        for (long s = 0; s < count; ++s) {
            for (auto& x : nu) x = uni(rng);
            bool bad = false;
            const double* kv = lattice.data();
            for (std::size_t i = 0; i < nk; ++i, kv += d) {
                double dot = 0.0;
                for (std::size_t c = 0; c < d; ++c) dot += kv[c] * nu[c];
                if (std::abs(dot) < threshold[i]) {
                    bad = true;
                    break;
                }
            }
            if (bad) ++excluded;
        }
    }
    MeasureEstimate out;
    out.excluded = excluded;
    out.samples = samples;
    const double frac = static_cast<double>(excluded) / samples;
    const double vol = std::pow(p.box_hi - p.box_lo, p.d);
    out.estimate = frac * vol;
    out.stderr_ = vol * std::sqrt(std::max(frac * (1.0 - frac), 1.0 / samples) / samples);
    return out;
}

// exact d = 1 cross-check: the excluded set is [A,B] ∩ {|nu| < gamma/k^{tau+1}},
// dominated by k = 1
inline double excluded_measure_exact_1d(const DiophantineParams& p) {
    p.validate();
    if (p.d != 1) throw std::invalid_argument("excluded_measure_exact_1d: d must be 1");
    const double half_width = p.gamma; // k = 1 band |nu| < gamma is the widest
    const double lo = std::max(p.box_lo, -half_width);
    const double hi = std::min(p.box_hi, half_width);
    return std::max(hi - lo, 0.0);
}

struct MelnikovVerdict {
    bool ok = false;
    std::vector<int> worst_k;
    long worst_j = 0;
    double worst_margin = std::numeric_limits<double>::infinity(); // |<k,w>+j| - kappa(1+|j|)
};

// |<k, omega> + j| >= kappa (1 + |j|) for all 0 < |k|_1 <= K, j in Z.
// Larger |j| pass automatically once j_range >= K max|omega| + 1, since the
// left side grows with slope 1 while the right grows with slope kappa < 1/4.
inline MelnikovVerdict melnikov_check(const std::vector<double>& omega, const MelnikovParams& mp,
                                      long j_range) {
    mp.validate();
    if (omega.empty()) throw std::invalid_argument("melnikov_check: empty omega");
    double omax = 0.0;
    for (double w : omega) omax = std::max(omax, std::abs(w));
    if (j_range < static_cast<long>(mp.K * omax) + 1)
        throw std::invalid_argument("melnikov_check: j_range must be >= K max|omega| + 1");
    MelnikovVerdict v;
    v.ok = true;
    detail_dioph::for_each_lattice(static_cast<int>(omega.size()), mp.K,
                                   [&](const std::vector<int>& k, int) {
        double dot = 0.0;
        for (std::size_t i = 0; i < omega.size(); ++i) dot += k[i] * omega[i];
        // only j near -dot can violate; scan a small window plus j = 0
        const long jc = std::lround(-dot);
        for (long j = jc - 2; j <= jc + 2; ++j) {
            if (std::abs(j) > j_range) continue;
            const double margin = std::abs(dot + j) - mp.kappa * (1.0 + std::abs(j));
            if (margin < v.worst_margin) {
                v.worst_margin = margin;
                v.worst_k = k;
                v.worst_j = j;
            }
            if (margin < 0.0) v.ok = false;
        }
    });
    return v;
}

// ---------------------------------------------------------------------------
// Fourier-coefficient decay

struct FourierKey {
    std::vector<int> k; // phi modes
    std::vector<int> l; // theta modes
    bool operator<(const FourierKey& o) const { return std::tie(k, l) < std::tie(o.k, o.l); }
};

struct FourierDecayReport {
    bool ok = false;
    double C = 0.0; // max over the map of |W_hat| e^{|l| rho} prod <k_i>^{alpha_i (k_i != 0)}
    FourierKey worst;
};

// Each coefficient must obey |W_hat(k,l)| <= C e^{-|l| rho} prod <k_i>^{-alpha_i},
// with alpha_i dropped on components where k_i = 0. C defaults to the max over
// the map (reported); an explicit cap turns the check into a hard verdict
// against that constant.
inline FourierDecayReport fourier_decay_check(
    const std::map<FourierKey, std::complex<double>>& coeffs, double rho,
    const std::vector<double>& alpha_vec,
    double C_cap = std::numeric_limits<double>::infinity()) {
    if (rho < 0.0) throw std::invalid_argument("fourier_decay_check: rho must be >= 0");
    FourierDecayReport rep;
    rep.ok = true;
    for (const auto& [key, val] : coeffs) {
        long l1 = 0;
        for (int l : key.l) l1 += std::abs(l);
        double factor = std::exp(l1 * rho);
        for (std::size_t i = 0; i < key.k.size(); ++i) {
            if (key.k[i] == 0) continue;
            const double ai = i < alpha_vec.size() ? alpha_vec[i] : 0.0;
            factor *= std::pow(std::sqrt(1.0 + static_cast<double>(key.k[i]) * key.k[i]), ai);
        }
        const double c = std::abs(val) * factor;
        if (!std::isfinite(c)) rep.ok = false;
        if (c > rep.C) {
            rep.C = c;
            rep.worst = key;
        }
        if (c > C_cap) rep.ok = false;
    }
    return rep;
}

} // namespace hermosc
