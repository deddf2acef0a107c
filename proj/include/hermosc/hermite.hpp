#pragma once

// Stable evaluation of the L2-normalized harmonic-oscillator eigenfunctions
// h_n (1-based: h_n has polynomial degree n-1, eigenvalue lambda_n = 2n-1)
// together with the spectral quantities lambda_n, X_n = sqrt(lambda_n) and
// weighted sequence norms on truncated coefficient vectors.
//
// Evaluation uses the normalized three-term recurrence
//   phi_k = x sqrt(2/k) phi_{k-1} - sqrt((k-1)/k) phi_{k-2},
//   phi_0 = pi^{-1/4} e^{-x^2/2},
// carried on (mantissa, log_scale) pairs so that deep-tail samples far below
// the double underflow threshold stay representable.

#include <cmath>
#include <complex>
#include <numbers>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hermosc {

// h_n(x) stored as mantissa * e^{log_scale}
struct HermiteSample {
    int order = 0;      // 1-based index n
    double point = 0.0; // x
    double mantissa = 0.0;
    double log_scale = 0.0;

    // reconstructed value; underflows gracefully to 0 in the deep tail
    double value() const {
        if (mantissa == 0.0) return 0.0;
        if (log_scale < -745.0) return 0.0;
        if (log_scale > 709.0) return mantissa * std::exp(709.0) * std::exp(log_scale - 709.0);
        return mantissa * std::exp(log_scale);
    }
    double log_abs() const {
        return mantissa == 0.0 ? -std::numeric_limits<double>::infinity()
                               : std::log(std::abs(mantissa)) + log_scale;
    }
};

struct SpectralIndex {
    int n = 1;
    double lambda = 1.0;        // 2n - 1
    double turning_point = 1.0; // X_n = sqrt(2n - 1)

    explicit SpectralIndex(int n_) : n(n_) {
        if (n_ < 1) throw std::invalid_argument("SpectralIndex: n must be >= 1");
        lambda = 2.0 * n_ - 1.0;
        turning_point = std::sqrt(lambda);
    }
};

using CoeffVector = std::vector<std::complex<double>>;

inline double eigenvalue(int n) {
    if (n < 1) throw std::invalid_argument("eigenvalue: n must be >= 1");
    return 2.0 * n - 1.0;
}

inline double turning_point(int n) { return std::sqrt(eigenvalue(n)); }

namespace detail {

inline void check_eval_args(int n, double x) {
    if (n < 1) throw std::invalid_argument("hermite_eval: n must be >= 1");
    if (!std::isfinite(x)) throw std::invalid_argument("hermite_eval: x must be finite");
}

// parity sign of h_n under x -> -x is (-1)^{n-1}
inline double parity_sign(int n, double x) { return (x < 0.0 && n % 2 == 0) ? -1.0 : 1.0; }

} // namespace detail

// Single-order evaluation. O(n) recurrence at |x|, parity applied exactly.
inline HermiteSample hermite_eval(int n, double x) {
    detail::check_eval_args(n, x);
    const double ax = std::abs(x);
    const double sign = detail::parity_sign(n, x);

    double log_scale = -0.5 * ax * ax;
    double pm2 = std::pow(std::numbers::pi, -0.25);      // phi_0 mantissa
    double pm1 = std::sqrt(2.0) * ax * pm2; // phi_1 mantissa
    if (n == 1) return {n, x, sign * pm2, log_scale};
    for (int k = 2; k < n; ++k) {
        const double cur = ax * std::sqrt(2.0 / k) * pm1 - std::sqrt((k - 1.0) / k) * pm2;
        pm2 = pm1;
        pm1 = cur;
        const double a = std::abs(pm1);
        if (a > 1e140 || (a > 0.0 && a < 1e-140)) {
            pm2 /= a;
            pm1 /= a;
            log_scale += std::log(a);
        }
    }
    return {n, x, sign * pm1, log_scale};
}

// All orders 1..n_max in one recurrence pass; entrywise identical to
// hermite_eval (same recurrence, same renormalization points).
inline std::vector<HermiteSample> hermite_eval_batch(int n_max, double x) {
    detail::check_eval_args(n_max, x);
    const double ax = std::abs(x);

    std::vector<HermiteSample> out;
    out.reserve(static_cast<std::size_t>(n_max));
    double log_scale = -0.5 * ax * ax;
    double pm2 = std::pow(std::numbers::pi, -0.25);
    double pm1 = std::sqrt(2.0) * ax * pm2;
    out.push_back({1, x, detail::parity_sign(1, x) * pm2, log_scale});
    if (n_max >= 2) out.push_back({2, x, detail::parity_sign(2, x) * pm1, log_scale});
    for (int k = 2; k < n_max; ++k) {
        const double cur = ax * std::sqrt(2.0 / k) * pm1 - std::sqrt((k - 1.0) / k) * pm2;
        pm2 = pm1;
        pm1 = cur;
        const double a = std::abs(pm1);
        if (a > 1e140 || (a > 0.0 && a < 1e-140)) {
            pm2 /= a;
            pm1 /= a;
            log_scale += std::log(a);
        }
        out.push_back({k + 1, x, detail::parity_sign(k + 1, x) * pm1, log_scale});
    }
    return out;
}

// Hot-path batch evaluator with precomputed recurrence coefficients.
// fill() writes reconstructed doubles (tails underflow to 0); const and
// reentrant, safe for concurrent use after construction.
class HermiteBatch {
  public:
    explicit HermiteBatch(int n_max) : n_max_(n_max) {
        if (n_max < 1) throw std::invalid_argument("HermiteBatch: n_max must be >= 1");
        a_.resize(static_cast<std::size_t>(n_max) + 1);
        b_.resize(static_cast<std::size_t>(n_max) + 1);
        for (int k = 2; k <= n_max; ++k) {
            a_[static_cast<std::size_t>(k)] = std::sqrt(2.0 / k);
            b_[static_cast<std::size_t>(k)] = std::sqrt((k - 1.0) / k);
        }
    }

    int n_max() const { return n_max_; }

    // out[j] = h_{j+1}(x), j = 0..n_max-1
    void fill(double x, double* out) const {
        const double ax = std::abs(x);
        const bool flip = x < 0.0;
        double log_scale = -0.5 * ax * ax;
        double scale = log_scale < -745.0 ? 0.0 : std::exp(log_scale);
        double pm2 = std::pow(std::numbers::pi, -0.25);
        double pm1 = std::sqrt(2.0) * ax * pm2;
        out[0] = pm2 * scale;
        if (n_max_ >= 2) out[1] = flip ? -pm1 * scale : pm1 * scale;
        for (int k = 2; k < n_max_; ++k) {
            const double cur = ax * a_[static_cast<std::size_t>(k)] * pm1 -
                               b_[static_cast<std::size_t>(k)] * pm2;
            pm2 = pm1;
            pm1 = cur;
            const double a = std::abs(pm1);
            if (a > 1e140 || (a > 0.0 && a < 1e-140)) {
                pm2 /= a;
                pm1 /= a;
                log_scale += std::log(a);
                scale = log_scale < -745.0 ? 0.0 : std::exp(log_scale);
            }
            const double v = pm1 * scale;
            out[k] = (flip && (k + 1) % 2 == 0) ? -v : v;
        }
    }

  private:
    int n_max_;
    std::vector<double> a_, b_;
};

// (sum_j j^s |xi_j|^2)^{1/2} over the truncated vector, 1-based j
inline double sobolev_norm(const CoeffVector& v, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
        acc += std::pow(static_cast<double>(j + 1), s) * std::norm(v[j]);
    return std::sqrt(acc);
}

} // namespace hermosc
