#pragma once

// Hankel function H^(1)_{1/3} on the rays the eigenfunction estimates use.
//
// Evaluation follows the two representations behind the decay bounds:
//   |z| <= 1 : power series of J_{+-1/3} combined through the third-kind
//              connection formula,
//   |z| >  1 : 64..256-node generalized Gauss-Laguerre quadrature of the
//              Hankel loop integral
//                H_nu(z) = sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} / Gamma(nu+1/2)
//                          * int_0^inf e^-t t^{nu-1/2} (1 + it/(2z))^{nu-1/2} dt,
//              doubling nodes until successive values agree to 1e-10.
//
// Ray convention: on the negative real axis the argument is taken as -pi
// (the convention of the phase function zeta below the turning point). There
// the integral representation defines the one-sided recessive branch
// e^{-i nu pi} H^(2)_nu(|z|), which is the branch the estimates bound; it is
// NOT the analytic continuation of H^(1) across arg z = pi. Both the series
// and the quadrature evaluate that same branch, so the representations agree
// on every used ray. Elsewhere (arg z in (-pi/2, pi]) the value is the
// ordinary principal-branch H^(1)_{1/3}.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "hermosc/quadrature.hpp"

namespace hermosc {

namespace detail_bessel {

inline constexpr double kNu = 1.0 / 3.0;

// J_nu(r) for real r in (0, ~30] by the ascending series, nu = +-1/3
inline double bessel_j_series(double nu, double r) {
    const double q = 0.25 * r * r;
    double term = std::pow(0.5 * r, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int j = 1; j < 200; ++j) {
        term *= -q / (j * (nu + j));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// one-sided branch on the -pi ray: (i/sin(nu pi)) (e^{-i nu pi} J_{-nu}(r) - J_nu(r))
inline std::complex<double> onesided_series(double r) {
    const double s = std::sin(kNu * std::numbers::pi);
    const double jp = bessel_j_series(kNu, r);
    const double jm = bessel_j_series(-kNu, r);
    const std::complex<double> e(std::cos(kNu * std::numbers::pi), -std::sin(kNu * std::numbers::pi));
    return std::complex<double>(0.0, 1.0) / s * (e * jm - jp);
}

// principal H^(1)_{1/3} for |z| <= 1 (any arg in (-pi, pi]) via J-series
inline std::complex<double> principal_series(std::complex<double> z) {
    const double s = std::sin(kNu * std::numbers::pi);
    const std::complex<double> q = 0.25 * z * z;
    auto jser = [&](double nu) {
        std::complex<double> term = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
        std::complex<double> sum = term;
        for (int j = 1; j < 200; ++j) {
            term *= -q / double(j * (nu + j));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    };
    const std::complex<double> jp = jser(kNu);
    const std::complex<double> jm = jser(-kNu);
    const std::complex<double> e(std::cos(kNu * std::numbers::pi), -std::sin(kNu * std::numbers::pi));
    return std::complex<double>(0.0, 1.0) / s * (jp * e - jm);
}

// Laguerre quadrature of the loop integral; arg_z fixes the z^{-1/2} branch
inline std::complex<double> hankel_integral(double r, double arg_z) {
    const std::complex<double> z = std::polar(r, arg_z);
    std::complex<double> q_prev(0.0, 0.0);
    std::complex<double> q(0.0, 0.0);
    for (int n : {64, 128, 256}) {
        const GaussLaguerre& rule = laguerre16_rule(n);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < rule.t.size(); ++i) {
            const std::complex<double> base = 1.0 + std::complex<double>(0.0, rule.t[i]) / (2.0 * z);
            acc += rule.w[i] * std::pow(base, kNu - 0.5); // (1+it/2z)^{-1/6}
        }
        q_prev = q;
        q = acc;
        if (n > 64 && std::abs(q - q_prev) <= 1e-10 * (1.0 + std::abs(q))) break;
    }
    const double g = std::tgamma(kNu + 0.5);
    const std::complex<double> pref =
        std::sqrt(2.0 / (std::numbers::pi * r)) * std::polar(1.0, -0.5 * arg_z);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, 1.0) * z) *
        std::polar(1.0, -kNu * std::numbers::pi / 2.0 - std::numbers::pi / 4.0);
    return pref * phase / g * q;
}

} // namespace detail_bessel

// H^(1)_{1/3}(z) on the ray convention documented above.
inline std::complex<double> bessel_h13(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0))
        throw std::domain_error("bessel_h13: z = 0 is singular");
    const double r = std::abs(z);
    const bool neg_real_ray = (z.imag() == 0.0 && z.real() < 0.0);
    if (neg_real_ray) {
        if (r <= 1.0) return detail_bessel::onesided_series(r);
        return detail_bessel::hankel_integral(r, -std::numbers::pi);
    }
    if (r <= 1.0) return detail_bessel::principal_series(z);
    return detail_bessel::hankel_integral(r, std::arg(z));
}

} // namespace hermosc
