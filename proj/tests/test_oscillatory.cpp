#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hermosc/oscillatory.hpp"

using namespace hermosc;

TEST_CASE("phase_g formula and monotonicity") {
    const double Xm = turning_point(40), Xn = turning_point(90);
    CHECK(phase_g(Xn - Xm, 40, 90, 0.0) == Catch::Approx(0.0).margin(1e-14));
    // m = n: g = -k everywhere on the domain
    for (double x : {0.0, 1.0, 5.0})
        CHECK(phase_g(-1.0, 40, 40, x) == Catch::Approx(1.0).margin(1e-14));
    // monotone non-decreasing on a grid
    double prev = phase_g(0.3, 40, 90, 0.0);
    for (int i = 1; i <= 200; ++i) {
        const double x = (Xm - 1e-9) * i / 200.0;
        const double g = phase_g(0.3, 40, 90, x);
        CHECK(g >= prev - 1e-13);
        prev = g;
    }
    CHECK_THROWS_AS(phase_g(1.0, 40, 90, Xm), std::domain_error);
    CHECK_THROWS_AS(phase_g(1.0, 40, 90, -0.1), std::domain_error);
}

TEST_CASE("kernel_f bounded by Gamma(5/6) and limiting value") {
    const double gamma56 = std::tgamma(5.0 / 6.0);
    for (int m : {10, 100, 1000, 10000}) {
        SpectralIndex idx(m);
        const double X = idx.turning_point;
        for (double frac : {0.0, 0.3, 0.6, 0.9}) {
            const double x = frac * (X - std::pow(X, -1.0 / 3.0));
            CHECK(std::abs(kernel_f(idx, x)) <= gamma56 * (1.0 + 1e-10));
        }
    }
    // frozen 30-digit reference at m = 100, x = 0
    const auto f0 = kernel_f(SpectralIndex(100), 0.0);
    CHECK(std::abs(f0 - std::complex<double>(1.1287853141177014, 0.00050152990627556013)) <=
          1e-8 * std::abs(f0));
    // dominated-convergence limit: f -> Gamma(5/6) within O(1/lambda)
    for (int m : {100, 1000, 10000}) {
        SpectralIndex idx(m);
        CHECK(std::abs(kernel_f(idx, 0.0) - gamma56) <= 10.0 / idx.lambda);
    }
    CHECK_THROWS_AS(kernel_f(SpectralIndex(10), turning_point(10)), std::domain_error);
}

TEST_CASE("psi1 reconstructed from kernel_f matches langer psi1") {
    // psi1 = sqrt(2/pi) (X^2-x^2)^{-1/4} Re[e^{i(zeta+pi/4)} f_m] / Gamma(5/6)
    const double gamma56 = std::tgamma(5.0 / 6.0);
    for (int m : {60, 400}) {
        SpectralIndex idx(m);
        const double X = idx.turning_point;
        const double hi = X - std::pow(X, -1.0 / 3.0);
        for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double x = frac * hi;
            const double r = zeta(idx, x).abs();
            const auto f = kernel_f(idx, x);
            const auto rot = std::polar(1.0, -r + std::numbers::pi / 4.0); // e^{i(zeta + pi/4)}
            const double rec = std::sqrt(2.0 / std::numbers::pi) *
                               std::pow(idx.lambda - x * x, -0.25) * (rot * f).real() / gamma56;
            const double ref = psi1(idx, x).real();
            const double envelope = std::sqrt(2.0 / std::numbers::pi) * std::pow(idx.lambda - x * x, -0.25);
            CAPTURE(m, x);
            CHECK(std::abs(rec - ref) <= 1e-8 * envelope);
        }
    }
}

TEST_CASE("van der Corput closed-form examples") {
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    // phi = x, psi = 1, lambda = 10: |direct| = |e^{10i}-1|/10
    {
        const auto r = van_der_corput_bound([](double x) { return x; }, one, one, zero, 10.0, 1, 0.0, 1.0);
        const double exact = std::abs(std::complex<double>(std::sin(10.0), 1.0 - std::cos(10.0))) / 10.0;
        CHECK(std::abs(r.direct) == Catch::Approx(exact).margin(1e-10));
        CHECK(std::abs(r.direct) <= 0.2);
        CHECK(r.bound == Catch::Approx(kVdcC1 / 10.0).epsilon(1e-12));
        CHECK(r.holds);
    }
    // phi = x^2/2, phi'' = 1, lambda = 100, j = 2
    {
        const auto r = van_der_corput_bound([](double x) { return 0.5 * x * x; }, one, one, zero,
                                            100.0, 2, 0.0, 1.0);
        CHECK(r.bound == Catch::Approx(kVdcC2 / 10.0).epsilon(1e-12));
        CHECK(r.holds);
        // Fresnel oracle: int_0^1 e^{i 50 x^2} dx via the adaptive integrator
        const double re = adaptive_gk([](double x) { return std::cos(50.0 * x * x); }, 0.0, 1.0, 1e-12).value;
        const double im = adaptive_gk([](double x) { return std::sin(50.0 * x * x); }, 0.0, 1.0, 1e-12).value;
        CHECK(std::abs(r.direct - std::complex<double>(re, im)) <= 1e-8);
    }
    // psi = x: bound = c1 (|psi(1)| + int |psi'|) / 50 = 2 c1 / 50
    {
        const auto r = van_der_corput_bound([](double x) { return x; }, one,
                                            [](double x) { return x; }, one, 50.0, 1, 0.0, 1.0);
        CHECK(r.bound == Catch::Approx(2.0 * kVdcC1 / 50.0).epsilon(1e-10));
        CHECK(r.holds);
    }
    // precondition violations
    auto half = [](double) { return 0.5; };
    CHECK_THROWS_AS(van_der_corput_bound([](double x) { return 0.5 * x; }, half, one, zero, 10.0, 1, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(van_der_corput_bound([](double x) { return x; }, one, one, zero, 10.0, 3, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("van der Corput randomized suite") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int j = 1 + (trial % 2);
        const double lambda = std::pow(10.0, 3.0 * uni(rng));
        const double a = 2.0 * uni(rng);
        const double b = a + 0.1 + 2.0 * uni(rng);
        const double sgn = uni(rng) < 0.5 ? 1.0 : -1.0;
        const double c = 3.0 * uni(rng);
        const double p0 = 2.0 * uni(rng) - 1.0, p1 = 2.0 * uni(rng) - 1.0, p2 = uni(rng) - 0.5;
        auto psi = [=](double x) { return p0 + p1 * x + p2 * x * x; };
        auto psip = [=](double x) { return p1 + 2.0 * p2 * x; };
        VdcResult r;
        if (j == 1) {
            auto phi = [=](double x) { return sgn * (x + 0.5 * c * x * x); };
            auto d1 = [=](double x) { return sgn * (1.0 + c * x); };
            r = van_der_corput_bound(phi, d1, psi, psip, lambda, 1, a, b);
        } else {
            const double beta = 2.0 * uni(rng) - 1.0;
            auto phi = [=](double x) { return sgn * (0.5 * x * x + beta * x); };
            auto d2 = [=](double) { return sgn; };
            r = van_der_corput_bound(phi, d2, psi, psip, lambda, 2, a, b);
        }
        CAPTURE(trial, j, lambda, a, b);
        REQUIRE(r.holds);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("case classifier bands") {
    CHECK(case_classify(-0.5, 10, 20) == CaseTag::negative_k);
    CHECK(case_classify(1.0, 10, 45) == CaseTag::wide_gap); // X_n >= 2 X_m
    // m = n: D = 0, small k
    CHECK(case_classify(0.5, 50, 50) == CaseTag::gap_below_k23);
    // k above X_m^{1/3}
    CHECK(case_classify(10.0, 50, 52) == CaseTag::large_k);

    // partition: exactly one deterministic tag, consistent with the band arithmetic
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> mm(14, 3000);
    std::uniform_real_distribution<double> kk(-2.0, 2.0);
    for (int t = 0; t < 2000; ++t) {
        const int m = mm(rng);
        const int n = m + static_cast<int>(std::floor(std::abs(kk(rng)) * 40));
        double k = kk(rng);
        if (k == 0.0) k = 0.7;
        const CaseTag tag = case_classify(k, m, n);
        const double Xm = turning_point(m), Xn = turning_point(n);
        const double D = Xn * Xn - Xm * Xm;
        if (k < 0.0)
            CHECK(tag == CaseTag::negative_k);
        else if (Xn >= 2.0 * Xm)
            CHECK(tag == CaseTag::wide_gap);
        else if (k > std::cbrt(Xm))
            CHECK(tag == CaseTag::large_k);
        else if (D < k * std::pow(Xm, 2.0 / 3.0))
            CHECK(tag == CaseTag::gap_below_k23);
        else if (D < k * std::pow(Xm, 5.0 / 6.0))
            CHECK(tag == CaseTag::gap_k23_k56);
        else if (D < k * Xm)
            CHECK(tag == CaseTag::gap_k56_k1);
        else if (D < 4.0 * k * Xm)
            CHECK(tag == CaseTag::gap_k1_4k);
        else
            CHECK(tag == CaseTag::gap_above_4k);
    }
    CHECK_THROWS_AS(case_classify(1.0, 20, 10), std::invalid_argument);
    CHECK_THROWS_AS(case_classify(0.0, 10, 20), std::invalid_argument);
}
