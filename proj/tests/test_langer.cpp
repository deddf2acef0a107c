#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hermosc/langer.hpp"

using namespace hermosc;

TEST_CASE("zeta closed form") {
    SpectralIndex n1(1);
    CHECK(zeta(n1, 1.0).value == std::complex<double>(0.0, 0.0));
    CHECK(zeta(n1, 1.0).branch == ZetaBranch::at_turning);
    // quarter-disc area: zeta_1(0) = -pi/4
    CHECK(zeta(n1, 0.0).value.real() == Catch::Approx(-std::numbers::pi / 4.0).margin(1e-15));
    CHECK(zeta(n1, 0.0).branch == ZetaBranch::below_turning);
    // closed-form antiderivative at x = sqrt(2)
    const auto zv = zeta(n1, std::sqrt(2.0));
    CHECK(zv.value.real() == 0.0);
    CHECK(zv.value.imag() ==
          Catch::Approx(std::sqrt(2.0) / 2.0 - 0.5 * std::log(1.0 + std::sqrt(2.0))).margin(1e-15));
    CHECK(zv.branch == ZetaBranch::above_turning);
    CHECK_THROWS_AS(zeta(n1, -0.5), std::invalid_argument);
}

TEST_CASE("zeta matches direct quadrature of its defining integral") {
    // zeta(x) = int_X^x sqrt(lambda - t^2) dt (modulus compared on both sides)
    for (int n : {3, 12, 77}) {
        SpectralIndex idx(n);
        const double X = idx.turning_point;
        for (double x : {0.0, 0.4 * X, 0.9 * X, 1.3 * X, 2.2 * X}) {
            double ref;
            if (x < X) {
                // t = X sin(theta) removes the turning-point edge singularity
                auto f = [&](double th) { return idx.lambda * std::cos(th) * std::cos(th); };
                ref = adaptive_gk(f, std::asin(x / X), std::numbers::pi / 2.0, 1e-13).value;
            } else {
                // t = X cosh(u)
                auto f = [&](double u) { return idx.lambda * std::sinh(u) * std::sinh(u); };
                ref = adaptive_gk(f, 0.0, std::acosh(x / X), 1e-13).value;
            }
            CHECK(zeta(idx, x).abs() == Catch::Approx(ref).margin(1e-9));
        }
    }
}

TEST_CASE("zeta branch consistency on a grid") {
    SpectralIndex idx(25);
    const double X = idx.turning_point;
    double prev_below = -1.0, prev_above = -1.0;
    for (int i = 0; i < 200; ++i) {
        const double xb = X * i / 200.0;
        const auto below = zeta(idx, xb);
        CHECK(below.value.imag() == 0.0);
        CHECK(below.value.real() < 0.0);
        const double xa = X + (i + 1) * 0.02;
        const auto above = zeta(idx, xa);
        CHECK(above.value.real() == 0.0);
        CHECK(above.value.imag() > 0.0);
        // |zeta| strictly increasing in |x - X|: grows with x above the
        // turning point, shrinks as x rises toward it from below
        if (i > 0) CHECK(above.abs() > prev_above);
        prev_above = above.abs();
        if (i > 0) CHECK(below.abs() < prev_below);
        prev_below = below.abs();
    }
}

TEST_CASE("zeta lower bounds (exact-arithmetic tolerance)") {
    for (int n : {2, 10, 100, 10000}) {
        SpectralIndex idx(n);
        const double X = idx.turning_point;
        const double Xm13 = std::pow(X, -1.0 / 3.0);
        for (int i = 0; i < 1000; ++i) {
            // above the turning point
            const double xa = X + (i + 1) * (5.0 / 1000.0);
            const double za = zeta(idx, xa).abs();
            CHECK(za >= 2.0 * std::sqrt(2.0) / 3.0 * std::sqrt(X) * std::pow(xa - X, 1.5) - 1e-12 * (1.0 + za));
            // below the turning point
            const double xb = X * i / 1000.0;
            const double zb = zeta(idx, xb).abs();
            CHECK(zb >= 2.0 / 3.0 * std::sqrt(X) * std::pow(X - xb, 1.5) - 1e-12 * (1.0 + zb));
        }
        // linear bound for x >= X + X^{-1/3} (stated for X > 2)
        if (X > 2.0) {
            for (int i = 0; i < 1000; ++i) {
                const double x = X + Xm13 + i * (5.0 / 1000.0);
                const double z = zeta(idx, x).abs();
                CHECK(z >= 2.0 * std::sqrt(2.0) / 3.0 * std::pow(X, 1.0 / 3.0) * (x - X) - 1e-12 * (1.0 + z));
                CHECK(z > (x - X) - 1e-12 * (1.0 + z));
            }
        }
        // |zeta| >= 2/3 on [0, X - X^{-1/3}]
        for (int i = 0; i < 1000; ++i) {
            const double x = (X - Xm13) * i / 999.0;
            CHECK(zeta(idx, x).abs() >= 2.0 / 3.0 - 1e-12);
        }
    }
}

TEST_CASE("psi1 approximates h_n") {
    // oscillatory point, envelope-relative; tail point, pointwise-relative
    for (int n : {100, 400}) {
        SpectralIndex idx(n);
        const double X = idx.turning_point;
        for (double x : {0.0, 0.5 * X, X - 2.0 * std::pow(X, -1.0 / 3.0)}) {
            const double h = hermite_eval(n, x).value();
            const auto p = psi1(idx, x);
            const double env = std::sqrt(2.0 / std::numbers::pi) * std::pow(idx.lambda - x * x, -0.25);
            CHECK(std::abs(h - p.real()) / env <= 10.0 / idx.lambda);
            CHECK(std::abs(p.imag()) <= 1e-10 * (1.0 + std::abs(p.real())));
        }
        const double xt = X + 2.0;
        const double h = hermite_eval(n, xt).value();
        const auto p = psi1(idx, xt);
        CHECK(std::abs(h - p.real()) / std::abs(p) <= 10.0 / idx.lambda);
        // tail envelope |psi1| <= (x^2 - lambda)^{-1/4} e^{-|zeta|}
        const double r = zeta(idx, xt).abs();
        CHECK(std::abs(p) <= std::pow(xt * xt - idx.lambda, -0.25) * std::exp(-r));
    }
    // out-of-regime probe: n = 1 deviates at the percent level, no promise
    SpectralIndex n1(1);
    const double dev = std::abs(hermite_eval(1, 0.0).value() - psi1(n1, 0.0).real()) /
                       std::abs(psi1(n1, 0.0).real());
    CHECK(dev < 0.1);
    CHECK(dev > 1e-4);
    CHECK_THROWS_AS(psi1(n1, 1.0 + 1e-12), std::domain_error);
}

TEST_CASE("langer_residual envelope and dropped points") {
    SpectralIndex idx(400);
    const double X = idx.turning_point;
    const std::vector<double> xs{0.0, X / 2.0, X - 2.0 * std::pow(X, -1.0 / 3.0), X, X + 2.0};
    const auto rows = langer_residual(idx, xs);
    REQUIRE(rows.size() == 5);
    CHECK(rows[3].dropped); // x = X violates the window
    for (const auto& r : rows)
        if (!r.dropped) CHECK(r.deviation <= 10.0 / idx.lambda);
}

TEST_CASE("defect integral envelopes") {
    // Lemma-shape checks: value <= C/(x sqrt(q)) beyond 2X and C/(X lambda^{1/2}) from 0
    SpectralIndex idx(100);
    const double X = idx.turning_point;
    const auto far = defect_integral(idx, 2.0 * X);
    CHECK(far.value > 0.0);
    CHECK(far.value <= 2.0 / (2.0 * X * 2.0 * X));
    const auto all = defect_integral(idx, 0.0);
    CHECK(all.value <= 2.0 / (X * std::sqrt(idx.lambda)));

    // two-point scaling: (n=10000 / n=100) value ratio tracks (X lambda^{1/2}) inverse within factor 3
    SpectralIndex big(10000);
    const auto vb = defect_integral(big, 0.0);
    const double predicted = (X * std::sqrt(idx.lambda)) / (big.turning_point * std::sqrt(big.lambda));
    const double ratio = vb.value / all.value;
    CHECK(ratio <= 3.0 * predicted);
    CHECK(ratio >= predicted / 3.0);
}

TEST_CASE("defect sample finite away from the turning point") {
    SpectralIndex idx(50);
    for (double x : {0.0, 3.0, idx.turning_point - 0.5, idx.turning_point + 0.5, 30.0}) {
        const auto s = defect_sample(idx, x);
        CHECK(std::isfinite(s.defect));
        CHECK(std::isfinite(s.weight));
    }
    // f(0) = (20/(9 pi^2) - 1/2)/lambda^2
    const auto s0 = defect_sample(idx, 0.0);
    const double lam = idx.lambda;
    CHECK(s0.defect == Catch::Approx((20.0 / (9.0 * std::numbers::pi * std::numbers::pi) - 0.5) / (lam * lam)).epsilon(1e-10));
}

TEST_CASE("langer residual deep in the asymptotic regime") {
    // n = 1e4 at x = X/2: deviation well inside the 10/lambda envelope
    SpectralIndex idx(10000);
    const auto rows = langer_residual(idx, {idx.turning_point / 2.0});
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].dropped);
    CHECK(rows[0].deviation <= 10.0 / idx.lambda);
}
