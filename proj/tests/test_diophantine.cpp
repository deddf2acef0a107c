#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hermosc/diophantine.hpp"
#include "hermosc/hermite.hpp"

using namespace hermosc;

TEST_CASE("is_diophantine spec examples") {
    // d=1, nu=1, gamma=0.5, tau=1, K=100: |k| >= 0.5/|k| always
    DiophantineParams p1{0.5, 1.0, 1, 0.0, 3.0, 100};
    CHECK(is_diophantine({1.0}, p1).ok);
    // d=2, nu=(1,1): k=(1,-1) is an exact resonance
    DiophantineParams p2{0.1, 1.5, 2, 0.0, 3.0, 10};
    const auto v2 = is_diophantine({1.0, 1.0}, p2);
    CHECK_FALSE(v2.ok);
    CHECK(v2.worst_margin == Catch::Approx(-0.1));
    // golden ratio, d=1, gamma=0.2, tau=1, K=1000: positive margin
    DiophantineParams pg{0.2, 1.0, 1, 1.0, 2.0, 1000};
    const auto vg = is_diophantine({(1.0 + std::sqrt(5.0)) / 2.0}, pg);
    CHECK(vg.ok);
    CHECK(vg.worst_margin > 0.0);
    CHECK_THROWS_AS(is_diophantine({1.0}, DiophantineParams{0.0, 1.0, 1, 0.0, 1.0, 10}),
                    std::invalid_argument);
}

TEST_CASE("is_diophantine monotone in gamma") {
    const std::vector<double> nu{std::sqrt(2.0), (1.0 + std::sqrt(5.0)) / 2.0};
    bool prev_ok = true;
    for (double gamma : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        DiophantineParams p{gamma, 1.5, 2, 1.0, 2.0, 60};
        const bool ok = is_diophantine(nu, p).ok;
        if (!prev_ok) CHECK_FALSE(ok); // failing at smaller gamma implies failing at larger
        prev_ok = ok;
    }
}

TEST_CASE("excluded_measure limits and monotonicity") {
    // bands near 0 miss [1,2]: measure 0
    DiophantineParams far{0.1, 2.0, 1, 1.0, 2.0, 50};
    CHECK(excluded_measure(far, 20000).estimate == 0.0);
    // gamma large enough to exclude everything: every point fails at k=(1,0)
    DiophantineParams all{10.0, 1.5, 2, 1.0, 2.0, 50};
    const auto sat = excluded_measure(all, 20000);
    CHECK(sat.estimate == Catch::Approx(1.0)); // (B-A)^d = 1
    // monotone in gamma at fixed seed
    double prev = -1.0;
    for (double gamma : {0.05, 0.1, 0.2, 0.4}) {
        DiophantineParams p{gamma, 1.5, 2, 1.0, 2.0, 30};
        const auto est = excluded_measure(p, 20000, 42);
        CHECK(est.estimate >= prev);
        prev = est.estimate;
    }
    // monotone in K at fixed seed
    double prevK = -1.0;
    for (int K : {5, 10, 20, 40}) {
        DiophantineParams p{0.1, 1.5, 2, 1.0, 2.0, K};
        const auto est = excluded_measure(p, 20000, 42);
        CHECK(est.estimate >= prevK);
        prevK = est.estimate;
    }
    CHECK_THROWS_AS(excluded_measure(far, 100), std::invalid_argument);
}

TEST_CASE("excluded_measure matches the exact 1d band") {
    // d=1 box [0.05, 2]: excluded set is [0.05, gamma) for tau=1, K large
    DiophantineParams p{0.3, 1.0, 1, 0.05, 2.0, 200};
    const double exact = excluded_measure_exact_1d(p);
    CHECK(exact == Catch::Approx(0.25));
    const auto mc = excluded_measure(p, 200000, 7);
    CHECK(mc.estimate == Catch::Approx(exact).margin(5.0 * mc.stderr_ + 1e-3));
}

TEST_CASE("melnikov_check examples and brute-force equivalence") {
    // omega=(1,1): k=(1,-1), j=0 is an exact resonance with margin -kappa;
    // the global worst over the lattice is at least that bad
    MelnikovParams mp{0.01, 10, 0.0, 2.0 * std::numbers::pi};
    const auto v = melnikov_check({1.0, 1.0}, mp, 25);
    CHECK_FALSE(v.ok);
    CHECK(v.worst_margin <= -0.01 + 1e-14);

    // brute force over the full j range agrees with the windowed scan
    const std::vector<double> omega{1.37, 1.77};
    MelnikovParams mp2{1e-3, 8, 1.0, 2.0};
    const auto quick = melnikov_check(omega, mp2, 20);
    double worst = std::numeric_limits<double>::infinity();
    for (int k1 = -8; k1 <= 8; ++k1)
        for (int k2 = -8; k2 <= 8; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            if (std::abs(k1) + std::abs(k2) > 8) continue;
            for (long j = -20; j <= 20; ++j)
                worst = std::min(worst, std::abs(k1 * omega[0] + k2 * omega[1] + j) -
                                            mp2.kappa * (1.0 + std::abs(j)));
        }
    CHECK(quick.worst_margin == Catch::Approx(worst).margin(1e-14));
    CHECK(quick.ok == (worst >= 0.0));

    // kappa -> 0 passes for omega without exact resonances at this cutoff
    // (1.37/1.77 would NOT do: 5*1.37 - 5*1.77 = -2 exactly)
    MelnikovParams tiny{1e-12, 10, 1.0, 2.0};
    CHECK(melnikov_check({std::sqrt(2.0), std::sqrt(3.0)}, tiny, 25).ok);
    CHECK_THROWS_AS(melnikov_check({1.0, 1.0}, mp2, 2), std::invalid_argument); // j_range too small
    CHECK_THROWS_AS(melnikov_check({1.0}, MelnikovParams{0.3, 10, 0.0, 1.0}, 20),
                    std::invalid_argument); // kappa >= 1/4
}

TEST_CASE("spectral gaps satisfy the asymptotics hypothesis") {
    // lambda_a = 2a-1: c1 a >= lambda_a >= c2 a and |lambda_a - lambda_b| >= c0 |a-b|
    // with c0 = c2 = 1, c1 = 2
    for (int a = 1; a <= 10000; a += (a < 100 ? 1 : 97)) {
        const double lam_a = eigenvalue(a);
        CHECK(2.0 * a >= lam_a);
        CHECK(lam_a >= 1.0 * a);
        for (int b = a; b <= 10000; b += (b < 100 ? 7 : 1337)) {
            const double gap = std::abs(eigenvalue(a) - eigenvalue(b));
            CHECK(gap >= 1.0 * std::abs(a - b));
        }
    }
}

TEST_CASE("fourier_decay_check") {
    // W(phi, theta) = sin phi: W_hat(+-1, 0) = -+ i/2
    std::map<FourierKey, std::complex<double>> sinphi;
    sinphi[{{1}, {0}}] = {0.0, -0.5};
    sinphi[{{-1}, {0}}] = {0.0, 0.5};
    const std::vector<double> alpha{2.0};
    const auto rep = fourier_decay_check(sinphi, 0.5, alpha);
    CHECK(rep.ok);
    CHECK(rep.C == Catch::Approx(0.5 * std::pow(std::sqrt(2.0), 2.0)).epsilon(1e-14));

    // forged violation at one (k,l): fails against the honest map's constant
    auto forged = sinphi;
    forged[{{9}, {3}}] = {50.0, 0.0};
    const auto bad = fourier_decay_check(forged, 0.5, alpha, rep.C);
    CHECK_FALSE(bad.ok);
    CHECK(bad.worst.k == std::vector<int>{9});
    CHECK(bad.worst.l == std::vector<int>{3});

    // finite-Fourier WSpec-style data: finite C, passes with no cap
    std::map<FourierKey, std::complex<double>> wdata;
    wdata[{{1, 0}, {2, -1}}] = {0.35, 0.1};
    wdata[{{0, 2}, {0, 0}}] = {0.0, -0.2};
    wdata[{{-1, 0}, {-2, 1}}] = {0.35, -0.1};
    const auto r2 = fourier_decay_check(wdata, 0.25, {1.5, 1.5});
    CHECK(r2.ok);
    CHECK(std::isfinite(r2.C));
    CHECK(r2.C > 0.0);
}
