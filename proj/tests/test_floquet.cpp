#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "hermosc/floquet.hpp"

using namespace hermosc;

namespace {

SimConfig base_config() {
    SimConfig cfg;
    WSpec::Mode mode;
    mode.k = 1.0;
    mode.a.terms.push_back({{1, 0}, 0.7, 0.0});  // a_1 = 0.7 cos(theta_1)
    mode.b.terms.push_back({{0, 1}, 0.5, 0.3});  // b_1 = 0.5 cos + 0.3 sin (theta_2)
    cfg.wspec.modes.push_back(mode);
    cfg.omega = {std::sqrt(2.0), std::sqrt(3.0)};
    cfg.nu = {std::sqrt(2.0), (1.0 + std::sqrt(5.0)) / 2.0};
    cfg.mu = 0.2;
    cfg.N = 24;
    cfg.T = 4.0;
    cfg.dt = 5e-3;
    return cfg;
}

} // namespace

TEST_CASE("generator structure") {
    SimConfig cfg = base_config();
    cfg.epsilon = 1e-3;
    const Generator gen = build_generator(cfg);
    // eps = 0 diagonal check via dense()
    SimConfig cfg0 = cfg;
    cfg0.epsilon = 0.0;
    const Generator gen0 = build_generator(cfg0);
    const PerturbationMatrix G0 = gen0.dense(0.37);
    for (int i = 1; i <= cfg.N; ++i)
        for (int j = 1; j <= cfg.N; ++j)
            CHECK(G0.at(i, j) == ((i == j) ? 2.0 * i - 1.0 : 0.0));
    // Hermitian at assembly level: real symmetric, exactly
    const PerturbationMatrix G = gen.dense(1.234);
    for (int i = 1; i <= cfg.N; ++i)
        for (int j = 1; j <= cfg.N; ++j) CHECK(G.at(i, j) == G.at(j, i));
}

TEST_CASE("free evolution is exact phases") {
    SimConfig cfg = base_config();
    cfg.epsilon = 0.0;
    cfg.T = 7.0;
    const CoeffVector xi0 = spread_state(cfg.N);
    const Trajectory tr = evolve(cfg, xi0);
    // xi_j(T) = e^{-i(2j-1)T} xi_j(0)
    for (int j = 1; j <= cfg.N; ++j) {
        const std::complex<double> expect =
            std::polar(1.0, -(2.0 * j - 1.0) * cfg.T) * xi0[static_cast<std::size_t>(j - 1)];
        CHECK(std::abs(tr.final_state[static_cast<std::size_t>(j - 1)] - expect) < 1e-12);
    }
    // every Sobolev norm history constant
    for (const auto& hist : tr.norm_histories)
        for (double v : hist) CHECK(v == Catch::Approx(hist.front()).margin(1e-12));
    CHECK(tr.l2_drift < 1e-14);
}

TEST_CASE("unitarity under perturbation") {
    SimConfig cfg = base_config();
    cfg.epsilon = 1e-2;
    cfg.T = 5.0;
    const Trajectory tr = evolve(cfg, spread_state(cfg.N));
    CHECK(tr.l2_drift <= 1e-8);
}

TEST_CASE("epsilon continuity") {
    // sup_t ||xi_eps - xi_0|| <= C eps T for small T; slopes across eps within factor 2
    SimConfig cfg = base_config();
    cfg.T = 2.0;
    const CoeffVector xi0 = spread_state(cfg.N);
    SimConfig c0 = cfg;
    c0.epsilon = 0.0;
    const Trajectory t0 = evolve(c0, xi0);
    double dev[2];
    const double eps_vals[2] = {1e-4, 1e-3};
    for (int i = 0; i < 2; ++i) {
        SimConfig ce = cfg;
        ce.epsilon = eps_vals[i];
        const Trajectory te = evolve(ce, xi0);
        double d = 0.0;
        for (std::size_t j = 0; j < xi0.size(); ++j)
            d += std::norm(te.final_state[j] - t0.final_state[j]);
        dev[i] = std::sqrt(d);
    }
    const double slope_ratio = (dev[1] / eps_vals[1]) / (dev[0] / eps_vals[0]);
    CHECK(slope_ratio < 2.0);
    CHECK(slope_ratio > 0.5);
}

TEST_CASE("time reversal returns the initial state") {
    SimConfig cfg = base_config();
    cfg.epsilon = 1e-3;
    cfg.T = 3.0;
    const CoeffVector xi0 = spread_state(cfg.N);
    const Generator gen(cfg);
    const Trajectory fwd = evolve_between(gen, cfg, xi0, 0.0, cfg.T);
    const Trajectory bwd = evolve_between(gen, cfg, fwd.final_state, cfg.T, 0.0);
    double d = 0.0;
    for (std::size_t j = 0; j < xi0.size(); ++j) d += std::norm(bwd.final_state[j] - xi0[j]);
    CHECK(std::sqrt(d) < 1e-6);
}

TEST_CASE("growth report rows") {
    SimConfig cfg = base_config();
    cfg.epsilon = 0.0;
    cfg.T = 2.0;
    const Trajectory tr = evolve(cfg, spread_state(cfg.N));
    const auto rows = growth_report({tr}, {"free"});
    REQUIRE(rows.size() == 2); // s in {0, 1}
    for (const auto& r : rows) {
        CHECK(r.sup_ratio == Catch::Approx(1.0).margin(1e-10));
        CHECK(r.final_ratio == Catch::Approx(1.0).margin(1e-10));
        CHECK(r.label == "free");
    }
    CHECK_THROWS_AS(growth_report({}, {}), std::invalid_argument);
}

TEST_CASE("truncation convergence metric") {
    SimConfig cfg = base_config();
    cfg.epsilon = 1e-3;
    cfg.T = 2.0;
    const Trajectory a = evolve(cfg, spread_state(cfg.N, 16));
    SimConfig big = cfg;
    big.N = 2 * cfg.N;
    const Trajectory b = evolve(big, spread_state(big.N, 16));
    CHECK(history_sup_diff(a, b, 1) < 0.01);
}

TEST_CASE("config validation") {
    SimConfig cfg = base_config();
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.N = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.epsilon = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    CHECK_THROWS_AS(evolve(cfg, CoeffVector(static_cast<std::size_t>(cfg.N), {0.0, 0.0})),
                    std::invalid_argument);
}
