#pragma once

// Truncated quasi-periodically forced oscillator in the eigenbasis:
//   xi_j' = -i (2j-1) xi_j - i eps (P(omega t) xi)_j,  1 <= j <= N,
// advanced in the interaction picture (exact diagonal phases, explicit
// midpoint for the rotated perturbation). Sobolev-norm histories are the
// desk-scale reducibility observable: bounded for Diophantine frequencies.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermosc/hermite.hpp"
#include "hermosc/matrix_elements.hpp"

namespace hermosc {

struct SimConfig {
    WSpec wspec;
    std::vector<double> nu;    // Omega_gamma candidate (resolves integer phi-modes)
    std::vector<double> omega; // forcing frequencies, nominally in [1,2]^n
    double epsilon = 0.0;
    double mu = 0.0;
    int N = 128;
    double T = 100.0;
    double dt = 5e-3;
    std::vector<double> s_list{0.0, 1.0};
    int snapshot_every = 0; // store full states every M steps (0 = never)

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
        if (N < 8) throw std::invalid_argument("SimConfig: N must be >= 8");
        if (epsilon < 0.0) throw std::invalid_argument("SimConfig: epsilon must be >= 0");
        if (mu < 0.0 || mu >= 1.0 / 3.0) throw std::invalid_argument("SimConfig: mu outside [0, 1/3)");
        if (!(T > 0.0)) throw std::invalid_argument("SimConfig: T must be > 0");
        if (omega.empty()) throw std::invalid_argument("SimConfig: omega must be nonempty");
        wspec.validate();
    }
};

// default initial state: normalized (1/j)_{j<=support} -- finite H^1 norm
// with spread support (a pure mode hides off-diagonal transport)
inline CoeffVector spread_state(int N, int support = 0) {
    if (support <= 0 || support > N) support = N;
    CoeffVector xi(static_cast<std::size_t>(N), {0.0, 0.0});
    double norm2 = 0.0;
    for (int j = 1; j <= support; ++j) {
        xi[static_cast<std::size_t>(j - 1)] = {1.0 / j, 0.0};
        norm2 += 1.0 / (static_cast<double>(j) * j);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : xi) c *= inv;
    return xi;
}

// time-dependent generator G(t) = N_diag + eps P(omega t), Hermitian by
// construction (diagonal real, P real symmetric)
class Generator {
  public:
    explicit Generator(const SimConfig& cfg)
        : cfg_(cfg), tables_(make_tables(cfg)), diag_(static_cast<std::size_t>(cfg.N)) {
        for (int j = 1; j <= cfg.N; ++j) diag_[static_cast<std::size_t>(j - 1)] = 2.0 * j - 1.0;
    }

    const std::vector<double>& diagonal() const { return diag_; }
    const PerturbationTables& tables() const { return tables_; }

    std::vector<double> theta_at(double t) const {
        std::vector<double> theta(cfg_.omega.size());
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = cfg_.omega[i] * t;
        return theta;
    }

    // dense G(t) as a real symmetric matrix (diagnostics; evolution uses apply)
    PerturbationMatrix dense(double t) const {
        PerturbationMatrix G = tables_.assemble(theta_at(t));
        for (auto& e : G.entries) e *= cfg_.epsilon;
        for (int j = 1; j <= cfg_.N; ++j)
            G.entries[static_cast<std::size_t>(j - 1) * cfg_.N + (j - 1)] +=
                diag_[static_cast<std::size_t>(j - 1)];
        return G;
    }

    // y += scale * P(omega t) x
    void apply_perturbation(double t, const std::complex<double>* x, std::complex<double>* y,
                            std::complex<double> scale) const {
        tables_.apply(theta_at(t), x, y, scale);
    }

  private:
    static PerturbationTables make_tables(const SimConfig& cfg) {
        cfg.validate();
        WSpec spec = cfg.wspec;
        spec.resolve_k(cfg.nu);
        spec.validate();
        return PerturbationTables(spec, cfg.mu, cfg.N);
    }

    SimConfig cfg_;
    PerturbationTables tables_;
    std::vector<double> diag_;
};

inline Generator build_generator(const SimConfig& cfg) { return Generator(cfg); }

struct Trajectory {
    std::vector<double> times;
    std::vector<double> s_list;
    std::vector<std::vector<double>> norm_histories; // [s_index][time_index]
    std::vector<std::pair<double, CoeffVector>> snapshots; // physical states xi(t)
    CoeffVector final_state; // physical xi(T)
    double l2_drift = 0.0;   // max | ||xi(t)|| - ||xi(0)|| |
};

namespace detail_floquet {

// physical state xi(t) = e^{-i N t} u(t) from the rotated state
inline CoeffVector to_physical(const CoeffVector& u, const std::vector<double>& diag, double t) {
    CoeffVector xi(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        xi[j] = std::polar(1.0, -diag[j] * t) * u[j];
    return xi;
}

} // namespace detail_floquet

// Interaction-picture evolution from t0 to t1 (either direction). The
// rotated equation u' = -i eps e^{iNt} P(omega t) e^{-iNt} u is advanced by
// explicit midpoint; the diagonal flow is exact elementwise phases.
inline Trajectory evolve_between(const Generator& gen, const SimConfig& cfg,
                                 const CoeffVector& initial, double t0, double t1) {
    cfg.validate();
    if (initial.size() != static_cast<std::size_t>(cfg.N))
        throw std::invalid_argument("evolve: initial state size != N");
    for (const auto& c : initial)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("evolve: initial state has non-finite entries");
    const double n0 = sobolev_norm(initial, 0.0);
    if (!(n0 > 0.0)) throw std::invalid_argument("evolve: initial state must be nonzero");

    const auto& diag = gen.diagonal();
    const long steps = std::lround(std::abs(t1 - t0) / cfg.dt);
    const double dt = (t1 >= t0) ? cfg.dt : -cfg.dt;

    // rotate the supplied physical state into the moving frame at t0
    CoeffVector u(initial.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = std::polar(1.0, diag[j] * t0) * initial[j];

    Trajectory traj;
    traj.s_list = cfg.s_list;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.norm_histories.assign(cfg.s_list.size(), {});
    for (auto& h : traj.norm_histories) h.reserve(static_cast<std::size_t>(steps) + 1);

    CoeffVector k1(u.size()), uh(u.size()), k2(u.size());
    auto record = [&](double t) {
        traj.times.push_back(t);
        // |u_j| = |xi_j|: diagonal phases leave the moduli alone
        for (std::size_t si = 0; si < cfg.s_list.size(); ++si)
            traj.norm_histories[si].push_back(sobolev_norm(u, cfg.s_list[si]));
        traj.l2_drift = std::max(traj.l2_drift, std::abs(sobolev_norm(u, 0.0) - n0));
    };
    auto rotated_apply = [&](double t, const CoeffVector& x, CoeffVector& out) {
        // out = -i eps e^{iNt} P(omega t) e^{-iNt} x
        CoeffVector tmp(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            tmp[j] = std::polar(1.0, -diag[j] * t) * x[j];
        std::fill(out.begin(), out.end(), std::complex<double>(0.0, 0.0));
        gen.apply_perturbation(t, tmp.data(), out.data(), {0.0, -cfg.epsilon});
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] *= std::polar(1.0, diag[j] * t);
    };

    record(t0);
    double t = t0;
    for (long s = 0; s < steps; ++s) {
        if (cfg.epsilon != 0.0) {
            rotated_apply(t, u, k1);
            for (std::size_t j = 0; j < u.size(); ++j) uh[j] = u[j] + 0.5 * dt * k1[j];
            rotated_apply(t + 0.5 * dt, uh, k2);
            for (std::size_t j = 0; j < u.size(); ++j) u[j] += dt * k2[j];
        }
        t = t0 + (s + 1) * dt;
        record(t);
        if (cfg.snapshot_every > 0 && (s + 1) % cfg.snapshot_every == 0)
            traj.snapshots.push_back({t, detail_floquet::to_physical(u, diag, t)});
        if (traj.l2_drift > 1e-6)
            throw std::runtime_error("evolve: l2 norm drift beyond 1e-6 (integrator failure)");
    }
    traj.final_state = detail_floquet::to_physical(u, diag, t);
    return traj;
}

inline Trajectory evolve(const SimConfig& cfg, const CoeffVector& initial) {
    const Generator gen(cfg);
    return evolve_between(gen, cfg, initial, 0.0, cfg.T);
}

// ---------------------------------------------------------------------------
// growth report

struct GrowthRow {
    std::string label;
    double s = 0.0;
    double sup_ratio = 0.0;   // sup_t ||xi(t)||_s / ||xi(0)||_s
    double final_ratio = 0.0;
    double drift = 0.0;       // l2 drift of the run
};

inline std::vector<GrowthRow> growth_report(const std::vector<Trajectory>& trajs,
                                            const std::vector<std::string>& labels) {
    if (trajs.empty()) throw std::invalid_argument("growth_report: no trajectories");
    if (labels.size() != trajs.size())
        throw std::invalid_argument("growth_report: labels/trajectories size mismatch");
    std::vector<GrowthRow> rows;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        const Trajectory& tr = trajs[i];
        for (std::size_t si = 0; si < tr.s_list.size(); ++si) {
            GrowthRow row;
            row.label = labels[i];
            row.s = tr.s_list[si];
            const double base = tr.norm_histories[si].front();
            double sup = 0.0;
            for (double v : tr.norm_histories[si]) sup = std::max(sup, v);
            row.sup_ratio = sup / base;
            row.final_ratio = tr.norm_histories[si].back() / base;
            row.drift = tr.l2_drift;
            rows.push_back(row);
        }
    }
    return rows;
}

// truncation-convergence metric: sup over the common time grid of the
// difference of normalized H^s histories between an N run and a 2N run
inline double history_sup_diff(const Trajectory& a, const Trajectory& b, std::size_t s_index) {
    const auto& ha = a.norm_histories[s_index];
    const auto& hb = b.norm_histories[s_index];
    const std::size_t n = std::min(ha.size(), hb.size());
    const double base_a = ha.front(), base_b = hb.front();
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sup = std::max(sup, std::abs(ha[i] / base_a - hb[i] / base_b));
    return sup;
}

} // namespace hermosc
