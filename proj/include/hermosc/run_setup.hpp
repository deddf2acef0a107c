#pragma once

// Translation from parsed run configs to simulator/sweep inputs.
//
// Simulation config keys: epsilon, mu, N, T, dt, s_list, omega, nu,
// init_support, snapshot_every, resonant_probe, compare_doubled, plus one
// [mode] block per Fourier mode:
//   [mode]
//   k = 1.0            # or: kint = 1 -1   (resolved as <kint, nu>)
//   a.const = 0.0
//   b.const = 1.0
//   a.term = cos 1 0 0.5   # a_k += 0.5 cos(theta_1)
//   b.term = sin 0 1 0.3   # b_k += 0.3 sin(theta_2)

#include <stdexcept>
#include <string>

#include "hermosc/floquet.hpp"
#include "hermosc/io.hpp"
#include "hermosc/matrix_elements.hpp"

namespace hermosc {

inline FourierSeries fourier_from_block(const ConfigBlock& block, const std::string& prefix) {
    FourierSeries fs;
    if (block.has(prefix + ".const")) fs.constant = block.get_double(prefix + ".const");
    for (const auto& tokens : block.get_all(prefix + ".term")) {
        if (tokens.size() < 3)
            throw std::invalid_argument("config: " + prefix + ".term needs kind, indices, coeff");
        FourierSeries::Term term;
        const double coeff = std::stod(tokens.back());
        for (std::size_t i = 1; i + 1 < tokens.size(); ++i)
            term.l.push_back(std::stoi(tokens[i]));
        if (tokens[0] == "cos")
            term.cos_c = coeff;
        else if (tokens[0] == "sin")
            term.sin_c = coeff;
        else
            throw std::invalid_argument("config: " + prefix + ".term kind must be cos or sin");
        fs.terms.push_back(term);
    }
    return fs;
}

inline WSpec wspec_from_config(const RunConfig& cfg) {
    WSpec spec;
    for (const auto& block : cfg.modes) {
        WSpec::Mode mode;
        if (block.has("k")) mode.k = block.get_double("k");
        if (block.has("kint"))
            for (const auto& s : block.get("kint")) mode.kint.push_back(std::stoi(s));
        mode.a = fourier_from_block(block, "a");
        mode.b = fourier_from_block(block, "b");
        spec.modes.push_back(mode);
    }
    return spec;
}

inline SimConfig simconfig_from_config(const RunConfig& cfg) {
    SimConfig sim;
    sim.wspec = wspec_from_config(cfg);
    sim.omega = cfg.top.get_doubles("omega");
    sim.nu = cfg.top.get_doubles("nu", {});
    sim.epsilon = cfg.top.get_double("epsilon", 0.0);
    sim.mu = cfg.top.get_double("mu", 0.0);
    sim.N = static_cast<int>(cfg.top.get_long("N", 128));
    sim.T = cfg.top.get_double("T", 100.0);
    sim.dt = cfg.top.get_double("dt", 5e-3);
    sim.s_list = cfg.top.get_doubles("s_list", {0.0, 1.0});
    sim.snapshot_every = static_cast<int>(cfg.top.get_long("snapshot_every", 0));
    return sim;
}

} // namespace hermosc
