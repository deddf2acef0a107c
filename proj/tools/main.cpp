// hermosc command-line front end: every library operation behind a
// subcommand, writing CSV payloads plus a JSON run manifest.
//
// Exit codes: 0 success, 2 validation error, 3 numerical-failure flags.

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermosc/diophantine.hpp"
#include "hermosc/floquet.hpp"
#include "hermosc/hermite.hpp"
#include "hermosc/io.hpp"
#include "hermosc/langer.hpp"
#include "hermosc/matrix_elements.hpp"
#include "hermosc/oscillatory.hpp"
#include "hermosc/run_setup.hpp"

namespace {

using namespace hermosc;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

std::string fd(double v) { return fmt_double(v); }

// ---------------------------------------------------------------------------

int cmd_hermite_eval(int n, double x, bool batch, const std::string& out) {
    RunManifest man;
    man.command = "hermite eval";
    man.params = {{"n", std::to_string(n)}, {"x", fd(x)}, {"batch", batch ? "true" : "false"}};
    CsvWriter csv(out + ".csv", {"n", "x", "mantissa", "log_scale", "value"});
    if (batch) {
        for (const auto& s : hermite_eval_batch(n, x))
            csv.row({std::to_string(s.order), fd(s.point), fd(s.mantissa), fd(s.log_scale), fd(s.value())});
    } else {
        const HermiteSample s = hermite_eval(n, x);
        csv.row({std::to_string(s.order), fd(s.point), fd(s.mantissa), fd(s.log_scale), fd(s.value())});
    }
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

int cmd_langer_audit(const std::string& n_list, int grid, double tail_span, const std::string& out) {
    RunManifest man;
    man.command = "langer audit";
    man.params = {{"n-list", n_list}, {"grid", std::to_string(grid)}, {"tail-span", fd(tail_span)}};
    CsvWriter res(out + ".residuals.csv", {"n", "x", "region", "h", "psi1", "deviation", "dropped"});
    CsvWriter def(out + ".defect.csv",
                  {"n", "x_lo", "value", "error", "x_sqrtq_product", "X_sqrtlam_product"});
    bool flagged = false;
    for (double nd : parse_list(n_list)) {
        const int n = static_cast<int>(nd);
        SpectralIndex idx(n);
        const double X = idx.turning_point;
        std::vector<double> xs;
        const double osc_hi = X - 2.0 * std::pow(X, -1.0 / 3.0);
        for (int i = 0; i < grid; ++i) xs.push_back(osc_hi * i / (grid - 1));
        const double tail_lo = X + std::pow(X, -1.0 / 3.0);
        for (int i = 0; i < grid / 2; ++i)
            xs.push_back(tail_lo + (tail_span - std::pow(X, -1.0 / 3.0)) * i / (grid / 2 - 1));
        const auto rows = langer_residual(idx, xs);
        for (const auto& r : rows) {
            res.row({std::to_string(n), fd(r.x), r.x < X ? "oscillatory" : "tail", fd(r.h),
                     fd(r.psi1_re), fd(r.deviation), r.dropped ? "1" : "0"});
            if (!r.dropped && r.deviation > 10.0 / idx.lambda) flagged = true;
        }
        for (double x_lo : {0.0, 2.0 * X}) {
            const DefectIntegral di = defect_integral(idx, x_lo);
            const double xs_q = x_lo > 0.0 ? di.value * x_lo * x_lo : 0.0; // value * x sqrt(q), q = x^2
            def.row({std::to_string(n), fd(x_lo), fd(di.value), fd(di.error), fd(xs_q),
                     fd(di.value * X * std::sqrt(idx.lambda))});
        }
    }
    man.outputs = {res.path(), def.path()};
    man.write(out + ".manifest.json");
    return flagged ? kExitNumerical : kExitOk;
}

const std::vector<std::string> kSweepHeader = {"k",     "mu",  "m",     "n",          "re_I",   "im_I",
                                               "abs_I", "rhs", "ratio", "quad_error", "panels", "case_tag"};

std::vector<std::string> sweep_cells(const SweepRow& r) {
    return {fd(r.k),            fd(r.mu),           std::to_string(r.m),      std::to_string(r.n),
            fd(r.value.real()), fd(r.value.imag()), fd(r.abs_value),          fd(r.rhs),
            fd(r.ratio),        fd(r.quad_error),   std::to_string(r.panels), r.case_tag};
}

int cmd_matel_one(double k, double mu, int m, int n, const std::string& out) {
    RunManifest man;
    man.command = "matel one";
    man.params = {{"k", fd(k)}, {"mu", fd(mu)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};
    const SweepResult res = bound_ratio_sweep({k}, {mu}, {{m, n}});
    CsvWriter csv(out + ".csv", kSweepHeader);
    for (const auto& r : res.rows) csv.row(sweep_cells(r));
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return res.summary.any_precision_loss ? kExitNumerical : kExitOk;
}

int cmd_matel_sweep(const std::string& config_path, const std::string& out) {
    RunManifest man;
    man.command = "matel sweep";
    man.params = {{"config", config_path}};
    const RunConfig cfg = parse_config_file(config_path);
    const std::vector<double> ks = cfg.top.get_doubles("k");
    const std::vector<double> mus = cfg.top.get_doubles("mu");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : cfg.top.get_all("pair")) {
        if (p.size() != 2) throw std::invalid_argument("config: pair needs two indices");
        pairs.push_back({std::stoi(p[0]), std::stoi(p[1])});
    }
    for (const auto& d : cfg.top.get_all("diag")) {
        if (d.size() != 3) throw std::invalid_argument("config: diag needs m0 m1 count");
        const double m0 = std::stod(d[0]), m1 = std::stod(d[1]);
        const int count = std::stoi(d[2]);
        int prev = 0;
        for (int i = 0; i < count; ++i) {
            const int m = static_cast<int>(std::lround(m0 * std::pow(m1 / m0, i / (count - 1.0))));
            if (m != prev) pairs.push_back({m, m});
            prev = m;
        }
    }
    const SweepResult res = bound_ratio_sweep(ks, mus, pairs);
    CsvWriter csv(out + ".csv", kSweepHeader);
    for (const auto& r : res.rows) csv.row(sweep_cells(r));
    std::printf("sup ratio = %.6g over %zu rows\n", res.summary.sup_ratio, res.rows.size());
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return res.summary.any_precision_loss ? kExitNumerical : kExitOk;
}

int cmd_matel_decay_fit(const std::string& input, const std::string& out) {
    RunManifest man;
    man.command = "matel decay-fit";
    man.params = {{"input", input}};
    const CsvTable t = read_csv(input);
    const int ck = t.column("k"), cmu = t.column("mu"), cm = t.column("m"), cn = t.column("n"),
              cabs = t.column("abs_I");
    if (ck < 0 || cmu < 0 || cm < 0 || cn < 0 || cabs < 0)
        throw std::invalid_argument("decay-fit: input lacks sweep columns");
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<int, double>>> groups;
    for (const auto& r : t.rows) {
        if (r[static_cast<std::size_t>(cm)] != r[static_cast<std::size_t>(cn)]) continue; // diagonal only
        groups[{r[static_cast<std::size_t>(ck)], r[static_cast<std::size_t>(cmu)]}].push_back(
            {std::stoi(r[static_cast<std::size_t>(cm)]), std::stod(r[static_cast<std::size_t>(cabs)])});
    }
    CsvWriter csv(out + ".csv", {"k", "mu", "slope", "stderr", "count"});
    for (auto& [key, samples] : groups) {
        std::sort(samples.begin(), samples.end());
        samples.erase(std::unique(samples.begin(), samples.end(),
                                  [](auto& a, auto& b) { return a.first == b.first; }),
                      samples.end());
        if (samples.size() < 8) continue;
        const ExponentFit fit = exponent_fit(samples);
        csv.row({key.first, key.second, fd(fit.slope), fd(fit.stderr_), std::to_string(fit.count)});
    }
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

int cmd_regions_audit(double k, double mu, int m, int n, const std::string& out) {
    RunManifest man;
    man.command = "regions audit";
    man.params = {{"k", fd(k)}, {"mu", fd(mu)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};
    const RegionDecomposition rd = region_decomposition(k, mu, m, n);
    CsvWriter csv(out + ".csv", {"lo", "hi", "re", "im", "abs", "case_tag"});
    std::complex<double> sum(0.0, 0.0);
    for (const auto& r : rd.regions) {
        csv.row({fd(r.lo), std::isinf(r.hi) ? "inf" : fd(r.hi), fd(r.partial.real()),
                 fd(r.partial.imag()), fd(std::abs(r.partial)), to_string(rd.tag)});
        sum += r.partial;
    }
    const double resid = std::abs(sum - rd.half_line);
    std::printf("additivity residual = %.3g, tag = %s\n", resid, to_string(rd.tag));
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return resid > 1e-10 ? kExitNumerical : kExitOk;
}

int cmd_vdc_suite(unsigned seed, int count, const std::string& out) {
    RunManifest man;
    man.command = "vdc suite";
    man.params = {{"seed", std::to_string(seed)}, {"count", std::to_string(count)}};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    CsvWriter csv(out + ".csv", {"id", "j", "lambda", "a", "b", "bound", "direct_abs", "holds"});
    int failures = 0;
    for (int id = 0; id < count; ++id) {
        const int j = 1 + (id % 2);
        const double lambda = std::pow(10.0, 3.0 * uni(rng));
        const double a = 2.0 * uni(rng);
        const double b = a + 0.1 + 2.0 * uni(rng);
        const double sgn = uni(rng) < 0.5 ? 1.0 : -1.0;
        const double c = 3.0 * uni(rng);
        const double beta = 2.0 * uni(rng) - 1.0;
        const double p0 = 2.0 * uni(rng) - 1.0, p1 = 2.0 * uni(rng) - 1.0, p2 = uni(rng) - 0.5;
        auto psi = [=](double x) { return p0 + p1 * x + p2 * x * x; };
        auto psip = [=](double x) { return p1 + 2.0 * p2 * x; };
        VdcResult r;
        if (j == 1) {
            r = van_der_corput_bound([=](double x) { return sgn * (x + 0.5 * c * x * x); },
                                     [=](double x) { return sgn * (1.0 + c * x); }, psi, psip,
                                     lambda, 1, a, b);
        } else {
            r = van_der_corput_bound([=](double x) { return sgn * (0.5 * x * x + beta * x); },
                                     [=](double) { return sgn; }, psi, psip, lambda, 2, a, b);
        }
        if (!r.holds) ++failures;
        csv.row({std::to_string(id), std::to_string(j), fd(lambda), fd(a), fd(b), fd(r.bound),
                 fd(std::abs(r.direct)), r.holds ? "1" : "0"});
    }
    std::printf("vdc suite: %d/%d hold\n", count - failures, count);
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return failures ? kExitNumerical : kExitOk;
}

int cmd_dioph_check(const std::string& nu_list, double gamma, double tau, int K,
                    const std::string& out) {
    RunManifest man;
    man.command = "dioph check";
    man.params = {{"nu", nu_list}, {"gamma", fd(gamma)}, {"tau", fd(tau)}, {"K", std::to_string(K)}};
    const std::vector<double> nu = parse_list(nu_list);
    DiophantineParams p;
    p.gamma = gamma;
    p.tau = tau;
    p.d = static_cast<int>(nu.size());
    p.K = K;
    const DiophantineVerdict v = is_diophantine(nu, p);
    CsvWriter csv(out + ".csv", {"gamma", "tau", "d", "K", "verdict", "worst_k", "worst_margin"});
    std::string worst;
    for (std::size_t i = 0; i < v.worst_k.size(); ++i)
        worst += (i ? ";" : "") + std::to_string(v.worst_k[i]);
    csv.row({fd(gamma), fd(tau), std::to_string(p.d), std::to_string(K), v.ok ? "true" : "false",
             worst, fd(v.worst_margin)});
    std::printf("dioph check: %s (worst margin %.6g)\n", v.ok ? "true" : "false", v.worst_margin);
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

int cmd_dioph_measure(const std::string& config_path, const std::string& out) {
    RunManifest man;
    man.command = "dioph measure";
    man.params = {{"config", config_path}};
    const RunConfig cfg = parse_config_file(config_path);
    DiophantineParams p;
    p.d = static_cast<int>(cfg.top.get_long("d", 2));
    p.tau = cfg.top.get_double("tau", 1.5);
    p.K = static_cast<int>(cfg.top.get_long("K", 50));
    p.box_lo = cfg.top.get_double("A", 1.0);
    p.box_hi = cfg.top.get_double("B", 2.0);
    const long samples = cfg.top.get_long("samples", 100000);
    const auto seed = static_cast<std::uint64_t>(cfg.top.get_long("seed", 0x5eed));
    CsvWriter csv(out + ".csv", {"gamma", "tau", "d", "K", "samples", "estimate", "stderr"});
    for (double gamma : cfg.top.get_doubles("gamma")) {
        p.gamma = gamma;
        const MeasureEstimate est = excluded_measure(p, samples, seed);
        csv.row({fd(gamma), fd(p.tau), std::to_string(p.d), std::to_string(p.K),
                 std::to_string(samples), fd(est.estimate), fd(est.stderr_)});
    }
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

int cmd_melnikov_check(const std::string& omega_list, double kappa, int K, long j_range,
                       const std::string& out) {
    RunManifest man;
    man.command = "melnikov check";
    man.params = {{"omega", omega_list},
                  {"kappa", fd(kappa)},
                  {"K", std::to_string(K)},
                  {"j-range", std::to_string(j_range)}};
    const std::vector<double> omega = parse_list(omega_list);
    MelnikovParams mp;
    mp.kappa = kappa;
    mp.K = K;
    if (j_range <= 0) {
        double omax = 0.0;
        for (double w : omega) omax = std::max(omax, std::abs(w));
        j_range = static_cast<long>(K * omax) + 2;
    }
    const MelnikovVerdict v = melnikov_check(omega, mp, j_range);
    CsvWriter csv(out + ".csv", {"kappa", "K", "j_range", "verdict", "worst_k", "worst_j", "worst_margin"});
    std::string worst;
    for (std::size_t i = 0; i < v.worst_k.size(); ++i)
        worst += (i ? ";" : "") + std::to_string(v.worst_k[i]);
    csv.row({fd(kappa), std::to_string(K), std::to_string(j_range), v.ok ? "true" : "false", worst,
             std::to_string(v.worst_j), fd(v.worst_margin)});
    std::printf("melnikov check: %s (worst margin %.6g)\n", v.ok ? "true" : "false", v.worst_margin);
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    std::vector<std::string> header{"t"};
    for (double s : tr.s_list) header.push_back("norm_" + fmt_double(s));
    CsvWriter csv(path, header);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        std::vector<std::string> cells{fd(tr.times[i])};
        for (std::size_t si = 0; si < tr.s_list.size(); ++si)
            cells.push_back(fd(tr.norm_histories[si][i]));
        csv.row(cells);
    }
}

void write_snapshots(const std::string& path, const Trajectory& tr) {
    std::ofstream out(path);
    for (const auto& [t, state] : tr.snapshots) {
        out << "# t " << fmt_double(t) << "\n";
        for (std::size_t j = 0; j < state.size(); ++j)
            out << (j + 1) << " " << fmt_double(state[j].real()) << " "
                << fmt_double(state[j].imag()) << "\n";
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out) {
    RunManifest man;
    man.command = "simulate";
    man.params = {{"config", config_path}};
    const RunConfig raw = parse_config_file(config_path);
    SimConfig cfg = simconfig_from_config(raw);
    const int support = static_cast<int>(raw.top.get_long("init_support", cfg.N));
    const bool probe = raw.top.get_string("resonant_probe", "false") == "true";
    const bool doubled = raw.top.get_string("compare_doubled", "false") == "true";

    const CoeffVector xi0 = spread_state(cfg.N, support);
    const Trajectory tr = evolve(cfg, xi0);
    write_trajectory_csv(out + ".traj.csv", tr);
    man.outputs.push_back(out + ".traj.csv");
    if (cfg.snapshot_every > 0) {
        write_snapshots(out + ".snapshots.txt", tr);
        man.outputs.push_back(out + ".snapshots.txt");
    }

    std::vector<Trajectory> trajs{tr};
    std::vector<std::string> labels{"run"};
    double conv = -1.0;
    if (doubled) {
        SimConfig big = cfg;
        big.N = 2 * cfg.N;
        const Trajectory tr2 = evolve(big, spread_state(big.N, support));
        conv = history_sup_diff(tr, tr2, tr.s_list.size() > 1 ? 1 : 0);
        trajs.push_back(tr2);
        labels.push_back("run@2N");
    }
    if (probe) {
        // resonant contrast: omega violating the Melnikov condition at small |k|
        SimConfig res = cfg;
        for (auto& w : res.omega) w = 1.5;
        trajs.push_back(evolve(res, xi0));
        labels.push_back("resonant_probe");
    }
    const auto rows = growth_report(trajs, labels);
    CsvWriter csv(out + ".summary.csv",
                  {"label", "s", "sup_ratio", "final_ratio", "drift", "conv_sup_diff"});
    for (const auto& r : rows)
        csv.row({r.label, fd(r.s), fd(r.sup_ratio), fd(r.final_ratio), fd(r.drift),
                 conv >= 0.0 ? fd(conv) : "n/a"});
    man.outputs.push_back(out + ".summary.csv");
    man.write(out + ".manifest.json");
    const bool drift_bad = tr.l2_drift > 1e-8;
    return drift_bad ? kExitNumerical : kExitOk;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    RunManifest man;
    man.command = "report";
    std::string joined;
    for (const auto& f : inputs) joined += (joined.empty() ? "" : ",") + f;
    man.params = {{"inputs", joined}};
    CsvWriter csv(out + ".csv", {"source", "kind", "key", "value"});
    for (const auto& f : inputs) {
        const CsvTable t = read_csv(f);
        if (t.column("ratio") >= 0) {
            // sweep file: per (k, mu) sup ratio
            const int ck = t.column("k"), cmu = t.column("mu"), cr = t.column("ratio");
            std::map<std::pair<std::string, std::string>, double> sup;
            for (const auto& r : t.rows) {
                auto& v = sup[{r[static_cast<std::size_t>(ck)], r[static_cast<std::size_t>(cmu)]}];
                v = std::max(v, std::stod(r[static_cast<std::size_t>(cr)]));
            }
            double overall = 0.0;
            for (const auto& [key, v] : sup) {
                csv.row({f, "sweep_sup_ratio", "k=" + key.first + ";mu=" + key.second, fd(v)});
                overall = std::max(overall, v);
            }
            csv.row({f, "sweep_sup_ratio", "overall", fd(overall)});
        } else if (t.column("t") >= 0) {
            // trajectory file: per-norm sup/final ratios
            for (std::size_t ci = 1; ci < t.header.size(); ++ci) {
                double first = 0.0, last = 0.0, sup = 0.0;
                for (std::size_t ri = 0; ri < t.rows.size(); ++ri) {
                    const double v = std::stod(t.rows[ri][ci]);
                    if (ri == 0) first = v;
                    last = v;
                    sup = std::max(sup, v);
                }
                csv.row({f, "traj_sup_ratio", t.header[ci], fd(sup / first)});
                csv.row({f, "traj_final_ratio", t.header[ci], fd(last / first)});
            }
        } else {
            csv.row({f, "unknown_schema", "", ""});
        }
    }
    man.outputs = {csv.path()};
    man.write(out + ".manifest.json");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillatory Hermite matrix elements, turning-point asymptotics, and "
                 "quasi-periodic oscillator simulation"};
    app.require_subcommand(1);

    // hermite eval
    auto* hermite = app.add_subcommand("hermite", "eigenfunction evaluation");
    hermite->require_subcommand(1);
    auto* heval = hermite->add_subcommand("eval", "evaluate h_n(x)");
    int he_n = 1;
    double he_x = 0.0;
    bool he_batch = false;
    std::string he_out = "hermite-eval";
    heval->add_option("--n", he_n, "order (1-based)")->required();
    heval->add_option("--x", he_x, "evaluation point")->required();
    heval->add_flag("--batch", he_batch, "emit all orders 1..n");
    heval->add_option("--out", he_out, "output prefix");

    // langer audit
    auto* langer = app.add_subcommand("langer", "turning-point asymptotics");
    langer->require_subcommand(1);
    auto* laudit = langer->add_subcommand("audit", "residuals against the leading term");
    std::string la_nlist = "100,400";
    int la_grid = 48;
    double la_tail = 5.0;
    std::string la_out = "langer-audit";
    laudit->add_option("--n-list", la_nlist, "comma-separated orders");
    laudit->add_option("--grid", la_grid, "oscillatory-region grid size");
    laudit->add_option("--tail-span", la_tail, "tail window beyond X_n");
    laudit->add_option("--out", la_out, "output prefix");

    // matel one / sweep / decay-fit
    auto* matel = app.add_subcommand("matel", "oscillatory matrix elements");
    matel->require_subcommand(1);
    auto* mone = matel->add_subcommand("one", "single element");
    double mo_k = 1.0, mo_mu = 0.0;
    int mo_m = 1, mo_n = 1;
    std::string mo_out = "matel-one";
    mone->add_option("--k", mo_k)->required();
    mone->add_option("--mu", mo_mu)->required();
    mone->add_option("--m", mo_m)->required();
    mone->add_option("--n", mo_n)->required();
    mone->add_option("--out", mo_out, "output prefix");
    auto* msweep = matel->add_subcommand("sweep", "decay-bound ratio sweep");
    std::string ms_config, ms_out = "matel-sweep";
    msweep->add_option("--config", ms_config, "sweep config file")->required();
    msweep->add_option("--out", ms_out, "output prefix");
    auto* mfit = matel->add_subcommand("decay-fit", "exponent fit over a sweep CSV");
    std::string mf_input, mf_out = "matel-decay-fit";
    mfit->add_option("--input", mf_input, "sweep CSV")->required();
    mfit->add_option("--out", mf_out, "output prefix");

    // regions audit
    auto* regions = app.add_subcommand("regions", "proof-region decomposition");
    regions->require_subcommand(1);
    auto* raudit = regions->add_subcommand("audit", "partial integrals and case tag");
    double ra_k = 1.0, ra_mu = 0.0;
    int ra_m = 20, ra_n = 25;
    std::string ra_out = "regions-audit";
    raudit->add_option("--k", ra_k)->required();
    raudit->add_option("--mu", ra_mu)->required();
    raudit->add_option("--m", ra_m)->required();
    raudit->add_option("--n", ra_n)->required();
    raudit->add_option("--out", ra_out, "output prefix");

    // vdc suite
    auto* vdc = app.add_subcommand("vdc", "van der Corput verification");
    vdc->require_subcommand(1);
    auto* vsuite = vdc->add_subcommand("suite", "randomized bound suite");
    unsigned vs_seed = 20240817;
    int vs_count = 1000;
    std::string vs_out = "vdc-suite";
    vsuite->add_option("--seed", vs_seed);
    vsuite->add_option("--count", vs_count);
    vsuite->add_option("--out", vs_out, "output prefix");

    // dioph check / measure
    auto* dioph = app.add_subcommand("dioph", "Diophantine conditions");
    dioph->require_subcommand(1);
    auto* dcheck = dioph->add_subcommand("check", "membership up to cutoff K");
    std::string dc_nu;
    double dc_gamma = 0.1, dc_tau = 1.5;
    int dc_K = 200;
    std::string dc_out = "dioph-check";
    dcheck->add_option("--nu", dc_nu, "comma-separated vector")->required();
    dcheck->add_option("--gamma", dc_gamma)->required();
    dcheck->add_option("--tau", dc_tau)->required();
    dcheck->add_option("--K", dc_K);
    dcheck->add_option("--out", dc_out, "output prefix");
    auto* dmeasure = dioph->add_subcommand("measure", "Monte Carlo excluded measure");
    std::string dm_config, dm_out = "dioph-measure";
    dmeasure->add_option("--config", dm_config)->required();
    dmeasure->add_option("--out", dm_out, "output prefix");

    // melnikov check
    auto* meln = app.add_subcommand("melnikov", "second Melnikov condition");
    meln->require_subcommand(1);
    auto* mcheck = meln->add_subcommand("check", "condition up to cutoff K");
    std::string mc_omega;
    double mc_kappa = 1e-6;
    int mc_K = 50;
    long mc_jrange = 0;
    std::string mc_out = "melnikov-check";
    mcheck->add_option("--omega", mc_omega, "comma-separated vector")->required();
    mcheck->add_option("--kappa", mc_kappa)->required();
    mcheck->add_option("--K", mc_K);
    mcheck->add_option("--j-range", mc_jrange, "0 = derive from K max|omega| + 2");
    mcheck->add_option("--out", mc_out, "output prefix");

    // simulate
    auto* sim = app.add_subcommand("simulate", "evolve the truncated system");
    std::string sim_config, sim_out = "simulate";
    sim->add_option("--config", sim_config)->required();
    sim->add_option("--out", sim_out, "output prefix");

    // report
    auto* rep = app.add_subcommand("report", "summarize prior CSV outputs");
    std::vector<std::string> rep_inputs;
    std::string rep_out = "report";
    rep->add_option("--inputs", rep_inputs, "input CSV files")->required()->expected(-1);
    rep->add_option("--out", rep_out, "output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (heval->parsed()) return cmd_hermite_eval(he_n, he_x, he_batch, he_out);
        if (laudit->parsed()) return cmd_langer_audit(la_nlist, la_grid, la_tail, la_out);
        if (mone->parsed()) return cmd_matel_one(mo_k, mo_mu, mo_m, mo_n, mo_out);
        if (msweep->parsed()) return cmd_matel_sweep(ms_config, ms_out);
        if (mfit->parsed()) return cmd_matel_decay_fit(mf_input, mf_out);
        if (raudit->parsed()) return cmd_regions_audit(ra_k, ra_mu, ra_m, ra_n, ra_out);
        if (vsuite->parsed()) return cmd_vdc_suite(vs_seed, vs_count, vs_out);
        if (dcheck->parsed()) return cmd_dioph_check(dc_nu, dc_gamma, dc_tau, dc_K, dc_out);
        if (dmeasure->parsed()) return cmd_dioph_measure(dm_config, dm_out);
        if (mcheck->parsed()) return cmd_melnikov_check(mc_omega, mc_kappa, mc_K, mc_jrange, mc_out);
        if (sim->parsed()) return cmd_simulate(sim_config, sim_out);
        if (rep->parsed()) return cmd_report(rep_inputs, rep_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
