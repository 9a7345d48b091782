// Copyright (C) 2026 The ddmod authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "csv.hpp"
#include "ddmod/ddmod.hpp"

namespace ddmod::cli
{
namespace
{
const cd J{0.0, 1.0};

using Runner = std::function<void(const ExperimentConfig &, Section &, const RunOptions &, std::ostream &, RunResult &)>;

std::filesystem::path output_path(const RunOptions &opts, const std::string &stem)
{
    return opts.out_dir / (stem + ".csv");
}

ComplexMatrix gaussian_grid(int rows, int cols, Rng &rng)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    ComplexMatrix x(rows, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = cd(g(rng), g(rng));
    return x;
}

ComplexMatrix qpsk_grid(int rows, int cols, Rng &rng)
{
    std::bernoulli_distribution bit;
    ComplexMatrix x(rows, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = cd(bit(rng) ? 1.0 : -1.0, bit(rng) ? 1.0 : -1.0) / std::sqrt(2.0);
    return x;
}

// path1, path2, ...: "h_re, h_im, tau, nu" with tau in units of T / M and nu in units of delta_f / N.
std::vector<ChannelPath> read_paths(Section &s, const DDGridParams &p, const std::vector<ChannelPath> &fallback)
{
    std::vector<ChannelPath> paths;
    for (int i = 1; s.has("path" + std::to_string(i)); ++i)
    {
        const std::string key = "path" + std::to_string(i);
        const auto v = s.get_doubles(key, {});
        if (v.size() != 4)
            throw ConfigError(s.name() + "." + key, "expected h_re, h_im, tau, nu");
        const ChannelPath path{cd(v[0], v[1]), v[2] * p.sample_period(), v[3] * p.delta_f() / p.N()};
        try
        {
            validate_path(path, p);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(s.name() + "." + key, e.what());
        }
        paths.push_back(path);
    }
    return paths.empty() ? fallback : paths;
}

std::vector<double> read_sweep(Section &s, double lo, double hi, int points)
{
    const double a = s.get_double("nu_min", lo);
    const double b = s.get_double("nu_max", hi);
    const int n = s.get_int("nu_points", points, 1, 1000000);
    if (b < a)
        throw ConfigError(s.name() + ".nu_max", "must not be below nu_min");
    return linspace(a, b, n);
}

double read_threshold(Section &s)
{
    const double t = s.get_double("threshold", 0.99);
    if (!(t > 0.0 && t <= 1.0))
        throw ConfigError(s.name() + ".threshold", "must lie in (0, 1]");
    return t;
}

void run_zak_check(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log, RunResult &res)
{
    const int signals = s.get_int("signals", 20, 1, 100000);
    s.reject_unused();

    const DDGridParams &p = cfg.grid;
    const int M = p.M(), N = p.N();
    Rng rng = make_rng(cfg.seed, 0);
    std::map<std::string, double> err{{"round_trip", 0.0},        {"parseval", 0.0},        {"linearity", 0.0},
                                      {"quasi_period_delay", 0.0}, {"period_doppler", 0.0}, {"defining_sum", 0.0},
                                      {"dd_shift", 0.0}};
    const auto bump = [&err](const std::string &k, double v) { err[k] = std::max(err[k], v); };

    for (int trial = 0; trial < signals; ++trial)
    {
        const TDSamples x(p, 0, vec_dd(gaussian_grid(N, M, rng)));
        const TDSamples y(p, 0, vec_dd(gaussian_grid(N, M, rng)));
        const double scale = x.samples.cwiseAbs().maxCoeff();
        const ZakGrid Z = discrete_zak(x);
        bump("round_trip", (inverse_zak(Z, N, 0).samples - x.samples).cwiseAbs().maxCoeff() / scale);

        const double e = x.samples.squaredNorm();
        bump("parseval", std::abs(e - Z.values.squaredNorm() / (p.T() * N)) / e);

        const cd a = std::polar(1.0, 0.3 * trial), b{0.5, -1.5};
        const TDSamples comb(p, 0, a * x.samples + b * y.samples);
        const ComplexMatrix expect = a * Z.values + b * discrete_zak(y).values;
        bump("linearity", (discrete_zak(comb).values - expect).cwiseAbs().maxCoeff() / expect.cwiseAbs().maxCoeff());

        const double zs = Z.values.cwiseAbs().maxCoeff();
        for (std::int64_t u = -2 * M; u < 3 * M; ++u)
            for (std::int64_t v = -N; v < 2 * N; ++v)
            {
                const cd z = quasi_extend_index(Z, u, v);
                const cd delay = std::exp(2.0 * pi * J * (static_cast<double>(v) / N)) * z;
                bump("quasi_period_delay", std::abs(quasi_extend_index(Z, u + M, v) - delay) / zs);
                bump("period_doppler", std::abs(quasi_extend_index(Z, u, v + N) - z) / zs);
                // sqrt(T) sum_n x[u + nM] e^{-j 2 pi n v / N} over the stored support.
                cd direct{0.0, 0.0};
                const std::int64_t reach = std::abs(u) / M + 1;
                for (std::int64_t n = -reach; n <= N + reach; ++n)
                {
                    const std::int64_t q = u + n * M;
                    if (q >= 0 && q < x.samples.size())
                        direct += x.samples(q) * std::exp(-2.0 * pi * J * (static_cast<double>(n * v % N) / N));
                }
                direct *= std::sqrt(p.T());
                bump("defining_sum", std::abs(z - direct) / zs);
            }

        for (auto [l0, k0] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{M + 1, -2}, std::pair{-2, N + 1}})
        {
            const std::int64_t n0 = -3, blocks = N + 6;
            Eigen::VectorXcd r = Eigen::VectorXcd::Zero(blocks * M);
            for (std::int64_t q = 0; q < r.size(); ++q)
            {
                const std::int64_t src = n0 * M + q - l0;
                if (src >= 0 && src < x.samples.size())
                    r(q) = x.samples(src) * std::exp(2.0 * pi * J * (static_cast<double>(k0 * src) / (M * N)));
            }
            const ZakGrid shifted = discrete_zak(TDSamples(p, n0, r));
            bump("dd_shift", (apply_dd_shift_grid(Z, l0, k0).values - shifted.values).cwiseAbs().maxCoeff() / zs);
        }
    }

    // Round-off grows with the transform length.
    const double tol = 1e-12 * std::max(1.0, std::sqrt(static_cast<double>(M) * N) / 16.0);
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"check", "max_error", "tolerance", "status"});
    for (const auto &[name, value] : err)
    {
        const bool ok = value <= tol;
        res.passed = res.passed && ok;
        csv << name << value << tol << (ok ? "PASS" : "FAIL");
        csv.end_row();
        log << (ok ? "PASS " : "FAIL ") << name << " max_error=" << format_double(value) << '\n';
    }
    csv.close();
    res.files.push_back(file);
}

void run_basis_gram(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log, RunResult &res)
{
    s.reject_unused();
    const DDGridParams &p = cfg.grid;
    const ComplexMatrix G = alpha_gram(p, opts.threads);
    const int M = p.M();
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"k1", "l1", "k2", "l2", "re", "im"});
    double off = 0.0, diag = 0.0;
    for (int r = 0; r < p.MN(); ++r)
        for (int c = 0; c < p.MN(); ++c)
        {
            csv << r / M << r % M << c / M << c % M << G(r, c);
            csv.end_row();
            if (r == c)
                diag = std::max(diag, std::abs(G(r, c) - 1.0));
            else
                off = std::max(off, std::abs(G(r, c)));
        }
    csv.close();
    res.files.push_back(file);
    log << "max |G - I| diagonal=" << format_double(diag) << " off-diagonal=" << format_double(off) << '\n';
}

void run_modulate_compare(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log,
                          RunResult &res)
{
    const auto Ms = s.get_ints("M_list", {cfg.grid.M()}, 1, 4096);
    const int oversample = s.get_int("oversample", 16, 1, 4096);
    const std::string symbols = s.get_string("symbols", "qpsk");
    if (symbols != "qpsk" && symbols != "gaussian")
        throw ConfigError(s.name() + ".symbols", "expected qpsk or gaussian");
    s.reject_unused();

    const int N = cfg.grid.N();
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"M", "N", "relative_l2", "in_window_energy", "out_of_window_energy"});
    for (int M : Ms)
    {
        const DDGridParams p(cfg.grid.T(), M, N);
        Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(M));
        const DDSymbols x(p, symbols == "qpsk" ? qpsk_grid(N, M, rng) : gaussian_grid(N, M, rng));
        const ModulationMismatch mm = modulation_mismatch(x, oversample);
        csv << M << N << mm.relative_l2 << mm.in_window_energy << mm.out_of_window_energy;
        csv.end_row();
        log << "M=" << M << " relative_l2=" << format_double(mm.relative_l2) << '\n';
    }
    csv.close();
    res.files.push_back(file);
}

void run_channel_oracle(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log,
                        RunResult &res)
{
    const DDGridParams &p = cfg.grid;
    const std::vector<ChannelPath> defaults{
        {cd(0.8, 0.3), 0.37 * p.sample_period(), 0.21 * p.delta_f() / p.N()},
        {cd(-0.4, 0.5), 2.61 * p.sample_period(), -1.38 * p.delta_f() / p.N()}};
    const auto paths = read_paths(s, p, p.M() > 2 ? defaults : std::vector<ChannelPath>{defaults.front()});
    const auto Ps = s.get_ints("P_list", {64, 128, 256}, 1, 1 << 16);
    s.reject_unused();

    Rng rng = make_rng(cfg.seed, 0);
    const DDSymbols x(p, gaussian_grid(p.N(), p.M(), rng));
    const ComplexMatrix Y = sample_received_dd(x, effective_dd_channel(paths, p, opts.threads));
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"P", "max_abs_error", "relative_error", "tail_estimate"});
    for (int P : Ps)
    {
        const BruteForceReceived bf = brute_force_Y(x, paths, P);
        const double abs_err = (bf.Y - Y).cwiseAbs().maxCoeff();
        const double rel = abs_err / bf.Y.cwiseAbs().maxCoeff();
        csv << P << abs_err << rel << bf.tail_estimate;
        csv.end_row();
        log << "P=" << P << " relative_error=" << format_double(rel) << '\n';
    }
    csv.close();
    res.files.push_back(file);
}

void run_se(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log, RunResult &res)
{
    const DDGridParams &p = cfg.grid;
    const auto paths = read_paths(s, p, {ChannelPath{}});
    const auto rho_dB = s.get_doubles("rho_dB", {0.0, 10.0, 20.0, 30.0});
    s.reject_unused();

    const EffectiveChannel ch = effective_dd_channel(paths, p, opts.threads);
    std::vector<double> rho;
    for (double d : rho_dB)
        rho.push_back(db_to_linear(d));
    const auto se = spectral_efficiency(ch, noise_covariance(p, cfg.seed), rho);
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"rho_dB", "rho", "spectral_efficiency"});
    for (std::size_t i = 0; i < rho.size(); ++i)
    {
        csv << rho_dB[i] << rho[i] << se[i];
        csv.end_row();
        log << "rho_dB=" << format_double(rho_dB[i]) << " se=" << format_double(se[i]) << '\n';
    }
    csv.close();
    res.files.push_back(file);
}

void run_interference(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log,
                      RunResult &res)
{
    const int M = cfg.grid.M();
    SweepSettings st;
    st.M = M;
    st.T = cfg.grid.T();
    st.N_list = s.get_ints("N_list", {cfg.grid.N()}, 1, 1 << 14);
    if (s.has("k_list"))
    {
        st.k_list = s.get_ints("k_list", {}, 0, 1 << 14);
        if (st.k_list.size() != st.N_list.size())
            throw ConfigError(s.name() + ".k_list", "needs one entry per N_list entry");
        for (std::size_t i = 0; i < st.k_list.size(); ++i)
            if (st.k_list[i] >= st.N_list[i])
                throw ConfigError(s.name() + ".k_list", "entry must be below the matching N");
    }
    st.l = s.get_int("l", (M + 1) / 2, 0, M - 1);
    st.nu_over_df = read_sweep(s, 0.0, 2.0, 101);
    st.tau_points = s.get_int("tau_points", 64, 1, 1 << 20);
    st.tau_max = s.get_double("tau_max", 0.5);
    if (st.tau_max < 0.0)
        throw ConfigError(s.name() + ".tau_max", "must not be negative");
    st.threshold = read_threshold(s);
    // Single profile for the heat-map table, offsets in lattice bins.
    const double prof_tau = s.get_double("profile_tau", 0.25);
    const double prof_nu = s.get_double("profile_nu", 0.5);
    if (prof_tau < 0.0 || prof_tau >= M)
        throw ConfigError(s.name() + ".profile_tau", "must lie in [0, M)");
    s.reject_unused();

    const auto rows = interference_sweep(st, opts.threads);
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"N", "k", "l", "nu_over_df", "mean_fraction"});
    std::map<int, double> peak;
    for (const auto &r : rows)
    {
        csv << r.N << r.k << st.l << r.nu_over_df << r.mean_fraction;
        csv.end_row();
        peak[r.N] = std::max(peak[r.N], r.mean_fraction);
    }
    csv.close();
    res.files.push_back(file);
    for (const auto &[N, v] : peak)
        log << "N=" << N << " max mean_fraction=" << format_double(v)
            << " rough_estimate=" << format_double(rough_interference_estimate(M, N)) << '\n';

    const int N0 = st.N_list.front();
    const DDGridParams p0(st.T, M, N0);
    const int k0 = st.k_list.empty() ? N0 / 2 : st.k_list.front();
    const InterferenceProfile prof =
        interference_profile(k0, st.l, prof_tau * p0.sample_period(), prof_nu * p0.delta_f() / N0, p0, st.threshold);
    const auto pfile = output_path(opts, cfg.experiment + "-profile");
    CsvWriter pcsv(pfile.string(), {"k", "l", "rsq"});
    for (int k = 0; k < N0; ++k)
        for (int l = 0; l < M; ++l)
        {
            pcsv << k << l << prof.Rsq(k, l);
            pcsv.end_row();
        }
    pcsv.close();
    res.files.push_back(pfile);
    log << "profile N=" << N0 << " fraction=" << format_double(prof.fraction) << '\n';
}

void run_ofdm_compare(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log,
                      RunResult &res)
{
    const int M = cfg.grid.M();
    const int N = cfg.grid.N();
    const int k = s.get_int("k", (M + 1) / 2, 0, M - 1);
    const double tau = s.get_double("tau", 0.0);
    const auto nus = read_sweep(s, 0.0, 2.0, 101);
    const double threshold = read_threshold(s);
    const int tau_points = s.get_int("tau_points", 64, 1, 1 << 20);
    const double tau_max = s.get_double("tau_max", 0.5);
    if (tau_max < 0.0)
        throw ConfigError(s.name() + ".tau_max", "must not be negative");
    s.reject_unused();

    SweepSettings st;
    st.M = M;
    st.T = cfg.grid.T();
    st.N_list = {N};
    st.nu_over_df = nus;
    st.tau_points = tau_points;
    st.tau_max = tau_max;
    st.threshold = threshold;
    const auto dd = interference_sweep(st, opts.threads);

    const double T = cfg.grid.T();
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"nu_over_df", "ofdm_fraction", "dd_fraction"});
    double mx = 0.0;
    for (std::size_t i = 0; i < nus.size(); ++i)
    {
        const double f = ofdm_interference(k, tau * T, nus[i] / T, M, T, threshold);
        mx = std::max(mx, f);
        csv << nus[i] << f << dd[i].mean_fraction;
        csv.end_row();
    }
    csv.close();
    res.files.push_back(file);
    log << "max ofdm_fraction=" << format_double(mx) << '\n';
}

void run_avionics(const ExperimentConfig &cfg, Section &s, const RunOptions &opts, std::ostream &log, RunResult &res)
{
    AvionicsConfig a;
    a.Kf_dB = s.get_double("Kf_dB", a.Kf_dB);
    a.tau2 = s.get_double("tau2", a.tau2);
    a.theta_deg = s.get_double("theta_deg", a.theta_deg);
    a.fc = s.get_positive("fc", a.fc);
    a.speeds = s.get_doubles("speeds", a.speeds);
    a.rho_dB = s.get_doubles("rho_dB", a.rho_dB);
    a.draws = s.get_int("draws", a.draws, 1, 1 << 20);
    s.reject_unused();
    if (a.tau2 < 0.0 || a.tau2 >= cfg.grid.T())
        throw ConfigError(s.name() + ".tau2", "must lie in [0, T)");
    for (double v : a.speeds)
        if (v < 0.0)
            throw ConfigError(s.name() + ".speeds", "speeds must not be negative");
    if (opts.full)
        a.draws = 100;
    a.seed = cfg.seed;
    a.M = cfg.grid.M();
    a.N = cfg.grid.N();
    a.delta_f = cfg.grid.delta_f();

    const auto rows = avionics_se_sweep(a, opts.threads);
    const auto file = output_path(opts, cfg.experiment);
    CsvWriter csv(file.string(), {"speed", "rho_dB", "draws", "mean_se", "std_error"});
    for (const auto &r : rows)
    {
        csv << r.speed << r.rho_dB << a.draws << r.mean_se << r.std_error;
        csv.end_row();
        log << "speed=" << format_double(r.speed) << " rho_dB=" << format_double(r.rho_dB)
            << " mean_se=" << format_double(r.mean_se) << '\n';
    }
    csv.close();
    res.files.push_back(file);
}

const std::map<std::string, Runner> &runners()
{
    static const std::map<std::string, Runner> table{
        {"zak-check", run_zak_check},           {"basis-gram", run_basis_gram},
        {"modulate-compare", run_modulate_compare}, {"channel-oracle", run_channel_oracle},
        {"se", run_se},                         {"interference", run_interference},
        {"ofdm-compare", run_ofdm_compare},     {"avionics", run_avionics}};
    return table;
}
} // namespace

RunResult run_experiment(ExperimentConfig cfg, const RunOptions &opts, std::ostream &log)
{
    if (opts.seed)
        cfg.seed = *opts.seed;
    const auto it = runners().find(cfg.experiment);
    if (it == runners().end())
        throw ConfigError("experiment.name", "unknown experiment '" + cfg.experiment + "'");
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec)
        throw ConfigError("out", "cannot create output directory '" + opts.out_dir.string() + "': " + ec.message());
    RunResult res;
    it->second(cfg, cfg.options, opts, log, res);
    return res;
}

} // namespace ddmod::cli
