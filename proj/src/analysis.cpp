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

#include "ddmod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace ddmod
{
namespace
{
// Ktilde^{-1/2} Htilde without forming Ktilde.
ComplexMatrix whiten(const EffectiveChannel &channel)
{
    const auto &p = channel.params;
    const int M = p.M();
    const int N = p.N();
    const ComplexMatrix &H = channel.Htilde;
    const double c = (1.0 / std::sqrt(2.0) - 1.0) / N;
    ComplexMatrix rowsum = ComplexMatrix::Zero(M, H.cols());
    for (int k = 0; k < N; ++k)
        rowsum += H.middleRows(static_cast<Eigen::Index>(k) * M, M);
    ComplexMatrix A = H;
    for (int k = 0; k < N; ++k)
        A.middleRows(static_cast<Eigen::Index>(k) * M, M) += c * rowsum;
    return A;
}

void check_noise(const EffectiveChannel &channel, const NoiseModel &noise)
{
    if (!(channel.params == noise.params))
        throw DomainError("spectral_efficiency: channel and noise grids differ");
    if (channel.Htilde.rows() != channel.params.MN() || channel.Htilde.cols() != channel.params.MN())
        throw DomainError("spectral_efficiency: Htilde must be MN x MN");
}
} // namespace

std::vector<double> spectral_efficiency(const EffectiveChannel &channel, const NoiseModel &noise,
                                        const std::vector<double> &rhos)
{
    check_noise(channel, noise);
    for (double r : rhos)
        if (!(r >= 0.0))
            throw DomainError("spectral_efficiency: rho must be >= 0");
    const ComplexMatrix A = whiten(channel);
    const Eigen::Index n = A.cols();
    ComplexMatrix G = ComplexMatrix::Zero(n, n);
    G.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
    std::vector<double> out;
    out.reserve(rhos.size());
    for (double r : rhos)
        out.push_back(r == 0.0 ? 0.0 : log2det_identity_plus(G, r) / static_cast<double>(n));
    return out;
}

double spectral_efficiency(const EffectiveChannel &channel, const NoiseModel &noise, double rho)
{
    return spectral_efficiency(channel, noise, std::vector<double>{rho}).front();
}

std::size_t min_cover_count(std::vector<double> values, double threshold)
{
    if (values.empty())
        return 0;
    std::sort(values.begin(), values.end(), std::greater<>());
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    if (!(total > 0.0))
        return 0;
    const double target = threshold * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        acc += values[i];
        if (acc >= target)
            return i + 1;
    }
    return values.size();
}

InterferenceProfile interference_profile(int k, int l, double tau, double nu, const DDGridParams &p, double threshold)
{
    const int M = p.M();
    const int N = p.N();
    if (k < 0 || k >= N || l < 0 || l >= M)
        throw DomainError("interference_profile: source index out of range");
    if (!std::isfinite(tau) || !std::isfinite(nu))
        throw DomainError("interference_profile: tau and nu must be finite");
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw DomainError("interference_profile: threshold must lie in (0, 1]");
    const double a = nu * p.T();
    const double b = tau / p.T();
    const double scale = 1.0 / (static_cast<double>(p.MN()) * p.MN());
    Eigen::VectorXd dk(N);
    for (int kp = 0; kp < N; ++kp)
    {
        const double d = dirichlet_ratio(static_cast<double>(kp - k) / N - a, N);
        dk(kp) = d * d;
    }
    Eigen::VectorXd dl(M);
    for (int lp = 0; lp < M; ++lp)
    {
        const double d = dirichlet_ratio(static_cast<double>(lp - l) / M - b, M);
        dl(lp) = d * d;
    }
    InterferenceProfile prof{p, k, l, tau, nu, scale * dk * dl.transpose(), 0.0};
    std::vector<double> values(prof.Rsq.data(), prof.Rsq.data() + prof.Rsq.size());
    const std::size_t count = min_cover_count(std::move(values), threshold);
    prof.fraction = p.MN() > 1 ? static_cast<double>(count - 1) / (p.MN() - 1) : 0.0;
    return prof;
}

double rough_interference_estimate(int M, int N)
{
    return static_cast<double>(2 * M + 2 * N - 5) / (static_cast<double>(M) * N - 1);
}

std::vector<double> linspace(double lo, double hi, int count)
{
    if (count < 1)
        throw DomainError("linspace: count must be >= 1");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return v;
}

std::vector<SweepRow> interference_sweep(const SweepSettings &s, unsigned threads)
{
    if (!s.k_list.empty() && s.k_list.size() != s.N_list.size())
        throw DomainError("interference_sweep: k_list must match N_list");
    if (s.tau_points < 1)
        throw DomainError("interference_sweep: tau_points must be >= 1");
    const int l = s.l < 0 ? (s.M + 1) / 2 : s.l;
    const std::size_t nn = s.nu_over_df.size();
    std::vector<SweepRow> rows(s.N_list.size() * nn);
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const std::size_t i = idx / nn;
        const std::size_t j = idx % nn;
        const int N = s.N_list[i];
        const int k = s.k_list.empty() ? N / 2 : s.k_list[i];
        const DDGridParams p(s.T, s.M, N);
        const double nu = s.nu_over_df[j] * p.delta_f();
        double acc = 0.0;
        for (int t = 0; t < s.tau_points; ++t)
        {
            const double u = s.tau_max * (t + 0.5) / s.tau_points;
            acc += interference_profile(k, l, u * p.T() / s.M, nu, p, s.threshold).fraction;
        }
        rows[idx] = {N, k, s.nu_over_df[j], acc / s.tau_points};
    });
    return rows;
}

Eigen::VectorXcd ofdm_channel_column(int k, double tau, double nu, int M, double T, cd h)
{
    if (M < 1 || k < 0 || k >= M)
        throw DomainError("ofdm_channel_column: subcarrier index out of range");
    const double v = nu * T + k;
    const cd common = h * cexp_2pi(-(tau / T) * v);
    Eigen::VectorXcd col(M);
    for (int m = 0; m < M; ++m)
        col(m) = common * cexp_2pi(0.5 * (v - m)) * sinc(v - m);
    return col;
}

double ofdm_interference(int k, double tau, double nu, int M, double T, double threshold)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw DomainError("ofdm_interference: threshold must lie in (0, 1]");
    const Eigen::VectorXcd col = ofdm_channel_column(k, tau, nu, M, T);
    std::vector<double> values(M);
    for (int m = 0; m < M; ++m)
        values[m] = std::norm(col(m));
    const std::size_t count = min_cover_count(std::move(values), threshold);
    return M > 1 ? static_cast<double>(count - 1) / (M - 1) : 0.0;
}

double db_to_linear(double dB)
{
    return std::pow(10.0, dB / 10.0);
}

std::vector<ChannelPath> avionics_paths(const AvionicsConfig &cfg, double speed, int draw)
{
    const double Kf = db_to_linear(cfg.Kf_dB);
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(draw));
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / (Kf + 1.0)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double U = uni(rng);
    const double theta = cfg.theta_deg * pi / 180.0;
    const double nu1 = speed * cfg.fc / kSpeedOfLight;
    const double nu2 = nu1 * std::cos(pi - theta * U);
    return {ChannelPath{cd(std::sqrt(Kf / (Kf + 1.0)), 0.0), 0.0, nu1}, ChannelPath{cd(re, im), cfg.tau2, nu2}};
}

std::vector<AvionicsRow> avionics_se_sweep(const AvionicsConfig &cfg, unsigned threads)
{
    if (cfg.draws < 1)
        throw DomainError("avionics: draws must be >= 1");
    if (!std::isfinite(cfg.Kf_dB))
        throw DomainError("avionics: Kf_dB must be finite");
    const DDGridParams p = DDGridParams::from_delta_f(cfg.delta_f, cfg.M, cfg.N);
    const NoiseModel noise = noise_covariance(p, cfg.seed);
    std::vector<double> rhos;
    for (double r : cfg.rho_dB)
        rhos.push_back(db_to_linear(r));
    const std::size_t S = cfg.speeds.size();
    const std::size_t D = static_cast<std::size_t>(cfg.draws);
    const std::size_t R = rhos.size();
    std::vector<double> se(S * D * R);
    // Cells run single-threaded internally; parallelism is across cells.
    parallel_for(S * D, threads, [&](std::size_t cell) {
        const std::size_t si = cell / D;
        const std::size_t d = cell % D;
        const auto paths = avionics_paths(cfg, cfg.speeds[si], static_cast<int>(d));
        const EffectiveChannel ch = effective_dd_channel(paths, p, 1);
        const auto c = spectral_efficiency(ch, noise, rhos);
        for (std::size_t r = 0; r < R; ++r)
            se[(si * D + d) * R + r] = c[r];
    });
    std::vector<AvionicsRow> rows;
    for (std::size_t si = 0; si < S; ++si)
        for (std::size_t r = 0; r < R; ++r)
        {
            double sum = 0.0;
            for (std::size_t d = 0; d < D; ++d)
                sum += se[(si * D + d) * R + r];
            const double mean = sum / D;
            double var = 0.0;
            for (std::size_t d = 0; d < D; ++d)
                var += std::pow(se[(si * D + d) * R + r] - mean, 2);
            const double stderr_ = D > 1 ? std::sqrt(var / (D - 1) / D) : 0.0;
            rows.push_back({cfg.speeds[si], cfg.rho_dB[r], mean, stderr_});
        }
    return rows;
}

} // namespace ddmod
