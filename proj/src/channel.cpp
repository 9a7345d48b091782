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

#include "ddmod/channel.hpp"

#include <cmath>
#include <random>

#include "ddmod/basis.hpp"

namespace ddmod
{
void validate_path(const ChannelPath &path, const DDGridParams &p)
{
    if (!(path.tau >= 0.0 && path.tau < p.T()))
        throw DomainError("ChannelPath: tau must lie in [0, T)");
    if (!std::isfinite(path.nu))
        throw DomainError("ChannelPath: nu must be finite");
    if (!std::isfinite(path.h.real()) || !std::isfinite(path.h.imag()))
        throw DomainError("ChannelPath: gain must be finite");
}

namespace
{
// Per-path lookup tables; htilde = h / MN * phase_l[l'] * dopp[k' - k] * cross(k', l' - l) * delay[l' - l].
struct PathTables
{
    std::vector<cd> phase_l;
    std::vector<cd> dopp;
    std::vector<cd> delay;
    ComplexMatrix cross; // N x (2M - 1)
};

PathTables build_tables(const ChannelPath &path, const DDGridParams &p)
{
    const int M = p.M();
    const int N = p.N();
    const double a = path.nu * p.T();
    const double b = path.tau / p.T();
    PathTables t;
    t.phase_l.resize(M);
    for (int l = 0; l < M; ++l)
        t.phase_l[l] = cexp_2pi(a * (static_cast<double>(l) / M - b));
    t.dopp.resize(2 * N - 1);
    for (int d = -(N - 1); d <= N - 1; ++d)
    {
        const double dk = static_cast<double>(d) / N - a;
        t.dopp[d + N - 1] = cexp_2pi(-0.5 * (N - 1) * dk) * dirichlet_ratio(dk, N);
    }
    t.delay.resize(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d)
    {
        const double y = static_cast<double>(d) / M - b;
        t.delay[d + M - 1] = cexp_2pi(0.5 * (M - 1) * y) * dirichlet_ratio(y, M);
    }
    t.cross.resize(N, 2 * M - 1);
    for (int kp = 0; kp < N; ++kp)
    {
        // frac(k'/N - a), with k' - a N snapped to an integer when it is one up to rounding.
        double w = kp - a * N;
        const double wr = std::round(w);
        if (std::abs(w - wr) <= 1e-9 * std::max(1.0, std::abs(wr)))
            w = wr;
        const double z = static_cast<double>(kp) / N - a;
        const double frac = z - std::floor(w / N);
        for (int d = -(M - 1); d <= M - 1; ++d)
        {
            const double y = static_cast<double>(d) / M - b;
            t.cross(kp, d + M - 1) = cexp_2pi(frac * y);
        }
    }
    return t;
}
} // namespace

EffectiveChannel effective_dd_channel(const std::vector<ChannelPath> &paths, const DDGridParams &p, unsigned threads)
{
    if (paths.empty())
        throw DomainError("effective_dd_channel: at least one path is required");
    for (const auto &path : paths)
        validate_path(path, p);
    const int M = p.M();
    const int N = p.N();
    const int MN = p.MN();
    std::vector<PathTables> tables;
    tables.reserve(paths.size());
    for (const auto &path : paths)
        tables.push_back(build_tables(path, p));
    ComplexMatrix H(MN, MN);
    parallel_for(static_cast<std::size_t>(MN), threads, [&](std::size_t col) {
        const int k = static_cast<int>(col) / M;
        const int l = static_cast<int>(col) % M;
        for (int kp = 0; kp < N; ++kp)
            for (int lp = 0; lp < M; ++lp)
            {
                cd acc{0.0, 0.0};
                for (std::size_t i = 0; i < paths.size(); ++i)
                {
                    const auto &t = tables[i];
                    const int dl = lp - l + M - 1;
                    acc += paths[i].h * t.phase_l[lp] * t.dopp[kp - k + N - 1] * t.cross(kp, dl) * t.delay[dl];
                }
                H(kp * M + lp, static_cast<Eigen::Index>(col)) = acc / static_cast<double>(MN);
            }
    });
    return {p, std::move(H)};
}

namespace
{
ComplexMatrix same_l_structure(const DDGridParams &p, double diag, double off)
{
    const int M = p.M();
    const int N = p.N();
    ComplexMatrix K = ComplexMatrix::Zero(p.MN(), p.MN());
    for (int l = 0; l < M; ++l)
        for (int kp = 0; kp < N; ++kp)
            for (int k = 0; k < N; ++k)
                K(kp * M + l, k * M + l) = (kp == k) ? diag : off;
    return K;
}
} // namespace

ComplexMatrix NoiseModel::inverse() const
{
    const double N = params.N();
    return same_l_structure(params, 1.0 - 1.0 / (2.0 * N), -1.0 / (2.0 * N));
}

ComplexMatrix NoiseModel::inverse_sqrt() const
{
    const double N = params.N();
    const double c = (1.0 / std::sqrt(2.0) - 1.0) / N;
    return same_l_structure(params, 1.0 + c, c);
}

NoiseModel noise_covariance(const DDGridParams &p, std::uint64_t seed)
{
    const double N = p.N();
    return {p, same_l_structure(p, 1.0 + 1.0 / N, 1.0 / N), seed};
}

ComplexMatrix zak_noise_draw(const DDGridParams &p, Rng &rng)
{
    const int M = p.M();
    const int N = p.N();
    // Per-component standard deviation for CN(0, M delta_f).
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * M * p.delta_f()));
    ComplexMatrix samples(N + 1, M);
    for (int n = 0; n <= N; ++n)
        for (int l = 0; l < M; ++l)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            samples(n, l) = cd(re, im);
        }
    ComplexMatrix F(N, N + 1);
    for (int k = 0; k < N; ++k)
        for (int n = 0; n <= N; ++n)
            F(k, n) = cexp_2pi(-static_cast<double>((static_cast<long long>(n) * k) % N) / N);
    return std::sqrt(p.T()) * F * samples;
}

ComplexMatrix zak_noise_draw(const NoiseModel &model, std::uint64_t index)
{
    Rng rng = make_rng(model.seed, index);
    return zak_noise_draw(model.params, rng);
}

BruteForceReceived brute_force_Y(const DDSymbols &x, const std::vector<ChannelPath> &paths, int P)
{
    const auto &p = x.params;
    if (P < 2)
        throw DomainError("brute_force_Y: P must be >= 2");
    for (const auto &path : paths)
        validate_path(path, p);
    const int M = p.M();
    const int N = p.N();
    const double T = p.T();
    const int half = P / 2;
    const auto y = [&](double t) {
        cd acc{0.0, 0.0};
        for (const auto &path : paths)
        {
            const double u = t - path.tau;
            cd xv{0.0, 0.0};
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < M; ++l)
                    if (x.x(k, l) != cd{0.0, 0.0})
                        xv += x.x(k, l) * eval_alpha(k, l, u, p);
            acc += path.h * xv * std::polar(1.0, 2.0 * pi * path.nu * u);
        }
        return acc;
    };
    ComplexMatrix full = ComplexMatrix::Zero(N, M);
    ComplexMatrix partial = ComplexMatrix::Zero(N, M);
    for (int n = -P; n <= N + P; ++n)
    {
        const bool inner = (n >= -half && n <= N + half);
        for (int lp = 0; lp < M; ++lp)
        {
            const cd v = y(static_cast<double>(lp) * T / M + n * T);
            for (int kp = 0; kp < N; ++kp)
            {
                const long long e = ((static_cast<long long>(n) * kp) % N + N) % N;
                const cd term = v * cexp_2pi(-static_cast<double>(e) / N);
                full(kp, lp) += term;
                if (inner)
                    partial(kp, lp) += term;
            }
        }
    }
    full *= std::sqrt(T);
    partial *= std::sqrt(T);
    BruteForceReceived out;
    out.tail_estimate = (full - partial).cwiseAbs().maxCoeff();
    out.Y = std::move(full);
    return out;
}

Eigen::VectorXcd vec_dd(const ComplexMatrix &grid)
{
    const ComplexMatrix t = grid.transpose();
    return Eigen::Map<const Eigen::VectorXcd>(t.data(), t.size());
}

ComplexMatrix unvec_dd(const Eigen::VectorXcd &v, int N, int M)
{
    if (v.size() != static_cast<Eigen::Index>(N) * M)
        throw DomainError("unvec_dd: size mismatch");
    return Eigen::Map<const ComplexMatrix>(v.data(), M, N).transpose();
}

ComplexMatrix sample_received_dd(const DDSymbols &x, const EffectiveChannel &channel,
                                 const std::optional<ComplexMatrix> &noise)
{
    const auto &p = x.params;
    if (!(channel.params == p) || channel.Htilde.rows() != p.MN() || channel.Htilde.cols() != p.MN())
        throw DomainError("sample_received_dd: channel dimensions do not match symbols");
    const Eigen::VectorXcd yv = std::sqrt(static_cast<double>(p.MN())) * (channel.Htilde * vec_dd(x.x));
    ComplexMatrix Y = unvec_dd(yv, p.N(), p.M());
    if (noise)
    {
        if (noise->rows() != p.N() || noise->cols() != p.M())
            throw DomainError("sample_received_dd: noise grid must be N x M");
        Y += *noise;
    }
    return Y;
}

} // namespace ddmod
