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

#include "ddmod/modem.hpp"

#include <cmath>

#include "ddmod/basis.hpp"

namespace ddmod
{
namespace
{
// F(r, c) = e^{j 2 pi sign r c / n}
ComplexMatrix dft_matrix(int n, int sign)
{
    ComplexMatrix F(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            F(r, c) = cexp_2pi(sign * static_cast<double>((static_cast<long long>(r) * c) % n) / n);
    return F;
}
} // namespace

TFSymbols isfft(const DDSymbols &x)
{
    const auto &p = x.params;
    return TFSymbols(p, dft_matrix(p.N(), +1) * x.x * dft_matrix(p.M(), -1));
}

DDSymbols sfft(const TFSymbols &X)
{
    const auto &p = X.params;
    ComplexMatrix out = dft_matrix(p.N(), -1) * X.X * dft_matrix(p.M(), +1);
    out /= static_cast<double>(p.MN());
    return DDSymbols(p, std::move(out));
}

TDSamples otfs_modulate(const DDSymbols &x)
{
    const auto &p = x.params;
    const int M = p.M();
    const int N = p.N();
    const TFSymbols X = isfft(x);
    // Row n of X times the inverse DFT matrix gives block n.
    const ComplexMatrix blocks = X.X * dft_matrix(M, +1) / std::sqrt(static_cast<double>(p.MN()) * p.T());
    Eigen::VectorXcd samples(static_cast<Eigen::Index>(M) * N);
    for (int n = 0; n < N; ++n)
        samples.segment(static_cast<Eigen::Index>(n) * M, M) = blocks.row(n).transpose();
    return TDSamples(p, 0, std::move(samples));
}

cd otfs_waveform(const TFSymbols &X, double t)
{
    const auto &p = X.params;
    const double T = p.T();
    if (!(t >= 0.0 && t < p.N() * T))
        return {0.0, 0.0};
    const int n = std::min(p.N() - 1, static_cast<int>(std::floor(t / T)));
    const double u = (t - n * T) / T;
    cd acc{0.0, 0.0};
    for (int m = 0; m < p.M(); ++m)
        acc += X.X(n, m) * cexp_2pi(m * u);
    return acc / std::sqrt(static_cast<double>(p.MN()) * T);
}

TDSamples dd_modulate(const DDSymbols &x, int P)
{
    if (P < 0)
        throw DomainError("dd_modulate: P must be >= 0");
    const auto &p = x.params;
    const int M = p.M();
    const int N = p.N();
    const std::int64_t blocks = N + 2 * static_cast<std::int64_t>(P);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(blocks * M);
    const double Ts = p.sample_period();
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < M; ++l)
        {
            const cd c = x.x(k, l);
            if (c == cd{0.0, 0.0})
                continue;
            for (std::int64_t q = 0; q < v.size(); ++q)
                v(q) += c * eval_alpha(k, l, static_cast<double>(q - static_cast<std::int64_t>(P) * M) * Ts, p);
        }
    return TDSamples(p, -P, std::move(v));
}

DDWaveform::DDWaveform(const DDSymbols &x) : params_(x.params)
{
    const int N = params_.N();
    ComplexMatrix A(N, N);
    for (int n = 0; n < N; ++n)
        for (int k = 0; k < N; ++k)
            A(n, k) = cexp_2pi(static_cast<double>((static_cast<long long>(n) * k) % N) / N);
    c_ = A * x.x;
}

cd DDWaveform::operator()(double t) const
{
    const int M = params_.M();
    const int N = params_.N();
    const double T = params_.T();
    const double W = M * params_.delta_f();
    cd acc{0.0, 0.0};
    for (int n = 0; n < N; ++n)
        for (int l = 0; l < M; ++l)
        {
            const double arg = W * (t - n * T) - l;
            acc += c_(n, l) * cexp_2pi(0.5 * arg) * sinc(arg);
        }
    return std::sqrt(T / params_.MN()) * W * acc;
}

ModulationMismatch modulation_mismatch(const DDSymbols &x, int oversample)
{
    if (oversample < 1)
        throw DomainError("modulation_mismatch: oversample must be >= 1");
    const auto &p = x.params;
    const DDWaveform dd(x);
    const TFSymbols X = isfft(x);
    const std::int64_t total = static_cast<std::int64_t>(p.MN()) * oversample;
    const double dt = p.sample_period() / oversample;
    double diff2 = 0.0;
    double ref2 = 0.0;
    double dd2 = 0.0;
    for (std::int64_t i = 0; i < total; ++i)
    {
        const double t = (static_cast<double>(i) + 0.5) * dt;
        const cd a = dd(t);
        const cd b = otfs_waveform(X, t);
        diff2 += std::norm(a - b);
        ref2 += std::norm(b);
        dd2 += std::norm(a);
    }
    ModulationMismatch out;
    out.in_window_energy = dd2 * dt;
    out.out_of_window_energy = std::max(0.0, x.x.squaredNorm() - out.in_window_energy);
    out.relative_l2 = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : 0.0;
    return out;
}

double gamma_fraction(int zeta, int M)
{
    if (zeta < 1)
        throw DomainError("gamma_fraction: zeta must be >= 1");
    if (M < 2 * zeta)
        throw DomainError("gamma_fraction: M must be >= 2 zeta");
    const auto I = [](int z) { return sinc_sq_integral(-z, z); };
    double corr = 0.0;
    for (int i = 1; i <= zeta - 1; ++i)
        corr += I(i);
    return (static_cast<double>(M + 1 - 2 * zeta) / M) * I(zeta) + (2.0 / M) * corr;
}

std::vector<double> xn_window_fractions(const DDSymbols &x, int oversample)
{
    if (oversample < 2 || oversample % 2 != 0)
        throw DomainError("xn_window_fractions: oversample must be even and >= 2");
    const auto &p = x.params;
    const int M = p.M();
    const int N = p.N();
    const double T = p.T();
    const double W = M * p.delta_f();
    const DDWaveform dd(x);
    const ComplexMatrix &c = dd.coefficients();
    const int intervals = M * oversample;
    const double h = T / intervals;
    std::vector<double> out(N);
    for (int n = 0; n < N; ++n)
    {
        double acc = 0.0;
        for (int i = 0; i <= intervals; ++i)
        {
            const double t = i * h;
            cd v{0.0, 0.0};
            for (int l = 0; l < M; ++l)
            {
                const double arg = W * t - l;
                v += c(n, l) * cexp_2pi(0.5 * arg) * sinc(arg);
            }
            const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * std::norm(W * v);
        }
        const double inside = acc * h / 3.0;
        const double totalE = W * c.row(n).squaredNorm();
        out[n] = totalE > 0.0 ? inside / totalE : 1.0;
    }
    return out;
}

} // namespace ddmod
