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

#include "ddmod/zak.hpp"

#include <cmath>

namespace ddmod
{
namespace
{
std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t b)
{
    const std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

std::int64_t snap(double value, const char *what)
{
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9 * std::max(1.0, std::abs(r)))
        throw DomainError(std::string("quasi_extend: ") + what + " is off the lattice");
    return static_cast<std::int64_t>(r);
}
} // namespace

ZakGrid discrete_zak(const TDSamples &x)
{
    const auto &p = x.params;
    const int M = p.M();
    const int N = p.N();
    const std::int64_t B = x.blocks();
    if (B == 0)
        throw DomainError("discrete_zak: empty signal");
    ComplexMatrix Z = ComplexMatrix::Zero(M, N);
    Eigen::VectorXcd phase(N);
    for (std::int64_t b = 0; b < B; ++b)
    {
        const std::int64_t n = x.start_block + b;
        const std::int64_t nmod = pos_mod(n, N);
        for (int k = 0; k < N; ++k)
            phase(k) = cexp_2pi(-static_cast<double>(pos_mod(nmod * k, N)) / N);
        Z.noalias() += x.samples.segment(b * M, M) * phase.transpose();
    }
    Z *= std::sqrt(p.T());
    return ZakGrid(p, std::move(Z));
}

TDSamples inverse_zak(const ZakGrid &Z, std::int64_t blocks, std::int64_t start_block)
{
    if (blocks <= 0)
        throw DomainError("inverse_zak: blocks must be > 0");
    const auto &p = Z.params;
    const int M = p.M();
    const int N = p.N();
    Eigen::VectorXcd out(blocks * M);
    Eigen::VectorXcd phase(N);
    const double scale = 1.0 / (std::sqrt(p.T()) * N);
    for (std::int64_t b = 0; b < blocks; ++b)
    {
        const std::int64_t nmod = pos_mod(start_block + b, N);
        for (int k = 0; k < N; ++k)
            phase(k) = cexp_2pi(static_cast<double>(pos_mod(nmod * k, N)) / N);
        out.segment(b * M, M) = scale * (Z.values * phase);
    }
    return TDSamples(p, start_block, std::move(out));
}

cd zak_to_fourier(const ZakGrid &Z, double f)
{
    const auto &p = Z.params;
    const TDSamples x = inverse_zak(Z, p.N(), 0);
    const double Ts = p.sample_period();
    cd acc{0.0, 0.0};
    for (Eigen::Index q = 0; q < x.samples.size(); ++q)
        acc += x.samples(q) * cexp_2pi(-f * Ts * static_cast<double>(q));
    return Ts * acc;
}

cd quasi_extend_index(const ZakGrid &Z, std::int64_t u, std::int64_t v)
{
    const int M = Z.params.M();
    const int N = Z.params.N();
    const std::int64_t n = floor_div(u, M);
    const std::int64_t l = u - n * M;
    const std::int64_t k = pos_mod(v, N);
    // nu n T = v n / N with nu = v delta_f / N.
    const cd phase = cexp_2pi(static_cast<double>(pos_mod(v * pos_mod(n, N), N)) / N);
    return phase * Z.values(l, k);
}

cd quasi_extend(const ZakGrid &Z, double tau, double nu)
{
    const auto &p = Z.params;
    const std::int64_t u = snap(tau * p.M() / p.T(), "tau");
    const std::int64_t v = snap(nu * p.N() / p.delta_f(), "nu");
    return quasi_extend_index(Z, u, v);
}

ZakGrid apply_dd_shift_grid(const ZakGrid &Z, std::int64_t l0, std::int64_t k0)
{
    const auto &p = Z.params;
    const int M = p.M();
    const int N = p.N();
    const std::int64_t MN = static_cast<std::int64_t>(M) * N;
    ComplexMatrix out(M, N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < M; ++l)
        {
            // nu0 (tau - tau0) = k0 (l - l0) / (M N).
            const std::int64_t num = pos_mod(pos_mod(k0, MN) * pos_mod(l - l0, MN), MN);
            const cd ramp = cexp_2pi(static_cast<double>(num) / static_cast<double>(MN));
            out(l, k) = ramp * quasi_extend_index(Z, l - l0, k - k0);
        }
    return ZakGrid(p, std::move(out));
}

} // namespace ddmod
