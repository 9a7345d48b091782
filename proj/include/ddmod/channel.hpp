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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddmod/grid.hpp"
#include "ddmod/rng.hpp"

namespace ddmod
{
// One propagation path: gain h, delay tau in [0, T), Doppler nu (any sign).
struct ChannelPath
{
    cd h{1.0, 0.0};
    double tau = 0.0;
    double nu = 0.0;
};

void validate_path(const ChannelPath &path, const DDGridParams &p);

// Htilde(k' M + l', k M + l) = htilde[k', l', k, l].
struct EffectiveChannel
{
    DDGridParams params;
    ComplexMatrix Htilde;
};

// Exact closed form of the effective DD channel. Columns are assembled in parallel.
EffectiveChannel effective_dd_channel(const std::vector<ChannelPath> &paths, const DDGridParams &p,
                                      unsigned threads = 1);

// Covariance of the sampled DD noise, normalized by MN:
// 1 + 1/N on the diagonal, 1/N between different k at the same l, 0 across different l.
struct NoiseModel
{
    DDGridParams params;
    ComplexMatrix Ktilde;
    std::uint64_t seed = 0;

    // I - J / (2N) on every same-l index set.
    ComplexMatrix inverse() const;
    // Hermitian square root of inverse(): I + (1/sqrt(2) - 1) J / N on every same-l index set.
    ComplexMatrix inverse_sqrt() const;
};

NoiseModel noise_covariance(const DDGridParams &p, std::uint64_t seed = 0);

// One N x M noise grid Z[k', l'] = sqrt(T) sum_{n'=0}^{N} n(n' T + l' T / M) e^{-j 2 pi n' k' / N},
// with n(t) samples i.i.d. circular complex Gaussian of variance M delta_f.
ComplexMatrix zak_noise_draw(const DDGridParams &p, Rng &rng);

// Noise grid for draw `index` of the model's seed.
ComplexMatrix zak_noise_draw(const NoiseModel &model, std::uint64_t index);

struct BruteForceReceived
{
    // N x M grid indexed (k', l').
    ComplexMatrix Y;
    // max |Y_P - Y_{P/2}|: magnitude of the truncated tail.
    double tail_estimate = 0.0;
};

// Y[k', l'] = sqrt(T) sum_{n'=-P}^{N+P} y(l' T / M + n' T) e^{-j 2 pi n' k' / N} with the noise-free
// y(t) = sum_i h_i x(t - tau_i) e^{j 2 pi nu_i (t - tau_i)} and x(t) evaluated through eval_alpha.
BruteForceReceived brute_force_Y(const DDSymbols &x, const std::vector<ChannelPath> &paths, int P = 256);

// Y = sqrt(MN) Htilde vec(x) + Z, reshaped to N x M. vec index is k M + l.
ComplexMatrix sample_received_dd(const DDSymbols &x, const EffectiveChannel &channel,
                                 const std::optional<ComplexMatrix> &noise = std::nullopt);

// Row-major flattening of an N x M grid (index k M + l) and its inverse.
Eigen::VectorXcd vec_dd(const ComplexMatrix &grid);
ComplexMatrix unvec_dd(const Eigen::VectorXcd &v, int N, int M);

} // namespace ddmod
