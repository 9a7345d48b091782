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

#include <memory>
#include <utility>
#include <vector>

#include "ddmod/grid.hpp"

namespace ddmod
{
// Point (tau0, nu0) of the fundamental cell [0, T) x [0, delta_f).
struct PulseAnchor
{
    double tau0 = 0.0;
    double nu0 = 0.0;
};

// Throws DomainError unless 0 <= tau0 < T and 0 <= nu0 < delta_f.
void validate_anchor(const PulseAnchor &a, const DDGridParams &p);

// Anchor of alpha_(k,l): (l T / M, k delta_f / N).
PulseAnchor lattice_anchor(int k, int l, const DDGridParams &p);

// q(t): indicator of [0, NT).
cd eval_q(double t, const DDGridParams &p);

// s(t) = e^{j pi M df t} M df sinc(M df t): the ideal pulse band-limited to [0, M df).
cd eval_s(double t, const DDGridParams &p);

// psi(t) = sqrt(T) sum_{n=0}^{N-1} e^{j 2 pi nu0 n T} s(t - tau0 - n T).
cd eval_psi(const PulseAnchor &a, double t, const DDGridParams &p);

// alpha_(k,l)(t) = psi(t) / sqrt(MN) at the lattice anchor of (k, l).
cd eval_alpha(int k, int l, double t, const DDGridParams &p);

// Closed-form Zak transforms of q and s. Floors are toward -infinity.
cd zak_q(double tau, double nu, const DDGridParams &p);
cd zak_s(double tau, double nu, const DDGridParams &p);

// Z_psi(tau, nu) = Z_q(tau0, nu - nu0) Z_s(tau - tau0, nu).
cd zak_psi(const PulseAnchor &a, double tau, double nu, const DDGridParams &p);

enum class SignalKind
{
    q,
    s,
    psi,
    alpha,
    superposition
};

// Continuous-time signal with an exact pointwise evaluator.
// The Dirac train underlying psi has no pointwise values and is never represented here.
class AnalyticSignal
{
  public:
    static AnalyticSignal q(const DDGridParams &p);
    static AnalyticSignal s(const DDGridParams &p);
    static AnalyticSignal psi(const PulseAnchor &a, const DDGridParams &p);
    static AnalyticSignal alpha(int k, int l, const DDGridParams &p);
    // sum_i c_i x_i(t). An empty list is the zero signal.
    static AnalyticSignal superposition(const DDGridParams &p, std::vector<std::pair<cd, AnalyticSignal>> terms);

    cd operator()(double t) const;

    SignalKind kind() const { return kind_; }
    const DDGridParams &params() const { return params_; }
    const PulseAnchor &anchor() const { return anchor_; }
    int k() const { return k_; }
    int l() const { return l_; }

  private:
    AnalyticSignal(SignalKind kind, const DDGridParams &p) : kind_(kind), params_(p) {}

    SignalKind kind_;
    DDGridParams params_;
    PulseAnchor anchor_{};
    int k_ = 0;
    int l_ = 0;
    std::shared_ptr<const std::vector<std::pair<cd, AnalyticSignal>>> terms_;
};

// Truncated Zak value sqrt(T) sum_{n=-P}^{N-1+P} x(tau0 + nT) e^{-j 2 pi nu0 n T}.
// Exact for signals supported on [0, NT); the sinc-tailed kinds converge as O(1/P).
cd basis_coefficient(const AnalyticSignal &x, const PulseAnchor &a, int P = 256);

// <alpha_(k1,l1), alpha_(k2,l2)> evaluated in closed form from the finite-support spectra.
cd alpha_inner_product(int k1, int l1, int k2, int l2, const DDGridParams &p);

// MN x MN Gram matrix, row/column index k M + l.
ComplexMatrix alpha_gram(const DDGridParams &p, unsigned threads = 1);

// Critical samples of x over blocks first_block .. first_block + blocks - 1.
TDSamples sample_signal(const AnalyticSignal &x, std::int64_t first_block, std::int64_t blocks);

} // namespace ddmod
