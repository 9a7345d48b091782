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

#include <vector>

#include "ddmod/grid.hpp"

namespace ddmod
{
// Time-frequency grid indexed (n, m): N rows (symbol time), M columns (subcarrier).
struct TFSymbols
{
    DDGridParams params;
    ComplexMatrix X;

    TFSymbols(const DDGridParams &p, ComplexMatrix v) : params(p), X(std::move(v))
    {
        if (X.rows() != params.N() || X.cols() != params.M())
            throw DomainError("TFSymbols: grid must be N x M");
    }
};

// X[n,m] = sum_{k,l} x[k,l] e^{j 2 pi (n k / N - m l / M)}, unnormalized.
TFSymbols isfft(const DDSymbols &x);

// Inverse of isfft: x[k,l] = 1 / (MN) sum_{n,m} X[n,m] e^{-j 2 pi (n k / N - m l / M)}.
DDSymbols sfft(const TFSymbols &X);

// OTFS with the rectangular pulse g(t) = 1 / sqrt(T) on [0, T), scaled by 1 / sqrt(MN) so that
// the map from symbols to waveform is unitary. Critical samples over blocks 0..N-1:
// x[nM + l] = 1 / sqrt(MNT) sum_m X[n,m] e^{j 2 pi m l / M}.
TDSamples otfs_modulate(const DDSymbols &x);

// Continuous OTFS waveform at time t; zero outside [0, NT).
cd otfs_waveform(const TFSymbols &X, double t);

// x(t) = sum_{k,l} x[k,l] alpha_(k,l)(t) sampled over blocks -P .. N-1+P by direct evaluation.
TDSamples dd_modulate(const DDSymbols &x, int P);

// Continuous DD waveform at time t, using
// x(t) = sqrt(T / MN) sum_{n,l} c[n,l] s(t - l T / M - n T) with c[n,l] = sum_k x[k,l] e^{j 2 pi n k / N}.
class DDWaveform
{
  public:
    explicit DDWaveform(const DDSymbols &x);
    cd operator()(double t) const;
    const ComplexMatrix &coefficients() const { return c_; }

  private:
    DDGridParams params_;
    ComplexMatrix c_;
};

struct ModulationMismatch
{
    // ||x_dd - x_otfs|| / ||x_otfs|| in L2 over [0, NT).
    double relative_l2 = 0.0;
    // Energy of x_dd inside [0, NT).
    double in_window_energy = 0.0;
    // Energy of x_dd outside [0, NT): sum |x|^2 minus the in-window part (the alpha are orthonormal).
    double out_of_window_energy = 0.0;
};

// Compares the two modulators in continuous time. At the critical sampling instants they coincide,
// so the L2 norms are evaluated with a midpoint rule at `oversample` points per sample period.
ModulationMismatch modulation_mismatch(const DDSymbols &x, int oversample = 16);

// gamma(zeta, M) = ((M + 1 - 2 zeta) / M) I(zeta) + (2 / M) sum_{i=1}^{zeta-1} I(i),
// I(z) the integral of sinc^2 over [-z, z]. Throws DomainError unless zeta >= 1 and M >= 2 zeta.
double gamma_fraction(int zeta, int M);

// For each n, the fraction of the energy of x_n(t) = sum_l c[n,l] s(t - l T / M) inside [0, T).
// In-window energy by composite Simpson at `oversample` intervals per sample period.
std::vector<double> xn_window_fractions(const DDSymbols &x, int oversample = 32);

} // namespace ddmod
