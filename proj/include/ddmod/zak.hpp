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

#include "ddmod/grid.hpp"

namespace ddmod
{
// Z[l,k] = sqrt(T) sum_n x[nM + l] e^{-j 2 pi n k / N}, summed over every block present,
// with n the absolute block index.
ZakGrid discrete_zak(const TDSamples &x);

// x[nM + l] = 1 / (sqrt(T) N) sum_k Z[l,k] e^{j 2 pi n k / N} for `blocks` blocks starting at start_block.
TDSamples inverse_zak(const ZakGrid &Z, std::int64_t blocks, std::int64_t start_block = 0);

// Fourier transform of the signal represented by Z at frequency f (Hz).
// Riemann sum over the M delay bins of Z(tau, f) e^{-j 2 pi f tau} / sqrt(T). For f off the Doppler
// lattice, Z(tau, f) is interpolated exactly under the assumption that the signal occupies blocks
// 0..N-1, which makes the result the DTFT of those samples scaled by T / M.
cd zak_to_fourier(const ZakGrid &Z, double f);

// Z at (tau, nu) on the lattice (l T / M + n T, k delta_f / N + m delta_f), using
// Z(tau + nT, nu) = e^{j 2 pi nu n T} Z(tau, nu) and Z(tau, nu + delta_f) = Z(tau, nu).
// Throws DomainError for queries further than 1e-9 (relative) from a lattice point.
cd quasi_extend(const ZakGrid &Z, double tau, double nu);

// Same lookup with integer lattice coordinates tau = u T / M, nu = v delta_f / N.
cd quasi_extend_index(const ZakGrid &Z, std::int64_t u, std::int64_t v);

// Zak grid of x(t - tau0) e^{j 2 pi nu0 (t - tau0)} with tau0 = l0 T / M and nu0 = k0 delta_f / N.
ZakGrid apply_dd_shift_grid(const ZakGrid &Z, std::int64_t l0, std::int64_t k0);

} // namespace ddmod
