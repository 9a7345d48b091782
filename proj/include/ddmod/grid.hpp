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

#include <cmath>
#include <cstdint>

#include "ddmod/numerics.hpp"

namespace ddmod
{
// Delay-Doppler lattice: period T, subcarrier spacing delta_f = 1 / T, M delay bins, N Doppler bins.
class DDGridParams
{
  public:
    DDGridParams(double T, int M, int N) : T_(T), delta_f_(1.0 / T), M_(M), N_(N)
    {
        if (!(T > 0.0) || !std::isfinite(T))
            throw DomainError("DDGridParams: T must be positive and finite");
        if (M < 1 || N < 1)
            throw DomainError("DDGridParams: M and N must be >= 1");
    }

    static DDGridParams from_delta_f(double delta_f, int M, int N)
    {
        if (!(delta_f > 0.0) || !std::isfinite(delta_f))
            throw DomainError("DDGridParams: delta_f must be positive and finite");
        return DDGridParams(1.0 / delta_f, M, N);
    }

    double T() const { return T_; }
    double delta_f() const { return delta_f_; }
    int M() const { return M_; }
    int N() const { return N_; }
    int MN() const { return M_ * N_; }
    double sample_period() const { return T_ / M_; }

    bool operator==(const DDGridParams &o) const { return T_ == o.T_ && M_ == o.M_ && N_ == o.N_; }

  private:
    double T_;
    double delta_f_;
    int M_;
    int N_;
};

// Critically sampled signal. samples(p) is the value at t = (start_block * M + p) T / M.
struct TDSamples
{
    DDGridParams params;
    std::int64_t start_block = 0;
    Eigen::VectorXcd samples;

    TDSamples(const DDGridParams &p, std::int64_t n0, Eigen::VectorXcd s) : params(p), start_block(n0), samples(std::move(s))
    {
        if (samples.size() % params.M() != 0)
            throw DomainError("TDSamples: length must be a multiple of M");
    }

    std::int64_t blocks() const { return samples.size() / params.M(); }
};

// Zak samples on the fundamental cell. values(l, k) = Z(l T / M, k delta_f / N), an M x N matrix.
struct ZakGrid
{
    DDGridParams params;
    ComplexMatrix values;

    ZakGrid(const DDGridParams &p, ComplexMatrix v) : params(p), values(std::move(v))
    {
        if (values.rows() != params.M() || values.cols() != params.N())
            throw DomainError("ZakGrid: values must be M x N");
    }
};

// DD-domain grid indexed (k, l): N rows (Doppler), M columns (delay).
struct DDSymbols
{
    DDGridParams params;
    ComplexMatrix x;

    DDSymbols(const DDGridParams &p, ComplexMatrix v) : params(p), x(std::move(v))
    {
        if (x.rows() != params.N() || x.cols() != params.M())
            throw DomainError("DDSymbols: grid must be N x M");
    }

    static DDSymbols zeros(const DDGridParams &p) { return DDSymbols(p, ComplexMatrix::Zero(p.N(), p.M())); }
};

} // namespace ddmod
