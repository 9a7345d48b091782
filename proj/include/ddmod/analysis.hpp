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
#include <vector>

#include "ddmod/channel.hpp"

namespace ddmod
{
// C = log2 det(I + rho Htilde^H Ktilde^{-1} Htilde) / MN in bits/s/Hz.
// The noise is whitened with the closed-form Ktilde^{-1/2}, so no factorization of Ktilde is needed.
double spectral_efficiency(const EffectiveChannel &channel, const NoiseModel &noise, double rho);

// Same quantity for several SNRs, sharing the Gram matrix.
std::vector<double> spectral_efficiency(const EffectiveChannel &channel, const NoiseModel &noise,
                                        const std::vector<double> &rhos);

// Size of the smallest index set holding at least `threshold` of the total of the non-negative
// values. Taking the largest entries first is optimal.
std::size_t min_cover_count(std::vector<double> values, double threshold);

struct InterferenceProfile
{
    DDGridParams params;
    int k = 0;
    int l = 0;
    double tau = 0.0;
    double nu = 0.0;
    // |htilde / h|^2 for a unit-gain path, N x M indexed (k', l').
    Eigen::MatrixXd Rsq;
    // (|B| - 1) / (MN - 1).
    double fraction = 0.0;
};

// Rsq[k', l'] = D_N^2((k' - k) / N - nu T) D_M^2((l' - l) / M - tau / T) / (MN)^2.
InterferenceProfile interference_profile(int k, int l, double tau, double nu, const DDGridParams &p,
                                         double threshold = 0.99);

// (2M + 2N - 5) / (MN - 1).
double rough_interference_estimate(int M, int N);

struct SweepRow
{
    int N = 0;
    int k = 0;
    double nu_over_df = 0.0;
    double mean_fraction = 0.0;
};

struct SweepSettings
{
    int M = 45;
    std::vector<int> N_list{23, 46, 92};
    // One source Doppler index per entry of N_list; empty selects N / 2.
    std::vector<int> k_list;
    // Source delay index; negative selects (M + 1) / 2.
    int l = -1;
    // Doppler offsets nu' / delta_f.
    std::vector<double> nu_over_df;
    // tau' M delta_f is averaged over tau_points midpoints of [0, tau_max].
    int tau_points = 64;
    double tau_max = 0.5;
    double threshold = 0.99;
    double T = 1.0;
};

// Uniform grid of `count` points over [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

// Mean interference fraction for every (N, nu') pair, in N_list-major order.
std::vector<SweepRow> interference_sweep(const SweepSettings &s, unsigned threads = 1);

// Column k of the CP-OFDM channel:
// H[m, k] = h e^{-j 2 pi (tau / T)(nu T + k)} e^{j pi (nu T + k - m)} sinc(nu T + k - m), m = 0..M-1.
Eigen::VectorXcd ofdm_channel_column(int k, double tau, double nu, int M, double T, cd h = {1.0, 0.0});

// (|G_k| - 1) / (M - 1) at the given energy threshold.
double ofdm_interference(int k, double tau, double nu, int M, double T, double threshold = 0.99);

struct AvionicsConfig
{
    double Kf_dB = 15.0;
    double tau2 = 33e-6;
    double theta_deg = 3.5;
    double fc = 5.06e9;
    std::vector<double> speeds{50.0, 100.0, 150.0, 200.0, 250.0};
    std::vector<double> rho_dB{10.0, 20.0};
    int draws = 20;
    std::uint64_t seed = 1;
    int M = 45;
    int N = 46;
    double delta_f = 2000.0;
};

inline constexpr double kSpeedOfLight = 3e8;

struct AvionicsRow
{
    double speed = 0.0;
    double rho_dB = 0.0;
    double mean_se = 0.0;
    // Standard error of the mean over draws.
    double std_error = 0.0;
};

// Two-path channel of one draw: direct path (sqrt(Kf / (Kf + 1)), 0, v fc / c) and
// scattered path (h2 ~ CN(0, 1 / (Kf + 1)), tau2, (v fc / c) cos(pi - theta U)), U ~ U[0, 1].
// Draw `d` uses substream d of the seed, so all speeds share the same (h2, U) draws.
std::vector<ChannelPath> avionics_paths(const AvionicsConfig &cfg, double speed, int draw);

// Mean spectral efficiency per (speed, rho), speed-major order. Cells (speed, draw) run in parallel.
std::vector<AvionicsRow> avionics_se_sweep(const AvionicsConfig &cfg, unsigned threads = 1);

double db_to_linear(double dB);

} // namespace ddmod
