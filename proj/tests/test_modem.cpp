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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "ddmod/basis.hpp"
#include "ddmod/modem.hpp"
#include "ddmod/rng.hpp"

using namespace ddmod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
const cd J{0.0, 1.0};

DDSymbols random_symbols(const DDGridParams &p, Rng &rng)
{
    std::normal_distribution<double> g;
    ComplexMatrix x(p.N(), p.M());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = cd(g(rng), g(rng));
    return DDSymbols(p, x);
}

DDSymbols qpsk_symbols(const DDGridParams &p, Rng &rng)
{
    std::bernoulli_distribution bit;
    ComplexMatrix x(p.N(), p.M());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = cd(bit(rng) ? 1.0 : -1.0, bit(rng) ? 1.0 : -1.0) / std::sqrt(2.0);
    return DDSymbols(p, x);
}
} // namespace

TEST_CASE("isfft examples", "[modem]")
{
    const DDGridParams p(1.0, 3, 4);
    DDSymbols x = DDSymbols::zeros(p);
    x.x(0, 0) = 1.0;
    CHECK((isfft(x).X - ComplexMatrix::Ones(4, 3)).cwiseAbs().maxCoeff() < 1e-15);
    x.x.setZero();
    x.x(1, 0) = 1.0;
    const TFSymbols X = isfft(x);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(X.X(n, m) - std::exp(2.0 * pi * J * (n / 4.0))) < 1e-14);
}

TEST_CASE("isfft energy and inverse", "[modem][property]")
{
    const DDGridParams p(1.0, 3, 4);
    Rng rng = make_rng(10, 0);
    for (int trial = 0; trial < 5; ++trial)
    {
        const DDSymbols x = random_symbols(p, rng);
        const TFSymbols X = isfft(x);
        CHECK_THAT(X.X.squaredNorm(), WithinRel(p.MN() * x.x.squaredNorm(), 1e-12));
        CHECK((sfft(X).x - x.x).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("otfs_modulate matches the direct waveform formula", "[modem]")
{
    const DDGridParams p(0.5, 2, 2);
    DDSymbols x = DDSymbols::zeros(p);
    x.x(0, 0) = 1.0;
    const TDSamples s = otfs_modulate(x);
    // Only subcarrier terms m with X = 1: x(t) = 1 / sqrt(MNT) sum_m e^{j 2 pi m df (t - nT)}.
    for (int q = 0; q < 4; ++q)
    {
        const int n = q / 2, l = q % 2;
        cd direct{0.0, 0.0};
        for (int m = 0; m < 2; ++m)
            direct += std::exp(2.0 * pi * J * (m * p.delta_f() * (l * p.T() / 2)));
        direct /= std::sqrt(4 * p.T());
        (void)n;
        CHECK(std::abs(s.samples(q) - direct) < 1e-14);
    }

    const DDGridParams p2(0.7, 5, 3);
    Rng rng = make_rng(11, 0);
    const DDSymbols y = random_symbols(p2, rng);
    const TDSamples sy = otfs_modulate(y);
    const TFSymbols Y = isfft(y);
    for (int q = 0; q < 15; ++q)
        CHECK(std::abs(sy.samples(q) - otfs_waveform(Y, q * p2.T() / 5)) < 1e-12);
}

TEST_CASE("otfs_modulate is linear and unitary", "[modem][property]")
{
    const DDGridParams p(0.7, 5, 3);
    Rng rng = make_rng(12, 0);
    const DDSymbols a = random_symbols(p, rng), b = random_symbols(p, rng);
    const cd ca{1.5, -0.5}, cb{-0.2, 2.0};
    const TDSamples lhs = otfs_modulate(DDSymbols(p, ca * a.x + cb * b.x));
    const Eigen::VectorXcd rhs = ca * otfs_modulate(a).samples + cb * otfs_modulate(b).samples;
    CHECK((lhs.samples - rhs).cwiseAbs().maxCoeff() < 1e-12);

    const double e = otfs_modulate(a).samples.squaredNorm() * p.T() / p.M();
    CHECK_THAT(e, WithinRel(a.x.squaredNorm(), 1e-9));

    // Orthogonal symbol grids give orthogonal waveforms.
    DDSymbols u = DDSymbols::zeros(p), v = DDSymbols::zeros(p);
    u.x(0, 1) = 1.0;
    v.x(2, 4) = 1.0;
    CHECK(std::abs(otfs_modulate(u).samples.dot(otfs_modulate(v).samples)) < 1e-12);
}

TEST_CASE("dd_modulate", "[modem]")
{
    const DDGridParams p(1.0, 4, 3);
    const int P = 8;
    DDSymbols x = DDSymbols::zeros(p);
    CHECK(dd_modulate(x, P).samples.cwiseAbs().maxCoeff() == 0.0);
    x.x(2, 1) = 1.0;
    const TDSamples s = dd_modulate(x, P);
    CHECK(s.start_block == -P);
    for (Eigen::Index q = 0; q < s.samples.size(); ++q)
        CHECK(s.samples(q) == eval_alpha(2, 1, static_cast<double>(q - P * 4) * p.T() / 4, p));

    Rng rng = make_rng(13, 0);
    const DDSymbols r = random_symbols(p, rng);
    const TDSamples sr = dd_modulate(r, 64);
    const double e = sr.samples.squaredNorm() * p.T() / p.M();
    CHECK_THAT(e, WithinRel(r.x.squaredNorm(), 5e-3));
    CHECK_THROWS_AS(dd_modulate(r, -1), DomainError);
}

TEST_CASE("DD and OTFS waveforms coincide at the critical sampling instants", "[modem]")
{
    const DDGridParams p(1.0, 6, 4);
    Rng rng = make_rng(14, 0);
    const DDSymbols x = random_symbols(p, rng);
    const TDSamples dd = dd_modulate(x, 0);
    const TDSamples ot = otfs_modulate(x);
    CHECK((dd.samples - ot.samples).cwiseAbs().maxCoeff() < 1e-12);
    const DDWaveform w(x);
    for (int q = 0; q < 24; q += 5)
        CHECK(std::abs(w(q * p.T() / 6) - dd.samples(q)) < 1e-12);
}

TEST_CASE("modulation_mismatch", "[modem]")
{
    const DDGridParams p0(1.0, 4, 4);
    CHECK(modulation_mismatch(DDSymbols::zeros(p0), 4).relative_l2 == 0.0);

    // Fixed QPSK grid per M, N = 8. Frozen values: 0.49895, 0.29652, 0.25572, 0.17670.
    const std::vector<double> frozen{0.49895, 0.29652, 0.25572, 0.17670};
    std::vector<double> values;
    for (int M : {8, 16, 32, 64})
    {
        const DDGridParams p(1.0, M, 8);
        Rng rng = make_rng(2024, static_cast<std::uint64_t>(M));
        const DDSymbols x = qpsk_symbols(p, rng);
        const auto mm = modulation_mismatch(x, 8);
        values.push_back(mm.relative_l2);
        CHECK(mm.out_of_window_energy > 0.0);
        CHECK_THAT(mm.in_window_energy + mm.out_of_window_energy, WithinRel(x.x.squaredNorm(), 1e-12));
        CHECK_THAT(mm.relative_l2, WithinAbs(frozen[values.size() - 1], 5e-5));
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        CHECK(values[i] < values[i - 1]);
    CHECK(values.back() < 0.2);
}

TEST_CASE("gamma_fraction", "[modem]")
{
    const double I1 = sinc_sq_integral(-1.0, 1.0);
    for (int M : {2, 10, 45})
        CHECK_THAT(gamma_fraction(1, M), WithinRel((M - 1.0) / M * I1, 1e-14));
    for (int zeta : {1, 2, 3})
        CHECK_THAT(gamma_fraction(zeta, 1000000), WithinAbs(sinc_sq_integral(-zeta, zeta), 1e-5));
    CHECK_THROWS_AS(gamma_fraction(3, 5), DomainError);
    CHECK_THROWS_AS(gamma_fraction(0, 5), DomainError);
    const double g = gamma_fraction(2, 45);
    CHECK(g > 0.0);
    CHECK(g < 1.0);
}

TEST_CASE("x_n energy inside [0, T) versus gamma", "[modem][property]")
{
    const int M = 45;
    const DDGridParams p(1.0, M, 4);
    // Equal-weight average of the per-term fractions: the quantity gamma bounds.
    double avg = 0.0;
    for (int l = 0; l < M; ++l)
        avg += sinc_sq_integral(-l, M - l) / M;
    for (int zeta = 1; zeta <= M / 2; ++zeta)
        CHECK(avg >= gamma_fraction(zeta, M));

    // Random grids: the mean over draws approaches the average above; zeta = 2 holds per draw.
    Rng rng = make_rng(15, 0);
    double mean = 0.0;
    int count = 0;
    for (int trial = 0; trial < 16; ++trial)
        for (double f : xn_window_fractions(random_symbols(p, rng), 16))
        {
            CHECK(f >= gamma_fraction(2, M));
            CHECK(f <= 1.0);
            mean += f;
            ++count;
        }
    mean /= count;
    CHECK_THAT(mean, WithinAbs(avg, 0.01));
}

TEST_CASE("single delay term keeps the sinc^2 fraction in [0, T)", "[modem]")
{
    const DDGridParams p(1.0, 16, 2);
    for (int l : {0, 1, 3, 8, 15})
    {
        DDSymbols x = DDSymbols::zeros(p);
        x.x(1, l) = cd(0.3, -0.7);
        const double f = xn_window_fractions(x, 64).front();
        // sinc^2 centred at l over [-l, M - l].
        CHECK_THAT(f, WithinAbs(sinc_sq_integral(-l, p.M() - l), 1e-7));
    }
}
