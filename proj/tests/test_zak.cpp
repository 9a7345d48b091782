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
#include <random>

#include "ddmod/rng.hpp"
#include "ddmod/zak.hpp"

using namespace ddmod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
const cd J{0.0, 1.0};

TDSamples random_signal(const DDGridParams &p, std::int64_t n0, std::int64_t blocks, Rng &rng)
{
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(blocks * p.M());
    for (auto &s : v)
        s = cd(g(rng), g(rng));
    return TDSamples(p, n0, v);
}

// Direct sum sqrt(T) sum_n x(tau + nT) e^{-j 2 pi nu n T} at tau = u T / M, nu = v df / N.
cd brute_zak(const TDSamples &x, std::int64_t u, std::int64_t v)
{
    const auto &p = x.params;
    const int M = p.M();
    const double nu = v * p.delta_f() / p.N();
    cd acc{0.0, 0.0};
    for (std::int64_t n = -50; n <= 50; ++n)
    {
        const std::int64_t abs_index = u + n * M;
        const std::int64_t q = abs_index - x.start_block * M;
        if (q < 0 || q >= x.samples.size())
            continue;
        acc += x.samples(q) * std::exp(-2.0 * pi * J * nu * static_cast<double>(n) * p.T());
    }
    return std::sqrt(p.T()) * acc;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return (a - b).cwiseAbs().maxCoeff();
}
} // namespace

TEST_CASE("discrete_zak of impulses", "[zak]")
{
    const DDGridParams p(0.5, 3, 4);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(12);
    v(0) = 1.0;
    const ZakGrid Z = discrete_zak(TDSamples(p, 0, v));
    for (int k = 0; k < 4; ++k)
    {
        CHECK_THAT(std::abs(Z.values(0, k) - std::sqrt(0.5)), WithinAbs(0.0, 1e-15));
        for (int l = 1; l < 3; ++l)
            CHECK(std::abs(Z.values(l, k)) == 0.0);
    }
    v.setZero();
    v(3) = 1.0;
    const ZakGrid Z1 = discrete_zak(TDSamples(p, 0, v));
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(Z1.values(0, k) - std::sqrt(0.5) * std::exp(-2.0 * pi * J * (k / 4.0))) < 1e-15);
}

TEST_CASE("discrete_zak matches term-by-term summation", "[zak]")
{
    const DDGridParams p(2.0, 3, 4);
    Rng rng = make_rng(1, 0);
    for (std::int64_t n0 : {0, -2, 3})
    {
        const TDSamples x = random_signal(p, n0, 6, rng);
        const ZakGrid Z = discrete_zak(x);
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 4; ++k)
                CHECK(std::abs(Z.values(l, k) - brute_zak(x, l, k)) < 1e-12);
    }
}

TEST_CASE("inverse_zak examples", "[zak]")
{
    const DDGridParams p(0.25, 3, 4);
    ComplexMatrix V = ComplexMatrix::Zero(3, 4);
    V(0, 0) = std::sqrt(0.25);
    const TDSamples x = inverse_zak(ZakGrid(p, V), 4, 0);
    for (int n = 0; n < 4; ++n)
        for (int l = 0; l < 3; ++l)
            CHECK_THAT(std::abs(x.samples(n * 3 + l)), WithinAbs(l == 0 ? 0.25 : 0.0, 1e-15));
    CHECK_THROWS_AS(inverse_zak(ZakGrid(p, V), 0, 0), DomainError);
}

TEST_CASE("Zak round trip, linearity and energy", "[zak][property]")
{
    Rng rng = make_rng(2, 0);
    for (auto [M, N] : {std::pair{3, 4}, std::pair{1, 1}, std::pair{7, 5}, std::pair{16, 16}})
    {
        const DDGridParams p(1.7, M, N);
        const TDSamples x = random_signal(p, 0, N, rng);
        const TDSamples y = random_signal(p, 0, N, rng);
        const ZakGrid Zx = discrete_zak(x);
        const TDSamples back = inverse_zak(Zx, N, 0);
        CHECK((back.samples - x.samples).cwiseAbs().maxCoeff() <= 1e-12);

        const cd a{0.3, -1.2}, b{2.0, 0.5};
        const TDSamples comb(p, 0, a * x.samples + b * y.samples);
        const ComplexMatrix expect = a * Zx.values + b * discrete_zak(y).values;
        CHECK(max_abs_diff(discrete_zak(comb).values, expect) <= 1e-12);

        const double lhs = x.samples.squaredNorm();
        const double rhs = Zx.values.squaredNorm() / (p.T() * N);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-12));
    }
}

TEST_CASE("zak_to_fourier", "[zak]")
{
    SECTION("DC value of a constant signal equals the direct DFT")
    {
        const DDGridParams p(1e-3, 32, 8);
        const TDSamples x(p, 0, Eigen::VectorXcd::Ones(32 * 8));
        const cd F0 = zak_to_fourier(discrete_zak(x), 0.0);
        // Direct sum (T / M) sum_p x[p] = N T.
        CHECK_THAT(F0.real(), WithinRel(8 * 1e-3, 1e-12));
        CHECK_THAT(F0.imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("impulse has a flat spectrum of height T / M")
    {
        const DDGridParams p(2.0, 5, 3);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(15);
        v(0) = 1.0;
        const ZakGrid Z = discrete_zak(TDSamples(p, 0, v));
        for (double f : {0.0, 0.11, 0.37, 1.0, 2.49})
            CHECK_THAT(std::abs(zak_to_fourier(Z, f) - cd(2.0 / 5, 0.0)), WithinAbs(0.0, 1e-14));
    }
    SECTION("periodic in f with period M delta_f and equal to the sample DTFT")
    {
        const DDGridParams p(0.5, 4, 3);
        Rng rng = make_rng(3, 0);
        const TDSamples x = random_signal(p, 0, 3, rng);
        const ZakGrid Z = discrete_zak(x);
        for (double f : {0.0, 0.3, 1.7, -2.2})
        {
            const cd a = zak_to_fourier(Z, f);
            CHECK(std::abs(a - zak_to_fourier(Z, f + 4 * p.delta_f())) < 1e-12);
            cd direct{0.0, 0.0};
            for (int q = 0; q < 12; ++q)
                direct += x.samples(q) * std::exp(-2.0 * pi * J * f * (q * p.T() / 4));
            CHECK(std::abs(a - direct * (p.T() / 4)) < 1e-12);
        }
    }
}

TEST_CASE("quasi_extend lattice lookups", "[zak]")
{
    const DDGridParams p(0.5, 3, 4);
    Rng rng = make_rng(4, 0);
    const ZakGrid Z = discrete_zak(random_signal(p, 0, 4, rng));
    const double T = p.T(), df = p.delta_f();
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 4; ++k)
        {
            const double tau = l * T / 3, nu = k * df / 4;
            const cd z = Z.values(l, k);
            CHECK(std::abs(quasi_extend(Z, tau + 2 * T, nu) - std::exp(2.0 * pi * J * nu * 2.0 * T) * z) < 1e-12);
            CHECK(std::abs(quasi_extend(Z, tau, nu + df) - z) < 1e-12);
            CHECK(std::abs(quasi_extend(Z, tau - T, nu + 3 * df) - std::exp(-2.0 * pi * J * nu * T) * z) < 1e-12);
        }
    CHECK_THROWS_AS(quasi_extend(Z, 0.3 * T / 3, 0.0), DomainError);
    CHECK_THROWS_AS(quasi_extend(Z, 0.0, 0.5 * df / 4), DomainError);
}

TEST_CASE("quasi-periodicity agrees with the defining sum off the fundamental cell", "[zak][property]")
{
    const DDGridParams p(1.0, 3, 4);
    Rng rng = make_rng(5, 0);
    const TDSamples x = random_signal(p, -2, 9, rng);
    const ZakGrid Z = discrete_zak(x);
    for (std::int64_t u = -7; u <= 10; ++u)
        for (std::int64_t v = -5; v <= 9; ++v)
            CHECK(std::abs(quasi_extend_index(Z, u, v) - brute_zak(x, u, v)) < 1e-11);
}

TEST_CASE("apply_dd_shift_grid", "[zak]")
{
    SECTION("zero shift is the identity")
    {
        const DDGridParams p(1.0, 4, 5);
        Rng rng = make_rng(6, 0);
        const ZakGrid Z = discrete_zak(random_signal(p, 0, 5, rng));
        CHECK(max_abs_diff(apply_dd_shift_grid(Z, 0, 0).values, Z.values) == 0.0);
    }
    SECTION("impulse row moves by one delay bin")
    {
        const DDGridParams p(1.0, 4, 5);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(20);
        v(0) = 1.0;
        const ZakGrid Z = discrete_zak(TDSamples(p, 0, v));
        const ZakGrid S = apply_dd_shift_grid(Z, 1, 0);
        for (int k = 0; k < 5; ++k)
        {
            CHECK(std::abs(S.values(1, k) - Z.values(0, k)) < 1e-15);
            CHECK(std::abs(S.values(0, k)) == 0.0);
        }
    }
    SECTION("matches the Zak transform of the shifted samples")
    {
        const int M = 4, N = 5;
        const DDGridParams p(0.8, M, N);
        Rng rng = make_rng(7, 0);
        const TDSamples x = random_signal(p, 0, N, rng);
        const ZakGrid Z = discrete_zak(x);
        for (auto [l0, k0] : {std::pair{2, 3}, std::pair{-3, 1}, std::pair{7, -2}, std::pair{0, 4}})
        {
            // r[p] = x[p - l0] e^{j 2 pi k0 (p - l0) / (MN)} over enough blocks to hold the support.
            const std::int64_t n0 = -3;
            const std::int64_t blocks = N + 6;
            Eigen::VectorXcd r = Eigen::VectorXcd::Zero(blocks * M);
            for (std::int64_t q = 0; q < r.size(); ++q)
            {
                const std::int64_t pabs = n0 * M + q;
                const std::int64_t src = pabs - l0;
                if (src >= 0 && src < x.samples.size())
                    r(q) = x.samples(src) * std::exp(2.0 * pi * J * (double(k0) * double(src) / (M * N)));
            }
            const ZakGrid expect = discrete_zak(TDSamples(p, n0, r));
            CHECK(max_abs_diff(apply_dd_shift_grid(Z, l0, k0).values, expect.values) <= 1e-12);
        }
    }
}

TEST_CASE("grid type invariants", "[zak]")
{
    CHECK_THROWS_AS(DDGridParams(0.0, 3, 4), DomainError);
    CHECK_THROWS_AS(DDGridParams(1.0, 0, 4), DomainError);
    const DDGridParams p(1.0, 3, 4);
    CHECK_THROWS_AS(TDSamples(p, 0, Eigen::VectorXcd::Zero(7)), DomainError);
    CHECK_THROWS_AS(ZakGrid(p, ComplexMatrix::Zero(4, 3)), DomainError);
    const DDGridParams q = DDGridParams::from_delta_f(2000.0, 45, 46);
    CHECK_THAT(q.T() * q.delta_f(), WithinAbs(1.0, 1e-15));
}
