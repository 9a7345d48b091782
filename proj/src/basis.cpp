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

#include "ddmod/basis.hpp"

#include <cmath>
#include <string>

namespace ddmod
{
namespace
{
void check_index(int k, int l, const DDGridParams &p, const char *who)
{
    if (k < 0 || k >= p.N() || l < 0 || l >= p.M())
        throw DomainError(std::string(who) + ": index (k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                          ") out of range");
}
} // namespace

void validate_anchor(const PulseAnchor &a, const DDGridParams &p)
{
    if (!(a.tau0 >= 0.0 && a.tau0 < p.T()))
        throw DomainError("PulseAnchor: tau0 must lie in [0, T)");
    if (!(a.nu0 >= 0.0 && a.nu0 < p.delta_f()))
        throw DomainError("PulseAnchor: nu0 must lie in [0, delta_f)");
}

PulseAnchor lattice_anchor(int k, int l, const DDGridParams &p)
{
    check_index(k, l, p, "lattice_anchor");
    return {l * p.T() / p.M(), k * p.delta_f() / p.N()};
}

cd eval_q(double t, const DDGridParams &p)
{
    return (t >= 0.0 && t < p.N() * p.T()) ? cd{1.0, 0.0} : cd{0.0, 0.0};
}

cd eval_s(double t, const DDGridParams &p)
{
    const double W = p.M() * p.delta_f();
    const double x = W * t;
    return cexp_2pi(0.5 * x) * (W * sinc(x));
}

cd eval_psi(const PulseAnchor &a, double t, const DDGridParams &p)
{
    validate_anchor(a, p);
    const double T = p.T();
    const double W = p.M() * p.delta_f();
    const double nuT = a.nu0 * T;
    cd acc{0.0, 0.0};
    for (int n = 0; n < p.N(); ++n)
    {
        const double x = W * (t - a.tau0 - n * T);
        // e^{j 2 pi nu0 n T} e^{j pi x} sinc(x)
        acc += cexp_2pi(nuT * n + 0.5 * x) * sinc(x);
    }
    return std::sqrt(T) * W * acc;
}

cd eval_alpha(int k, int l, double t, const DDGridParams &p)
{
    check_index(k, l, p, "eval_alpha");
    return eval_psi(lattice_anchor(k, l, p), t, p) / std::sqrt(static_cast<double>(p.MN()));
}

cd zak_q(double tau, double nu, const DDGridParams &p)
{
    const double T = p.T();
    const int N = p.N();
    const double nuT = nu * T;
    const double fl = std::floor(tau / T);
    return std::sqrt(T) * cexp_2pi(nuT * fl - 0.5 * nuT * (N - 1)) * dirichlet_ratio(nuT, N);
}

cd zak_s(double tau, double nu, const DDGridParams &p)
{
    const double T = p.T();
    const double df = p.delta_f();
    const int M = p.M();
    const double x = df * tau;
    const double fl = std::floor(nu / df);
    return (1.0 / std::sqrt(T)) * cexp_2pi(nu * tau - fl * x + 0.5 * (M - 1) * x) * dirichlet_ratio(x, M);
}

cd zak_psi(const PulseAnchor &a, double tau, double nu, const DDGridParams &p)
{
    validate_anchor(a, p);
    return zak_q(a.tau0, nu - a.nu0, p) * zak_s(tau - a.tau0, nu, p);
}

AnalyticSignal AnalyticSignal::q(const DDGridParams &p)
{
    return AnalyticSignal(SignalKind::q, p);
}

AnalyticSignal AnalyticSignal::s(const DDGridParams &p)
{
    return AnalyticSignal(SignalKind::s, p);
}

AnalyticSignal AnalyticSignal::psi(const PulseAnchor &a, const DDGridParams &p)
{
    validate_anchor(a, p);
    AnalyticSignal out(SignalKind::psi, p);
    out.anchor_ = a;
    return out;
}

AnalyticSignal AnalyticSignal::alpha(int k, int l, const DDGridParams &p)
{
    check_index(k, l, p, "AnalyticSignal::alpha");
    AnalyticSignal out(SignalKind::alpha, p);
    out.anchor_ = lattice_anchor(k, l, p);
    out.k_ = k;
    out.l_ = l;
    return out;
}

AnalyticSignal AnalyticSignal::superposition(const DDGridParams &p, std::vector<std::pair<cd, AnalyticSignal>> terms)
{
    for (const auto &term : terms)
        if (!(term.second.params() == p))
            throw DomainError("AnalyticSignal::superposition: mixed grid parameters");
    AnalyticSignal out(SignalKind::superposition, p);
    out.terms_ = std::make_shared<const std::vector<std::pair<cd, AnalyticSignal>>>(std::move(terms));
    return out;
}

cd AnalyticSignal::operator()(double t) const
{
    switch (kind_)
    {
    case SignalKind::q:
        return eval_q(t, params_);
    case SignalKind::s:
        return eval_s(t, params_);
    case SignalKind::psi:
        return eval_psi(anchor_, t, params_);
    case SignalKind::alpha:
        return eval_alpha(k_, l_, t, params_);
    case SignalKind::superposition: {
        cd acc{0.0, 0.0};
        for (const auto &[c, x] : *terms_)
            acc += c * x(t);
        return acc;
    }
    }
    return {0.0, 0.0};
}

cd basis_coefficient(const AnalyticSignal &x, const PulseAnchor &a, int P)
{
    const auto &p = x.params();
    validate_anchor(a, p);
    if (P < 0)
        throw DomainError("basis_coefficient: P must be >= 0");
    const double T = p.T();
    const double nuT = a.nu0 * T;
    cd acc{0.0, 0.0};
    for (int n = -P; n <= p.N() - 1 + P; ++n)
        acc += x(a.tau0 + n * T) * cexp_2pi(-nuT * n);
    return std::sqrt(T) * acc;
}

cd alpha_inner_product(int k1, int l1, int k2, int l2, const DDGridParams &p)
{
    check_index(k1, l1, p, "alpha_inner_product");
    check_index(k2, l2, p, "alpha_inner_product");
    const int M = p.M();
    const int N = p.N();
    const double T = p.T();
    const double W = M * p.delta_f();
    cd acc{0.0, 0.0};
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = 0; n2 < N; ++n2)
        {
            // W a is the integer (l1 - l2) + M (n1 - n2).
            const long long Wa = static_cast<long long>(l1 - l2) + static_cast<long long>(M) * (n1 - n2);
            cd integral;
            if (Wa == 0)
                integral = W;
            else
            {
                const double a = static_cast<double>(Wa) / W;
                integral = (1.0 - cexp_2pi(-static_cast<double>(Wa))) / cd(0.0, 2.0 * pi * a);
            }
            const long long ph = static_cast<long long>(n1) * k1 - static_cast<long long>(n2) * k2;
            acc += cexp_2pi(static_cast<double>(ph) / N) * integral;
        }
    return (T / p.MN()) * acc;
}

ComplexMatrix alpha_gram(const DDGridParams &p, unsigned threads)
{
    const int M = p.M();
    const int MN = p.MN();
    ComplexMatrix G(MN, MN);
    parallel_for(static_cast<std::size_t>(MN), threads, [&](std::size_t col) {
        const int c = static_cast<int>(col);
        for (int r = 0; r < MN; ++r)
            G(r, c) = alpha_inner_product(r / M, r % M, c / M, c % M, p);
    });
    return G;
}

TDSamples sample_signal(const AnalyticSignal &x, std::int64_t first_block, std::int64_t blocks)
{
    const auto &p = x.params();
    if (blocks <= 0)
        throw DomainError("sample_signal: blocks must be > 0");
    const std::int64_t len = blocks * p.M();
    Eigen::VectorXcd v(len);
    const double Ts = p.sample_period();
    for (std::int64_t q = 0; q < len; ++q)
        v(q) = x(static_cast<double>(first_block * p.M() + q) * Ts);
    return TDSamples(p, first_block, std::move(v));
}

} // namespace ddmod
