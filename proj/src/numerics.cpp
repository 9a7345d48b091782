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

#include "ddmod/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace ddmod
{
namespace
{
constexpr double kSingularThreshold = 1e-8;

// Integrals over |t| > kTruncation are replaced by the asymptotic tail 1 / (2 pi^2 X).
constexpr double kTruncation = 1e3;

double sinc_sq(double t)
{
    const double s = sinc(t);
    return s * s;
}

double simpson_step(double fa, double fm, double fb, double h)
{
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = sinc_sq(lm);
    const double frm = sinc_sq(rm);
    const double left = simpson_step(fa, flm, fm, m - a);
    const double right = simpson_step(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson_piece(double a, double b)
{
    if (b <= a)
        return 0.0;
    const double fa = sinc_sq(a);
    const double fb = sinc_sq(b);
    const double fm = sinc_sq(0.5 * (a + b));
    return adaptive_simpson(a, b, fa, fm, fb, simpson_step(fa, fm, fb, b - a), 1e-14, 40);
}

// Finite integral, split at the integer zeros of sinc.
double finite_integral(double a, double b)
{
    double acc = 0.0;
    double lo = a;
    while (lo < b)
    {
        const double hi = std::min(b, std::floor(lo) + 1.0);
        acc += simpson_piece(lo, hi);
        lo = hi;
    }
    return acc;
}

double tail_beyond(double x)
{
    return 1.0 / (2.0 * pi * pi * x);
}
} // namespace

cd cexp_2pi(double x)
{
    const double r = x - std::round(x);
    return std::polar(1.0, 2.0 * pi * r);
}

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    const double m = std::round(x);
    const double r = x - m;
    if (r == 0.0)
        return 0.0;
    const double sign = (static_cast<long long>(m) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sin(pi * r) / (pi * x);
}

double dirichlet_ratio(double x, int N)
{
    if (N < 1)
        throw DomainError("dirichlet_ratio: N must be >= 1");
    if (!std::isfinite(x))
        throw DomainError("dirichlet_ratio: x must be finite");
    const double m = std::round(x);
    const double r = x - m;
    // sin(pi N x) / sin(pi x) = (-1)^{m (N-1)} sin(pi N r) / sin(pi r)
    const bool odd = (static_cast<long long>(m) % 2 != 0) && ((N - 1) % 2 != 0);
    const double sign = odd ? -1.0 : 1.0;
    const double den = std::sin(pi * r);
    if (std::abs(den) < kSingularThreshold)
        return sign * static_cast<double>(N);
    return sign * std::sin(pi * N * r) / den;
}

double sinc_sq_integral(double a, double b)
{
    if (std::isnan(a) || std::isnan(b))
        throw DomainError("sinc_sq_integral: NaN bound");
    if (a > b)
        throw DomainError("sinc_sq_integral: a > b");
    if (a == b)
        return 0.0;
    // Symmetric integrand: map everything onto integrals of the form [0, x].
    const auto from_zero = [](double x) -> double {
        // Integral over [0, x] for x >= 0, x possibly infinite.
        if (std::isinf(x))
            return finite_integral(0.0, kTruncation) + tail_beyond(kTruncation);
        return finite_integral(0.0, x);
    };
    const auto signed_from_zero = [&](double x) { return x >= 0.0 ? from_zero(x) : -from_zero(-x); };
    if (std::isfinite(a) && std::isfinite(b) && (a >= 0.0 || b <= 0.0))
    {
        if (a >= 0.0)
            return finite_integral(a, b);
        return finite_integral(-b, -a);
    }
    return signed_from_zero(b) - signed_from_zero(a);
}

double real_mod(double x, double M)
{
    if (!(M > 0.0))
        throw DomainError("real_mod: M must be > 0");
    double r = std::fmod(x, M);
    if (r < 0.0)
        r += M;
    if (r >= M)
        r = 0.0;
    return r;
}

bool is_hermitian(const ComplexMatrix &A, double tol)
{
    if (A.rows() != A.cols())
        return false;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = j; i < A.rows(); ++i)
            if (std::abs(A(i, j) - std::conj(A(j, i))) > tol)
                return false;
    return true;
}

double log2det_identity_plus(const ComplexMatrix &G, double rho)
{
    if (G.rows() != G.cols())
        throw DomainError("log2det_identity_plus: G must be square");
    if (!(rho >= 0.0))
        throw DomainError("log2det_identity_plus: rho must be >= 0");
    const Eigen::Index n = G.rows();
    ComplexMatrix A = rho * G;
    A.diagonal().array() += 1.0;
    Eigen::LLT<ComplexMatrix, Eigen::Lower> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericError("log2det_identity_plus: Cholesky failed, I + rho G not positive definite (n=" +
                           std::to_string(n) + ")");
    const auto L = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double d = L(i, i).real();
        if (!(d > 0.0) || !std::isfinite(d))
            throw NumericError("log2det_identity_plus: non-positive pivot at index " + std::to_string(i));
        acc += std::log(d);
    }
    const double value = 2.0 * acc / std::numbers::ln2;
    return std::max(value, 0.0);
}

double logdet_capacity(const ComplexMatrix &H, const ComplexMatrix &Kinv, double rho)
{
    if (H.rows() != H.cols())
        throw DomainError("logdet_capacity: H must be square");
    if (Kinv.rows() != H.rows() || Kinv.cols() != H.rows())
        throw DomainError("logdet_capacity: Kinv dimensions do not match H");
    if (!is_hermitian(Kinv))
        throw DomainError("logdet_capacity: Kinv is not Hermitian");
    if (!(rho >= 0.0))
        throw DomainError("logdet_capacity: rho must be >= 0");
    Eigen::LLT<ComplexMatrix> kfac(Kinv);
    if (kfac.info() != Eigen::Success)
        throw NumericError("logdet_capacity: Kinv is not positive definite");
    // H^H Kinv H = (U H)^H (U H) with Kinv = U^H U.
    const ComplexMatrix W = kfac.matrixU() * H;
    ComplexMatrix G = ComplexMatrix::Zero(H.cols(), H.cols());
    G.selfadjointView<Eigen::Lower>().rankUpdate(W.adjoint());
    return log2det_identity_plus(G, rho);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)> &fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
    {
        pool.emplace_back([&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace ddmod
