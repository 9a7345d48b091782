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

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ddmod
{
using cd = std::complex<double>;

// Dense complex matrix. Hermitian-ness is a property checked with is_hermitian, not a stored flag.
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;

// Precondition violated or query outside the domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Floating-point failure such as a non positive-definite factorization.
class NumericError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// e^{j 2 pi x}, with x reduced modulo 1 first so large integer parts cost no accuracy.
cd cexp_2pi(double x);

// sin(pi x) / (pi x) with sinc(0) = 1 and exact zeros at nonzero integers.
double sinc(double x);

// D_N(x) = sin(pi N x) / sin(pi x). Integers map to the limit N (-1)^{x (N-1)}.
// Throws DomainError for N < 1 or non-finite x.
double dirichlet_ratio(double x, int N);

// Integral of sinc^2 over [a, b]. Either bound may be +-infinity.
// Absolute error below 1e-9. Throws DomainError if a > b or a bound is NaN.
double sinc_sq_integral(double a, double b);

// Unique r in [0, M) with (x - r) / M integer. Throws DomainError for M <= 0.
double real_mod(double x, double M);

// True if A is square and |A(i,j) - conj(A(j,i))| <= tol for all i, j.
bool is_hermitian(const ComplexMatrix &A, double tol = 1e-12);

// log2 det(I + rho G) for Hermitian positive semi-definite G, via Cholesky.
// Only the lower triangle of G is read. Throws NumericError if the factorization fails.
double log2det_identity_plus(const ComplexMatrix &G, double rho);

// log2 det(I + rho H^H Kinv H).
// H must be square, Kinv Hermitian positive definite and rho >= 0, else DomainError.
double logdet_capacity(const ComplexMatrix &H, const ComplexMatrix &Kinv, double rho);

// Calls fn(i) for i in [0, count) on up to `threads` workers (0 picks hardware concurrency).
// Exceptions thrown by fn are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)> &fn);

} // namespace ddmod
