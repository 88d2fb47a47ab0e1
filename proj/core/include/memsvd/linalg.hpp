// Copyright 2026 The MemSVD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMSVD_LINALG_HPP_
#define MEMSVD_LINALG_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "memsvd/dense_matrix.hpp"

namespace memsvd {

// ---------------------------------------------------------------------------
// Elementary dense kernels. Row-major, cache-friendly loop nests; every
// kernel feeds the ops::add multiply-accumulate tally.
// ---------------------------------------------------------------------------

DenseMatrix transpose(const DenseMatrix& a);

/// a (m x k) * b (k x n)
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// a^T * b with a (k x m), b (k x n).
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);

/// a (m x k) * b^T with b (n x k).
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
double frobenius_norm(const DenseMatrix& a);

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

struct QrResult {
  DenseMatrix q;  // m x n, orthonormal columns
  DenseMatrix r;  // n x n, upper triangular, non-negative diagonal
};

/// Thin Householder QR of a (m x n, m >= n). The diagonal of R is
/// normalized to be non-negative (column signs of Q flipped to match).
/// Throws std::invalid_argument if m < n or the input has non-finite
/// entries.
QrResult householder_qr(const DenseMatrix& a);

/// Full SVD factors a = u * diag(sigma) * v^T with k = min(m, n).
///
/// sigma is sorted descending. Columns of u and v are sign-fixed so the
/// largest-magnitude entry of each u column is positive, which makes the
/// decomposition deterministic up to eigenspace rotation for repeated
/// singular values.
struct SvdFactors {
  DenseMatrix u;              // m x k, orthonormal columns
  std::vector<double> sigma;  // k, descending, >= 0
  DenseMatrix v;              // n x k, orthonormal columns
};

/// One-sided Jacobi SVD. Deterministic cyclic pair order; converges when a
/// full sweep finds every column pair orthogonal to 1e-12 relative
/// tolerance. Throws std::runtime_error if 60 sweeps do not converge
/// (a signal of severe ill-conditioning) and std::invalid_argument on
/// empty or non-finite input.
SvdFactors svd(const DenseMatrix& a);

/// Keeps the leading n_c singular triplets. 1 <= n_c <= k.
SvdFactors truncate(const SvdFactors& f, std::size_t n_c);

/// Randomized range finder (Gaussian sketch, QR, optional power
/// iterations with re-orthonormalization). Returns Q with
/// n_c + oversampling orthonormal columns approximately spanning the
/// dominant column space of a. Bit-reproducible for a fixed seed.
DenseMatrix randomized_range_basis(const DenseMatrix& a, std::size_t n_c,
                                   std::size_t oversampling,
                                   std::size_t power_iters,
                                   std::uint64_t seed);

/// Projector (chordal) distance ||u1^T u1 - u2^T u2||_F between the row
/// spaces of two row-orthonormal matrices sharing the ambient dimension.
/// Ranges over [0, sqrt(k1 + k2)]; equals sqrt(2k) for orthogonal
/// equal-rank subspaces. Symmetric exactly in floating point. Throws
/// std::invalid_argument if either input fails row-orthonormality at
/// 1e-6 tolerance.
double subspace_distance(const DenseMatrix& u1, const DenseMatrix& u2);

/// Extends `rows` (k x d, orthonormal rows, k possibly 0) to `target`
/// orthonormal rows by orthogonalizing coordinate vectors against the
/// accepted set. Deterministic.
DenseMatrix complete_orthonormal_rows(const DenseMatrix& rows,
                                      std::size_t target);

}  // namespace memsvd

#endif  // MEMSVD_LINALG_HPP_
