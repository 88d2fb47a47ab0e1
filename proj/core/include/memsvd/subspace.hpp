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

#ifndef MEMSVD_SUBSPACE_HPP_
#define MEMSVD_SUBSPACE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "memsvd/dense_matrix.hpp"

namespace memsvd {

/// Compressed memory: the top-n_c row-space directions of the memory
/// matrix plus their singular values. Storage is exactly n_c * (d + 1)
/// scalars. There are no learned parameters anywhere in this path.
class SubspaceBasis {
 public:
  /// `u` holds n_c orthonormal rows of length d (validated at 1e-6
  /// Frobenius tolerance on u u^T - I), `sigma` the matching
  /// non-increasing singular values.
  SubspaceBasis(DenseMatrix u, std::vector<double> sigma);

  std::size_t rank() const { return u_.rows(); }
  std::size_t dim() const { return u_.cols(); }

  const DenseMatrix& u() const { return u_; }
  const std::vector<double>& sigma() const { return sigma_; }

  /// n_c * (d + 1): the full retained state.
  std::size_t retained_scalars() const { return u_.size() + sigma_.size(); }

 private:
  DenseMatrix u_;
  std::vector<double> sigma_;
};

struct RandomizedParams {
  std::size_t oversampling = 10;
  std::size_t power_iters = 2;
  std::uint64_t seed = 0;
};

/// Exact basis: full SVD of m^T truncated to the top n_c row-space
/// directions of m. Requires 1 <= n_c <= min(rows, cols). When the memory
/// is rank-deficient the trailing directions are an orthonormal
/// completion with their sigma entries zeroed (null-directions), so the
/// basis shape is always exactly n_c x d.
///
/// `center` subtracts the column mean of m before decomposing
/// (PCA-style); the projection contract is unchanged either way.
SubspaceBasis compute_basis(const DenseMatrix& m, std::size_t n_c,
                            bool center = false);

/// Randomized-range variant of compute_basis (sketch of m^T, small SVD).
SubspaceBasis compute_basis_randomized(const DenseMatrix& m, std::size_t n_c,
                                       const RandomizedParams& params,
                                       bool center = false);

/// Like compute_basis but only requires n_c <= d: when m has fewer than
/// n_c rows the basis is padded with orthonormal null-directions. Used to
/// bootstrap online tracking from a short prefix of the stream.
SubspaceBasis compute_basis_padded(const DenseMatrix& m, std::size_t n_c);

/// h' = (h . u^T) u: projection onto the basis row space followed by
/// reconstruction. Never expands: ||h'|| <= ||h||.
std::vector<double> project_reconstruct(std::span<const double> h,
                                        const SubspaceBasis& basis);

/// h + h': the skip-connection form applied at the head.
std::vector<double> residual_update(std::span<const double> h,
                                    const SubspaceBasis& basis);

/// Row-wise batch versions.
DenseMatrix project_reconstruct_rows(const DenseMatrix& h,
                                     const SubspaceBasis& basis);
DenseMatrix residual_update_rows(const DenseMatrix& h,
                                 const SubspaceBasis& basis);

/// Coefficient matrix C (n_c x N) with C m = u, realizing the basis rows
/// as linear combinations of memory rows: C = diag(1/sigma_c) V_c^T from
/// the SVD of m^T. Defined only when sigma_{n_c} > 1e-10 * sigma_1;
/// throws std::runtime_error otherwise.
DenseMatrix coefficient_matrix(const DenseMatrix& m, std::size_t n_c);

}  // namespace memsvd

#endif  // MEMSVD_SUBSPACE_HPP_
