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

#ifndef MEMSVD_INCREMENTAL_HPP_
#define MEMSVD_INCREMENTAL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "memsvd/memory_bank.hpp"
#include "memsvd/subspace.hpp"

namespace memsvd {

/// Streaming basis maintenance after Brand: each arriving clip is folded
/// into {U, Sigma} through a residual QR plus a small block SVD, with a
/// forgetting factor scaling Sigma once per update. No past clips are
/// stored; the state is exactly n_c * (d + 1) scalars plus O(1)
/// bookkeeping.
///
/// Updates are strictly sequential (single owner). basis() returns an
/// immutable snapshot that queries may use concurrently with the caller
/// preparing the next update.
class OnlineState {
 public:
  /// Folds a clip block (N x d, 1 <= N <= d) into the basis:
  ///   1. residual  Hhat = H (I - U^T U)
  ///   2. QR of Hhat^T
  ///   3. SVD of [[lambda Sigma, U H^T], [0, R]]  ((n_c+N) square)
  ///   4. U^T <- [U^T Q] U' and Sigma <- Sigma', truncated back to n_c
  /// Orthonormality is monitored after every update and repaired by a QR
  /// of U^T when the Gram residual exceeds 1e-7 or every 1000 updates,
  /// whichever comes first.
  void update(const DenseMatrix& new_clip);

  /// Single-feature fast path: the residual QR collapses to
  /// r = ||Hhat||_2, Q = Hhat^T / r, and the residual column is omitted
  /// entirely when r vanishes (in-span feature). Produces the same result
  /// as update() on a 1-row clip.
  void update_single(std::span<const double> feature);

  const SubspaceBasis& basis() const { return basis_; }
  double lambda() const { return lambda_; }
  std::uint64_t clips_seen() const { return clips_seen_; }

  /// Scalars retained by the memory representation: n_c * (d + 1).
  std::size_t retained_scalars() const { return basis_.retained_scalars(); }

  /// Reconstructs a state from snapshot fields (see io.hpp). lambda must
  /// lie in (0, 1].
  static OnlineState restore(SubspaceBasis basis, double lambda,
                             std::uint64_t clips_seen);

 private:
  friend OnlineState init_online(const DenseMatrix&, std::size_t, double);

  OnlineState(SubspaceBasis basis, double lambda)
      : basis_(std::move(basis)), lambda_(lambda) {}

  void apply_block_update(const DenseMatrix& projected,
                          const DenseMatrix& q_resid, const DenseMatrix& r);
  void maybe_reorthonormalize();

  SubspaceBasis basis_;
  double lambda_;
  std::uint64_t clips_seen_ = 0;
};

/// Bootstraps tracking from an initial block of stacked clip rows via the
/// exact offline decomposition (padded with null-directions when the
/// block has fewer than n_c rows). lambda must lie in (0, 1]; lambda = 1
/// disables forgetting.
OnlineState init_online(const DenseMatrix& first_clips, std::size_t n_c,
                        double lambda);

/// Distance between the tracked basis and the offline basis recomputed
/// from `reference_clips` at the same rank. Quantifies the long-term
/// divergence between streamed and recomputed eigenvectors.
double drift_report(const OnlineState& state,
                    std::span<const ClipFeatures> reference_clips);

}  // namespace memsvd

#endif  // MEMSVD_INCREMENTAL_HPP_
