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

#ifndef MEMSVD_ATTENTION_HPP_
#define MEMSVD_ATTENTION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "memsvd/dense_matrix.hpp"

namespace memsvd {

/// Fixed (never trained) projection weights for the cross-attention
/// baseline. Entries are scaled-uniform: W_q, W_k, W_v ~ U(-1/sqrt(d),
/// 1/sqrt(d)) and W_o ~ U(-1/sqrt(d_u), 1/sqrt(d_u)), drawn row-major in
/// the order q, k, v, o from a single seeded stream, so a seed fully
/// determines the weights.
struct AttentionWeights {
  DenseMatrix w_q;  // d x d_u
  DenseMatrix w_k;  // d x d_u
  DenseMatrix w_v;  // d x d_u
  DenseMatrix w_o;  // d_u x d
  std::size_t d_u = 0;
  std::uint64_t seed = 0;

  static AttentionWeights seeded(std::size_t d, std::size_t d_u,
                                 std::uint64_t seed);
};

/// Precomputed key/value projections of a memory matrix, for benchmark
/// regimes that amortize them across queries.
struct AttentionCache {
  DenseMatrix keys;    // N x d_u
  DenseMatrix values;  // N x d_u
};

AttentionCache make_attention_cache(const DenseMatrix& memory,
                                    const AttentionWeights& w);

/// h + softmax(q K^T / sqrt(scale)) V W_o with q = h W_q, K = M W_k,
/// V = M W_v; softmax over the memory axis, stabilized by max
/// subtraction. The scale divisor is sqrt(d) by default; `scale_by_du`
/// switches to the sqrt(d_u) convention for sensitivity checks.
std::vector<double> cross_attention(std::span<const double> h,
                                    const DenseMatrix& memory,
                                    const AttentionWeights& w,
                                    bool scale_by_du = false);

/// Same computation with keys/values taken from a prebuilt cache.
std::vector<double> cross_attention_cached(std::span<const double> h,
                                           const AttentionCache& cache,
                                           const AttentionWeights& w,
                                           bool scale_by_du = false);

}  // namespace memsvd

#endif  // MEMSVD_ATTENTION_HPP_
