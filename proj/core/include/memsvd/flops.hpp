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

#ifndef MEMSVD_FLOPS_HPP_
#define MEMSVD_FLOPS_HPP_

#include <cstdint>

namespace memsvd {

/// Analytic multiply-accumulate count of one cross-attention query:
///
///   d*d_u                (query projection)
/// + 2*n_mem*d*d_u        (key + value projections; dropped when cached)
/// + n_mem*d_u            (scores)
/// + n_mem*d_u            (weighted sum)
/// + d_u*d                (output projection)
std::uint64_t flops_attention(std::uint64_t n_mem, std::uint64_t d,
                              std::uint64_t d_u, bool cache_kv = false);

/// Projection-and-reconstruction per query: 2*n_c*d. Independent of the
/// memory length by construction.
std::uint64_t flops_memsvd(std::uint64_t n_c, std::uint64_t d);

enum class BasisCostModel {
  kExact,         // full decomposition of the memory
  kRandomized,    // sketch-based range finder at known target rank
  kOnlineUpdate,  // streaming fold-in of one clip
};

/// Leading-order basis-construction cost with a common documented
/// constant c = 2 so cross-method ratios reflect the asymptotic scaling
/// (oversampling and power-iteration multipliers are deliberately
/// excluded as constant factors):
///
///   exact:         2 * n_mem^2 * d     (Gram formation + basis recovery)
///   randomized:    2 * n_c * n_mem * d (sketch + projection)
///   online-update: 2 * (n_c + n)^3 + 2 * n * n_c * d
///
/// For kOnlineUpdate the n_mem argument is the row count n of the
/// arriving clip; the stream length never enters, which is the point.
std::uint64_t flops_basis(std::uint64_t n_mem, std::uint64_t d,
                          std::uint64_t n_c, BasisCostModel method);

}  // namespace memsvd

#endif  // MEMSVD_FLOPS_HPP_
