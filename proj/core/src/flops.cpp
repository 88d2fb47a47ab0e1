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

#include "memsvd/flops.hpp"

#include <stdexcept>

namespace memsvd {

std::uint64_t flops_attention(std::uint64_t n_mem, std::uint64_t d,
                              std::uint64_t d_u, bool cache_kv) {
  if (n_mem == 0 || d == 0 || d_u == 0) {
    throw std::invalid_argument("flops_attention: args must be positive");
  }
  std::uint64_t total = d * d_u;                  // query projection
  if (!cache_kv) total += 2 * n_mem * d * d_u;    // key + value projections
  total += n_mem * d_u;                           // scores
  total += n_mem * d_u;                           // weighted sum
  total += d_u * d;                               // output projection
  return total;
}

std::uint64_t flops_memsvd(std::uint64_t n_c, std::uint64_t d) {
  if (n_c == 0 || d == 0) {
    throw std::invalid_argument("flops_memsvd: args must be positive");
  }
  return 2 * n_c * d;
}

std::uint64_t flops_basis(std::uint64_t n_mem, std::uint64_t d,
                          std::uint64_t n_c, BasisCostModel method) {
  if (n_mem == 0 || d == 0 || n_c == 0) {
    throw std::invalid_argument("flops_basis: args must be positive");
  }
  constexpr std::uint64_t c = 2;  // common leading constant, see header
  switch (method) {
    case BasisCostModel::kExact:
      return c * n_mem * n_mem * d;
    case BasisCostModel::kRandomized:
      return c * n_c * n_mem * d;
    case BasisCostModel::kOnlineUpdate: {
      const std::uint64_t block = n_c + n_mem;  // n_mem = arriving rows here
      return c * block * block * block + 2 * n_mem * n_c * d;
    }
  }
  throw std::invalid_argument("flops_basis: unknown method");
}

}  // namespace memsvd
