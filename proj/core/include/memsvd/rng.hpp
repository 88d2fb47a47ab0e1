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

#ifndef MEMSVD_RNG_HPP_
#define MEMSVD_RNG_HPP_

#include <cstdint>
#include <random>

#include "memsvd/dense_matrix.hpp"

namespace memsvd {

/// Deterministic random stream. mt19937_64 is fully specified by the
/// standard, and the Gaussian path is a hand-rolled Box-Muller transform
/// rather than std::normal_distribution (whose algorithm is
/// implementation-defined), so a seed reproduces the exact same stream on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal();

  /// Uniform integer in [lo, hi], inclusive.
  std::size_t uniform_index(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// rows x cols matrix of iid standard normals drawn row-major from `rng`.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace memsvd

#endif  // MEMSVD_RNG_HPP_
