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

#include "memsvd/attention.hpp"

#include <cmath>
#include <stdexcept>

#include "memsvd/linalg.hpp"
#include "memsvd/ops_count.hpp"
#include "memsvd/rng.hpp"

namespace memsvd {

AttentionWeights AttentionWeights::seeded(std::size_t d, std::size_t d_u,
                                          std::uint64_t seed) {
  if (d == 0 || d_u == 0) {
    throw std::invalid_argument("AttentionWeights: dims must be positive");
  }
  Rng rng(seed);
  auto scaled_uniform = [&rng](std::size_t rows, std::size_t cols,
                               std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = rng.uniform(-bound, bound);
      }
    }
    return m;
  };
  AttentionWeights w;
  w.w_q = scaled_uniform(d, d_u, d);
  w.w_k = scaled_uniform(d, d_u, d);
  w.w_v = scaled_uniform(d, d_u, d);
  w.w_o = scaled_uniform(d_u, d, d_u);
  w.d_u = d_u;
  w.seed = seed;
  return w;
}

AttentionCache make_attention_cache(const DenseMatrix& memory,
                                    const AttentionWeights& w) {
  return {matmul(memory, w.w_k), matmul(memory, w.w_v)};
}

namespace {

std::vector<double> attend(std::span<const double> h, const DenseMatrix& keys,
                           const DenseMatrix& values,
                           const AttentionWeights& w, bool scale_by_du) {
  const std::size_t d = w.w_q.rows();
  const std::size_t d_u = w.d_u;
  const std::size_t n_mem = keys.rows();
  if (h.size() != d) {
    throw std::invalid_argument("cross_attention: query length mismatch");
  }
  if (n_mem == 0) {
    throw std::invalid_argument("cross_attention: empty memory");
  }

  // q = h W_q
  std::vector<double> q(d_u, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double hi = h[i];
    for (std::size_t j = 0; j < d_u; ++j) q[j] += hi * w.w_q(i, j);
  }
  ops::add(d * d_u);

  // Scores over the memory axis, stabilized by max subtraction.
  const double scale =
      1.0 / std::sqrt(static_cast<double>(scale_by_du ? d_u : d));
  std::vector<double> scores(n_mem);
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < n_mem; ++r) {
    scores[r] = dot(q, keys.row(r)) * scale;
    max_score = std::max(max_score, scores[r]);
  }
  double denom = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max_score);
    denom += s;
  }
  for (double& s : scores) s /= denom;

  // Convex combination of values, then the output projection.
  std::vector<double> ctx(d_u, 0.0);
  for (std::size_t r = 0; r < n_mem; ++r) {
    const double a = scores[r];
    const auto vrow = values.row(r);
    for (std::size_t j = 0; j < d_u; ++j) ctx[j] += a * vrow[j];
  }
  ops::add(n_mem * d_u);

  std::vector<double> out(h.begin(), h.end());
  for (std::size_t j = 0; j < d_u; ++j) {
    const double cj = ctx[j];
    for (std::size_t i = 0; i < d; ++i) out[i] += cj * w.w_o(j, i);
  }
  ops::add(d_u * d);
  return out;
}

}  // namespace

std::vector<double> cross_attention(std::span<const double> h,
                                    const DenseMatrix& memory,
                                    const AttentionWeights& w,
                                    bool scale_by_du) {
  if (memory.rows() == 0) {
    throw std::invalid_argument("cross_attention: empty memory");
  }
  if (memory.cols() != w.w_k.rows()) {
    throw std::invalid_argument("cross_attention: memory dim mismatch");
  }
  const DenseMatrix keys = matmul(memory, w.w_k);
  const DenseMatrix values = matmul(memory, w.w_v);
  return attend(h, keys, values, w, scale_by_du);
}

std::vector<double> cross_attention_cached(std::span<const double> h,
                                           const AttentionCache& cache,
                                           const AttentionWeights& w,
                                           bool scale_by_du) {
  return attend(h, cache.keys, cache.values, w, scale_by_du);
}

}  // namespace memsvd
