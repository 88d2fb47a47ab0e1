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

#include "memsvd/incremental.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "memsvd/linalg.hpp"
#include "memsvd/ops_count.hpp"

namespace memsvd {

namespace {

// Orthonormality repair threshold on ||U U^T - I||_F, plus a periodic
// repair regardless of drift. Incremental updates erode orthogonality in
// floating point; the repair keeps drift_report measuring subspace drift
// rather than round-off.
constexpr double kGramDriftTol = 1e-7;
constexpr std::uint64_t kReorthonormalizePeriod = 1000;

// Residual norms at or below this fraction of the feature norm take the
// rotate-in-span path (no residual direction appended).
constexpr double kInSpanTol = 1e-12;

}  // namespace

OnlineState init_online(const DenseMatrix& first_clips, std::size_t n_c,
                        double lambda) {
  if (first_clips.rows() == 0 || first_clips.cols() == 0) {
    throw std::invalid_argument("init_online: empty bootstrap block");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("init_online: lambda must be in (0, 1]");
  }
  return OnlineState(compute_basis_padded(first_clips, n_c), lambda);
}

OnlineState OnlineState::restore(SubspaceBasis basis, double lambda,
                                 std::uint64_t clips_seen) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("OnlineState::restore: lambda out of range");
  }
  OnlineState state(std::move(basis), lambda);
  state.clips_seen_ = clips_seen;
  return state;
}

void OnlineState::update(const DenseMatrix& new_clip) {
  const std::size_t n = new_clip.rows();
  const std::size_t d = basis_.dim();
  if (n == 0) {
    throw std::invalid_argument("update: clip has no rows");
  }
  if (new_clip.cols() != d) {
    throw std::invalid_argument("update: clip dim " +
                                std::to_string(new_clip.cols()) +
                                " does not match basis dim " +
                                std::to_string(d));
  }
  if (n > d) {
    throw std::invalid_argument(
        "update: more rows than the feature dim; split the block");
  }
  if (!new_clip.all_finite()) {
    throw std::invalid_argument("update: non-finite features");
  }

  // Step 1: residual of the clip against the current basis,
  // Hhat = H (I - U^T U) = H - (H U^T) U.
  const DenseMatrix& u = basis_.u();
  DenseMatrix projected = matmul_a_bt(new_clip, u);  // n x n_c
  DenseMatrix hhat = new_clip;
  DenseMatrix in_span = matmul(projected, u);  // n x d
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) hhat(i, j) -= in_span(i, j);
  }
  ops::add(n * d);

  // Step 2: orthonormal directions spanning the residual.
  QrResult qr = householder_qr(transpose(hhat));  // q: d x n, r: n x n
  apply_block_update(projected, qr.q, qr.r);
}

void OnlineState::update_single(std::span<const double> feature) {
  const std::size_t d = basis_.dim();
  if (feature.size() != d) {
    throw std::invalid_argument("update_single: feature length mismatch");
  }
  for (double x : feature) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("update_single: non-finite feature");
    }
  }

  const DenseMatrix& u = basis_.u();
  const std::size_t n_c = basis_.rank();
  DenseMatrix projected(1, n_c);
  for (std::size_t i = 0; i < n_c; ++i) {
    projected(0, i) = dot(feature, u.row(i));
  }
  std::vector<double> resid(feature.begin(), feature.end());
  for (std::size_t i = 0; i < n_c; ++i) {
    const double coeff = projected(0, i);
    const auto row = u.row(i);
    for (std::size_t j = 0; j < d; ++j) resid[j] -= coeff * row[j];
  }
  ops::add(n_c * d);

  const double r = norm2(resid);
  const double feature_norm = norm2(feature);
  if (r <= kInSpanTol * feature_norm || r == 0.0) {
    // In-span feature: the QR step collapses to nothing and the basis
    // only rotates within its own span.
    apply_block_update(projected, DenseMatrix(d, 0), DenseMatrix(0, 1));
    return;
  }
  // R = r = ||Hhat||_2 and Q = Hhat^T / r.
  DenseMatrix q(d, 1);
  for (std::size_t j = 0; j < d; ++j) q(j, 0) = resid[j] / r;
  DenseMatrix r_mat(1, 1);
  r_mat(0, 0) = r;
  apply_block_update(projected, q, r_mat);
}

// Step 3 and 4: decompose the small block
//   [[lambda Sigma, U H^T], [0, R]]   ((n_c + j) x (n_c + n))
// and rotate [U^T Q] by its left factors, truncating back to n_c. j is
// the number of residual directions (n in the general path, 0 or 1 in
// the single-feature path).
void OnlineState::apply_block_update(const DenseMatrix& projected,
                                     const DenseMatrix& q_resid,
                                     const DenseMatrix& r) {
  const std::size_t n_c = basis_.rank();
  const std::size_t d = basis_.dim();
  const std::size_t n = projected.rows();
  const std::size_t j = q_resid.cols();
  const std::vector<double>& sigma = basis_.sigma();

  DenseMatrix block(n_c + j, n_c + n);
  for (std::size_t i = 0; i < n_c; ++i) {
    block(i, i) = lambda_ * sigma[i];
  }
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t col = 0; col < n; ++col) {
      block(i, n_c + col) = projected(col, i);  // (U H^T)_{i,col}
    }
  }
  for (std::size_t row = 0; row < j; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      block(n_c + row, n_c + col) = r(row, col);
    }
  }

  SvdFactors f = svd(block);  // k = n_c + j

  // Stack [U; Q^T] and rotate: new U = (U'[:, :n_c])^T [U; Q^T].
  DenseMatrix stacked(n_c + j, d);
  const DenseMatrix& u = basis_.u();
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t t = 0; t < d; ++t) stacked(i, t) = u(i, t);
  }
  for (std::size_t row = 0; row < j; ++row) {
    for (std::size_t t = 0; t < d; ++t) {
      stacked(n_c + row, t) = q_resid(t, row);
    }
  }
  DenseMatrix rotation(n_c + j, n_c);
  for (std::size_t i = 0; i < n_c + j; ++i) {
    for (std::size_t t = 0; t < n_c; ++t) rotation(i, t) = f.u(i, t);
  }
  DenseMatrix new_u = matmul_at_b(rotation, stacked);  // n_c x d
  std::vector<double> new_sigma(f.sigma.begin(), f.sigma.begin() + n_c);

  basis_ = SubspaceBasis(std::move(new_u), std::move(new_sigma));
  ++clips_seen_;
  maybe_reorthonormalize();
}

void OnlineState::maybe_reorthonormalize() {
  const DenseMatrix& u = basis_.u();
  const std::size_t n_c = basis_.rank();
  double resid = 0.0;
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t j = i; j < n_c; ++j) {
      const double g = dot(u.row(i), u.row(j)) - (i == j ? 1.0 : 0.0);
      resid += (i == j ? 1.0 : 2.0) * g * g;
    }
  }
  const bool drifted = std::sqrt(resid) > kGramDriftTol;
  const bool periodic = (clips_seen_ % kReorthonormalizePeriod) == 0;
  if (!drifted && !periodic) return;

  QrResult qr = householder_qr(transpose(u));  // d x n_c
  basis_ = SubspaceBasis(transpose(qr.q), basis_.sigma());
}

double drift_report(const OnlineState& state,
                    std::span<const ClipFeatures> reference_clips) {
  std::size_t total_rows = 0;
  for (const ClipFeatures& clip : reference_clips) {
    total_rows += clip.features.rows();
  }
  if (total_rows == 0) {
    throw std::invalid_argument("drift_report: empty reference window");
  }
  const std::size_t d = state.basis().dim();
  DenseMatrix stacked(total_rows, d);
  std::size_t out = 0;
  for (const ClipFeatures& clip : reference_clips) {
    for (std::size_t i = 0; i < clip.features.rows(); ++i) {
      if (clip.features.cols() != d) {
        throw std::invalid_argument("drift_report: reference dim mismatch");
      }
      for (std::size_t j = 0; j < d; ++j) {
        stacked(out, j) = clip.features(i, j);
      }
      ++out;
    }
  }
  SubspaceBasis offline = compute_basis(stacked, state.basis().rank());
  return subspace_distance(state.basis().u(), offline.u());
}

}  // namespace memsvd
