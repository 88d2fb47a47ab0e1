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

#include "memsvd/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "memsvd/linalg.hpp"
#include "memsvd/ops_count.hpp"

namespace memsvd {

namespace {

// Singular values at or below this fraction of sigma_1 are treated as
// null-directions: the basis row is kept (orthonormal completion) but the
// value is flagged as exactly zero.
constexpr double kNullDirectionTol = 1e-12;

DenseMatrix center_rows(const DenseMatrix& m) {
  DenseMatrix out = m;
  const std::size_t n = m.rows();
  const std::size_t d = m.cols();
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += m(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out(i, j) -= mean;
  }
  return out;
}

void flag_null_directions(std::vector<double>& sigma) {
  if (sigma.empty()) return;
  const double floor = sigma.front() * kNullDirectionTol;
  for (double& s : sigma) {
    if (s <= floor) s = 0.0;
  }
}

// Left singular directions of m^T as basis rows, plus singular values.
SubspaceBasis basis_from_factors(const SvdFactors& f, std::size_t n_c) {
  const std::size_t d = f.u.rows();
  DenseMatrix rows(n_c, d);
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t j = 0; j < d; ++j) rows(i, j) = f.u(j, i);
  }
  std::vector<double> sigma(f.sigma.begin(), f.sigma.begin() + n_c);
  flag_null_directions(sigma);
  return SubspaceBasis(std::move(rows), std::move(sigma));
}

}  // namespace

SubspaceBasis::SubspaceBasis(DenseMatrix u, std::vector<double> sigma)
    : u_(std::move(u)), sigma_(std::move(sigma)) {
  const std::size_t n_c = u_.rows();
  if (n_c == 0 || u_.cols() == 0) {
    throw std::invalid_argument("SubspaceBasis: empty basis");
  }
  if (sigma_.size() != n_c) {
    throw std::invalid_argument("SubspaceBasis: sigma length mismatch");
  }
  for (std::size_t i = 0; i < n_c; ++i) {
    if (!(sigma_[i] >= 0.0)) {
      throw std::invalid_argument("SubspaceBasis: negative singular value");
    }
    if (i > 0 && sigma_[i] > sigma_[i - 1]) {
      throw std::invalid_argument("SubspaceBasis: sigma not non-increasing");
    }
  }
  double resid = 0.0;
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t j = i; j < n_c; ++j) {
      const double g = dot(u_.row(i), u_.row(j)) - (i == j ? 1.0 : 0.0);
      resid += (i == j ? 1.0 : 2.0) * g * g;
    }
  }
  if (std::sqrt(resid) > 1e-6 * static_cast<double>(n_c)) {
    throw std::invalid_argument("SubspaceBasis: rows are not orthonormal");
  }
}

SubspaceBasis compute_basis(const DenseMatrix& m, std::size_t n_c,
                            bool center) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("compute_basis: empty memory");
  }
  if (n_c < 1 || n_c > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("compute_basis: n_c out of range [1, " +
                                std::to_string(std::min(m.rows(), m.cols())) +
                                "]");
  }
  const DenseMatrix& src = center ? center_rows(m) : m;
  SvdFactors f = svd(transpose(src));
  return basis_from_factors(f, n_c);
}

SubspaceBasis compute_basis_randomized(const DenseMatrix& m, std::size_t n_c,
                                       const RandomizedParams& params,
                                       bool center) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("compute_basis: empty memory");
  }
  if (n_c < 1 || n_c > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("compute_basis: n_c out of range");
  }
  DenseMatrix mt = transpose(center ? center_rows(m) : m);  // d x N
  DenseMatrix q = randomized_range_basis(mt, n_c, params.oversampling,
                                         params.power_iters, params.seed);
  // Project into the sketch space, decompose there, lift back.
  DenseMatrix b = matmul_at_b(q, mt);  // sketch x N
  SvdFactors small = svd(b);
  DenseMatrix lifted = matmul(q, small.u);  // d x k

  DenseMatrix rows(n_c, lifted.rows());
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t j = 0; j < lifted.rows(); ++j) rows(i, j) = lifted(j, i);
  }
  std::vector<double> sigma(small.sigma.begin(), small.sigma.begin() + n_c);
  flag_null_directions(sigma);
  return SubspaceBasis(std::move(rows), std::move(sigma));
}

SubspaceBasis compute_basis_padded(const DenseMatrix& m, std::size_t n_c) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("compute_basis_padded: empty memory");
  }
  if (n_c < 1 || n_c > m.cols()) {
    throw std::invalid_argument("compute_basis_padded: n_c exceeds dim");
  }
  if (m.rows() >= n_c) {
    return compute_basis(m, n_c);
  }
  // Fewer rows than directions: keep every real direction, pad the rest
  // with null-directions.
  const std::size_t k = std::min(m.rows(), m.cols());
  SvdFactors f = svd(transpose(m));
  DenseMatrix real_rows(k, m.cols());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) real_rows(i, j) = f.u(j, i);
  }
  DenseMatrix padded = complete_orthonormal_rows(real_rows, n_c);
  std::vector<double> sigma(f.sigma.begin(), f.sigma.begin() + k);
  flag_null_directions(sigma);
  sigma.resize(n_c, 0.0);
  return SubspaceBasis(std::move(padded), std::move(sigma));
}

std::vector<double> project_reconstruct(std::span<const double> h,
                                        const SubspaceBasis& basis) {
  if (h.size() != basis.dim()) {
    throw std::invalid_argument("project_reconstruct: feature length " +
                                std::to_string(h.size()) +
                                " does not match basis dim " +
                                std::to_string(basis.dim()));
  }
  const DenseMatrix& u = basis.u();
  const std::size_t n_c = basis.rank();
  const std::size_t d = basis.dim();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < n_c; ++i) {
    const double coeff = dot(h, u.row(i));
    const auto row = u.row(i);
    for (std::size_t j = 0; j < d; ++j) out[j] += coeff * row[j];
  }
  ops::add(n_c * d);
  return out;
}

std::vector<double> residual_update(std::span<const double> h,
                                    const SubspaceBasis& basis) {
  std::vector<double> out = project_reconstruct(h, basis);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += h[j];
  return out;
}

DenseMatrix project_reconstruct_rows(const DenseMatrix& h,
                                     const SubspaceBasis& basis) {
  DenseMatrix out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const std::vector<double> row = project_reconstruct(h.row(i), basis);
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = row[j];
  }
  return out;
}

DenseMatrix residual_update_rows(const DenseMatrix& h,
                                 const SubspaceBasis& basis) {
  DenseMatrix out = project_reconstruct_rows(h, basis);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) += h(i, j);
  }
  return out;
}

DenseMatrix coefficient_matrix(const DenseMatrix& m, std::size_t n_c) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("coefficient_matrix: empty memory");
  }
  if (n_c < 1 || n_c > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("coefficient_matrix: n_c out of range");
  }
  SvdFactors f = svd(transpose(m));
  if (f.sigma[n_c - 1] <= 1e-10 * f.sigma[0]) {
    throw std::runtime_error(
        "coefficient_matrix: memory rank below n_c, coefficients undefined");
  }
  // C = diag(1/sigma_c) V_c^T, so C m recovers the basis rows.
  DenseMatrix c(n_c, m.rows());
  for (std::size_t i = 0; i < n_c; ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      c(i, j) = f.v(j, i) / f.sigma[i];
    }
  }
  return c;
}

}  // namespace memsvd
